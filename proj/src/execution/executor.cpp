/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#include <agora/execution/executor.hpp>
#include <fmt/format.h>
#include <future>
#include <unordered_map>

namespace agora::execution {

namespace {

using query::Row;
using query::Value;

struct Outcome {
    Relation relation;
    std::vector<metering::UsageEvent> events;
};

std::size_t indexOf(const std::vector<query::OutputColumn>& columns, const std::string& name) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) {
            return i;
        }
    }
    throw AgoraError("MissingColumn", name);
}

struct Accumulator {
    std::int64_t count = 0;
    std::int64_t intSum = 0;
    double floatSum = 0;
    Value extreme;
};

class Runner {
  public:
    Runner(const Database& db, const std::map<const planner::SiteNode*, const OperatorBinding*>& bindings, Timestamp at)
        : db(db), bindings(bindings), at(at) {}

    Outcome run(const planner::SiteNode& node) const {
        if (const auto* join = std::get_if<planner::JoinOp>(&node.op)) {
            auto leftFuture = std::async(std::launch::async, [&] { return run(*node.children.at(0)); });
            Outcome right = run(*node.children.at(1));
            Outcome left = leftFuture.get();
            Outcome out;
            out.relation = hashJoin(*join, left.relation, right.relation);
            merge(out, left, right);
            emit(node, out, static_cast<std::int64_t>(left.relation.rows.size() + right.relation.rows.size()));
            return out;
        }
        if (const auto* scan = std::get_if<planner::ScanOp>(&node.op)) {
            auto it = db.find(scan->table);
            if (it == db.end()) {
                throw MissingTable(scan->table);
            }
            Outcome out;
            out.relation = project(scan->columns, it->second);
            emit(node, out, static_cast<std::int64_t>(it->second.rows.size()));
            return out;
        }
        Outcome child = run(*node.children.at(0));
        const auto inputRows = static_cast<std::int64_t>(child.relation.rows.size());
        Outcome out;
        out.events = std::move(child.events);
        if (const auto* filter = std::get_if<planner::FilterOp>(&node.op)) {
            out.relation = applyFilter(*filter, child.relation);
        } else if (const auto* aggregate = std::get_if<planner::AggregateOp>(&node.op)) {
            out.relation = applyAggregate(*aggregate, child.relation);
        } else if (const auto* projection = std::get_if<planner::ProjectOp>(&node.op)) {
            out.relation = project(projection->columns, child.relation);
        } else {
            const auto& ship = std::get<planner::ShipOp>(node.op);
            out.relation = std::move(child.relation);
            out.events.push_back({fmt::format("transfer/{}-{}", to_string(ship.from), to_string(ship.to)),
                                  metering::Metric::Bytes,
                                  static_cast<std::int64_t>(out.relation.rows.size()) * node.row_bytes, at,
                                  nodeOf(*node.children.at(0)), std::nullopt});
            return out;
        }
        emit(node, out, inputRows);
        return out;
    }

  private:
    const Database& db;
    const std::map<const planner::SiteNode*, const OperatorBinding*>& bindings;
    Timestamp at;

    std::string nodeOf(const planner::SiteNode& node) const {
        auto it = bindings.find(&node);
        return it == bindings.end() ? std::string(to_string(node.exec_region)) : it->second->node_id;
    }

    void emit(const planner::SiteNode& node, Outcome& out, std::int64_t rowsIn) const {
        auto it = bindings.find(&node);
        std::string assetId = it == bindings.end() ? "builtin/" + operator_signature(node).goal : it->second->variant.asset;
        out.events.push_back({assetId, metering::Metric::Rows, rowsIn, at, nodeOf(node), std::nullopt});
    }

    static void merge(Outcome& out, Outcome& left, Outcome& right) {
        out.events = std::move(left.events);
        out.events.insert(out.events.end(), right.events.begin(), right.events.end());
    }

    static Relation project(const std::vector<query::OutputColumn>& columns, const Relation& input) {
        std::vector<std::size_t> picks;
        for (const auto& c : columns) {
            picks.push_back(indexOf(input.columns, c.name));
        }
        Relation out{columns, {}};
        out.rows.reserve(input.rows.size());
        for (const auto& row : input.rows) {
            Row r;
            r.reserve(picks.size());
            for (auto p : picks) {
                r.push_back(row[p]);
            }
            out.rows.push_back(std::move(r));
        }
        return out;
    }

    static Relation applyFilter(const planner::FilterOp& filter, const Relation& input) {
        struct Bound {
            std::size_t left;
            query::CompareOp op;
            std::optional<std::size_t> right;
            Value literal;
        };
        std::vector<Bound> bound;
        for (const auto& p : filter.predicates) {
            Bound b{indexOf(input.columns, p.column), p.op, std::nullopt, {}};
            if (const auto* column = std::get_if<std::string>(&p.right)) {
                b.right = indexOf(input.columns, *column);
            } else {
                b.literal = std::get<Value>(p.right);
            }
            bound.push_back(std::move(b));
        }
        Relation out{input.columns, {}};
        for (const auto& row : input.rows) {
            bool keep = true;
            for (const auto& b : bound) {
                if (!query::evaluate_compare(b.op, row[b.left], b.right ? row[*b.right] : b.literal)) {
                    keep = false;
                    break;
                }
            }
            if (keep) {
                out.rows.push_back(row);
            }
        }
        return out;
    }

    static Relation hashJoin(const planner::JoinOp& join, const Relation& left, const Relation& right) {
        std::vector<std::size_t> leftKeys;
        std::vector<std::size_t> rightKeys;
        for (const auto& [a, b] : join.keys) {
            leftKeys.push_back(indexOf(left.columns, a));
            rightKeys.push_back(indexOf(right.columns, b));
        }
        auto keyOf = [](const Row& row, const std::vector<std::size_t>& idx, bool& hasNull) {
            Row key;
            for (auto i : idx) {
                hasNull = hasNull || std::holds_alternative<std::monostate>(row[i]);
                key.push_back(row[i]);
            }
            return key;
        };
        std::unordered_map<Row, std::vector<std::size_t>, query::RowHash, query::RowEqual> table;
        for (std::size_t r = 0; r < right.rows.size(); ++r) {
            bool hasNull = false;
            auto key = keyOf(right.rows[r], rightKeys, hasNull);
            if (!hasNull) {
                table[std::move(key)].push_back(r);
            }
        }
        Relation out;
        out.columns = left.columns;
        out.columns.insert(out.columns.end(), right.columns.begin(), right.columns.end());
        for (const auto& row : left.rows) {
            bool hasNull = false;
            auto key = keyOf(row, leftKeys, hasNull);
            if (hasNull) {
                continue;
            }
            auto it = table.find(key);
            if (it == table.end()) {
                continue;
            }
            for (auto r : it->second) {
                Row joined = row;
                joined.insert(joined.end(), right.rows[r].begin(), right.rows[r].end());
                out.rows.push_back(std::move(joined));
            }
        }
        return out;
    }

    static Relation applyAggregate(const planner::AggregateOp& aggregate, const Relation& input) {
        std::vector<std::size_t> groupIdx;
        for (const auto& g : aggregate.group_by) {
            groupIdx.push_back(indexOf(input.columns, g.name));
        }
        std::vector<std::optional<std::size_t>> argIdx;
        std::vector<bool> integral;
        for (const auto& a : aggregate.aggregates) {
            if (a.argument.empty()) {
                argIdx.emplace_back();
                integral.push_back(true);
            } else {
                auto i = indexOf(input.columns, a.argument);
                argIdx.emplace_back(i);
                integral.push_back(input.columns[i].type == query::ColumnType::Int64);
            }
        }
        std::unordered_map<Row, std::size_t, query::RowHash, query::RowEqual> groupIndex;
        std::vector<Row> keys;
        std::vector<std::vector<Accumulator>> states;
        if (groupIdx.empty()) {
            keys.emplace_back();
            states.emplace_back(aggregate.aggregates.size());
        }
        for (const auto& row : input.rows) {
            std::size_t g = 0;
            if (!groupIdx.empty()) {
                Row key;
                for (auto i : groupIdx) {
                    key.push_back(row[i]);
                }
                auto [it, inserted] = groupIndex.emplace(key, keys.size());
                if (inserted) {
                    keys.push_back(std::move(key));
                    states.emplace_back(aggregate.aggregates.size());
                }
                g = it->second;
            }
            for (std::size_t a = 0; a < aggregate.aggregates.size(); ++a) {
                auto& acc = states[g][a];
                if (!argIdx[a]) {
                    ++acc.count;
                    continue;
                }
                const Value& v = row[*argIdx[a]];
                if (std::holds_alternative<std::monostate>(v)) {
                    continue;
                }
                ++acc.count;
                switch (aggregate.aggregates[a].func) {
                    case query::AggFunc::Sum:
                    case query::AggFunc::Avg:
                        if (const auto* i = std::get_if<std::int64_t>(&v)) {
                            if (__builtin_add_overflow(acc.intSum, *i, &acc.intSum)) {
                                throw ArithmeticOverflow("SUM(" + aggregate.aggregates[a].argument + ") overflows 64 bits");
                            }
                        } else if (const auto* d = std::get_if<double>(&v)) {
                            acc.floatSum += *d;
                        }
                        break;
                    case query::AggFunc::Min:
                        if (acc.count == 1 || query::compare_values(v, acc.extreme) < 0) {
                            acc.extreme = v;
                        }
                        break;
                    case query::AggFunc::Max:
                        if (acc.count == 1 || query::compare_values(v, acc.extreme) > 0) {
                            acc.extreme = v;
                        }
                        break;
                    case query::AggFunc::Count: break;
                }
            }
        }
        Relation out;
        out.columns = aggregate.group_by;
        for (const auto& a : aggregate.aggregates) {
            out.columns.push_back({a.output_name, a.output_type});
        }
        for (std::size_t g = 0; g < keys.size(); ++g) {
            Row row = keys[g];
            for (std::size_t a = 0; a < aggregate.aggregates.size(); ++a) {
                const auto& acc = states[g][a];
                switch (aggregate.aggregates[a].func) {
                    case query::AggFunc::Count: row.emplace_back(acc.count); break;
                    case query::AggFunc::Sum:
                        if (acc.count == 0) {
                            row.emplace_back();
                        } else if (integral[a]) {
                            row.emplace_back(acc.intSum);
                        } else {
                            row.emplace_back(acc.floatSum);
                        }
                        break;
                    case query::AggFunc::Avg:
                        if (acc.count == 0) {
                            row.emplace_back();
                        } else {
                            double total = integral[a] ? static_cast<double>(acc.intSum) : acc.floatSum;
                            row.emplace_back(total / static_cast<double>(acc.count));
                        }
                        break;
                    case query::AggFunc::Min:
                    case query::AggFunc::Max: row.push_back(acc.count == 0 ? Value{} : acc.extreme); break;
                }
            }
            out.rows.push_back(std::move(row));
        }
        return out;
    }
};

}// namespace

ExecutionResult execute_plan(const ExecutionPlan& plan, const Database& database, Timestamp at) {
    if (!plan.plan) {
        throw AgoraError("InvalidPlan", "execution plan has no site plan");
    }
    std::map<const planner::SiteNode*, const OperatorBinding*> bindings;
    for (const auto& b : plan.bindings) {
        if (b.slot.node != nullptr) {
            bindings[b.slot.node] = &b;
        }
    }
    Runner runner(database, bindings, at);
    auto outcome = runner.run(*plan.plan);
    return {std::move(outcome.relation), std::move(outcome.events)};
}

ExecutionResult execute_site_plan(const planner::SitePtr& plan, const Database& database, Timestamp at) {
    ExecutionPlan bare;
    bare.plan = plan;
    return execute_plan(bare, database, at);
}

}// namespace agora::execution
