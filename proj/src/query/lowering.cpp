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

#include <agora/query/lowering.hpp>
#include <algorithm>
#include <map>
#include <set>

namespace agora::query {

namespace {

std::string tableOf(const std::string& qualified) { return qualified.substr(0, qualified.find('.')); }

bool isNumeric(ColumnType t) { return t == ColumnType::Int64 || t == ColumnType::Float64; }

bool comparable(ColumnType a, ColumnType b) {
    if (isNumeric(a) && isNumeric(b)) {
        return true;
    }
    auto textual = [](ColumnType t) { return t == ColumnType::Text || t == ColumnType::Date; };
    return a == b || (textual(a) && textual(b));
}

bool literalFits(ColumnType type, const Value& v) {
    if (isNumeric(type)) {
        return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
    }
    return value_fits(v, type);
}

std::string aggregateName(AggFunc func, const std::string& argument) {
    return std::string(to_string(func)) + "(" + (argument.empty() ? "*" : argument) + ")";
}

}// namespace

std::string resolve_column(const ColumnRef& ref, const std::vector<std::string>& tables, const TableRegistry& registry) {
    if (!ref.table.empty()) {
        if (std::find(tables.begin(), tables.end(), ref.table) == tables.end()) {
            throw UnknownColumn(ref.qualified() + " (table not in FROM)");
        }
        if (registry.table(ref.table).column(ref.column) == nullptr) {
            throw UnknownColumn(ref.qualified());
        }
        return ref.qualified();
    }
    std::string found;
    for (const auto& t : tables) {
        if (registry.table(t).column(ref.column) != nullptr) {
            if (!found.empty()) {
                throw AmbiguousColumn(ref.column);
            }
            found = t + "." + ref.column;
        }
    }
    if (found.empty()) {
        throw UnknownColumn(ref.column);
    }
    return found;
}

LogicalPlan to_logical_plan(const SelectSpec& q, const TableRegistry& registry) {
    if (q.tables.empty()) {
        throw InvalidQuery("FROM list is empty");
    }
    std::set<std::string> seenTables;
    for (const auto& t : q.tables) {
        (void)registry.table(t);
        if (!seenTables.insert(t).second) {
            throw InvalidQuery("table " + t + " listed twice");
        }
    }
    auto resolve = [&](const ColumnRef& ref) { return resolve_column(ref, q.tables, registry); };
    auto typeOf = [&](const std::string& qualified) { return registry.column(qualified)->type; };

    std::map<std::string, std::set<std::string>> needed;
    std::map<std::string, std::vector<BoundPredicate>> filters;
    std::vector<std::pair<std::string, std::string>> joinKeys;

    for (const auto& p : q.predicates) {
        auto left = resolve(p.left);
        needed[tableOf(left)].insert(left);
        if (const auto* rightRef = std::get_if<ColumnRef>(&p.right)) {
            auto right = resolve(*rightRef);
            needed[tableOf(right)].insert(right);
            if (!comparable(typeOf(left), typeOf(right))) {
                throw InvalidQuery("cannot compare " + left + " with " + right);
            }
            if (tableOf(left) == tableOf(right)) {
                filters[tableOf(left)].push_back({left, p.op, right});
            } else if (p.op == CompareOp::Eq) {
                bool known = std::any_of(joinKeys.begin(), joinKeys.end(), [&](const auto& k) {
                    return (k.first == left && k.second == right) || (k.first == right && k.second == left);
                });
                if (!known) {
                    joinKeys.emplace_back(left, right);
                }
            } else {
                throw InvalidQuery("only equality may relate columns of different tables");
            }
        } else {
            const auto& literal = std::get<Value>(p.right);
            if (!literalFits(typeOf(left), literal)) {
                throw InvalidQuery("literal " + format_value(literal) + " does not match type of " + left);
            }
            filters[tableOf(left)].push_back({left, p.op, literal});
        }
    }

    bool aggregated = !q.group_by.empty();
    for (const auto& item : q.items) {
        aggregated = aggregated || std::holds_alternative<AggregateCall>(item);
    }
    if (aggregated && q.star) {
        throw InvalidQuery("SELECT * cannot be combined with aggregation");
    }

    std::vector<OutputColumn> groupBy;
    for (const auto& ref : q.group_by) {
        auto name = resolve(ref);
        needed[tableOf(name)].insert(name);
        OutputColumn col{name, typeOf(name)};
        if (std::find(groupBy.begin(), groupBy.end(), col) == groupBy.end()) {
            groupBy.push_back(col);
        }
    }

    std::vector<BoundAggregate> aggregates;
    std::vector<OutputColumn> projection;
    for (const auto& item : q.items) {
        if (const auto* ref = std::get_if<ColumnRef>(&item)) {
            auto name = resolve(*ref);
            needed[tableOf(name)].insert(name);
            if (aggregated && std::none_of(groupBy.begin(), groupBy.end(),
                                           [&](const OutputColumn& g) { return g.name == name; })) {
                throw InvalidQuery(name + " must appear in GROUP BY or inside an aggregate");
            }
            projection.push_back({name, typeOf(name)});
            continue;
        }
        const auto& call = std::get<AggregateCall>(item);
        BoundAggregate agg{call.func, "", "", ColumnType::Int64};
        if (call.argument) {
            agg.argument = resolve(*call.argument);
            needed[tableOf(agg.argument)].insert(agg.argument);
            auto argType = typeOf(agg.argument);
            if ((call.func == AggFunc::Sum || call.func == AggFunc::Avg) && !isNumeric(argType)) {
                throw InvalidQuery(std::string(to_string(call.func)) + " needs a numeric argument, got " + agg.argument);
            }
            switch (call.func) {
                case AggFunc::Count: agg.output_type = ColumnType::Int64; break;
                case AggFunc::Avg: agg.output_type = ColumnType::Float64; break;
                default: agg.output_type = argType; break;
            }
        } else if (call.func != AggFunc::Count) {
            throw InvalidQuery("only COUNT accepts *");
        }
        agg.output_name = aggregateName(agg.func, agg.argument);
        if (std::none_of(aggregates.begin(), aggregates.end(),
                         [&](const BoundAggregate& a) { return a.output_name == agg.output_name; })) {
            aggregates.push_back(agg);
        }
        projection.push_back({agg.output_name, agg.output_type});
    }

    // Scans, each with its filter directly on top.
    std::map<std::string, LogicalPtr> leaves;
    for (const auto& t : q.tables) {
        const auto& stats = registry.table(t);
        ScanOp scan{t, {}};
        for (const auto& c : stats.columns) {
            auto name = t + "." + c.name;
            if (q.star || needed[t].contains(name)) {
                scan.columns.push_back({name, c.type});
                if (q.star) {
                    projection.push_back({name, c.type});
                }
            }
        }
        LogicalPtr leaf = make_scan(std::move(scan));
        if (auto it = filters.find(t); it != filters.end()) {
            leaf = make_filter(FilterOp{it->second}, leaf);
        }
        leaves[t] = leaf;
    }

    std::set<std::string> joined{q.tables.front()};
    LogicalPtr tree = leaves[q.tables.front()];
    while (joined.size() < q.tables.size()) {
        bool progressed = false;
        for (const auto& t : q.tables) {
            if (joined.contains(t)) {
                continue;
            }
            JoinOp join;
            for (const auto& [a, b] : joinKeys) {
                if (joined.contains(tableOf(a)) && tableOf(b) == t) {
                    join.keys.emplace_back(a, b);
                } else if (joined.contains(tableOf(b)) && tableOf(a) == t) {
                    join.keys.emplace_back(b, a);
                }
            }
            if (join.keys.empty()) {
                continue;
            }
            tree = make_join(std::move(join), tree, leaves[t]);
            joined.insert(t);
            progressed = true;
            break;
        }
        if (!progressed) {
            throw InvalidQuery("join graph is not connected; add equi-join predicates");
        }
    }

    if (aggregated) {
        tree = make_aggregate(AggregateOp{groupBy, aggregates}, tree);
    }
    tree = make_project(ProjectOp{projection}, tree);
    return LogicalPlan{tree, q.target_region};
}

}// namespace agora::query
