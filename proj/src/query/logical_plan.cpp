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

#include <agora/query/logical_plan.hpp>

namespace agora::query {

namespace {

LogicalPtr node(decltype(LogicalNode::op) op, std::vector<LogicalPtr> children) {
    return std::make_shared<const LogicalNode>(LogicalNode{std::move(op), std::move(children)});
}

std::string columnList(const std::vector<OutputColumn>& columns) {
    std::string out;
    for (const auto& c : columns) {
        out += (out.empty() ? "" : ", ") + c.name;
    }
    return out;
}

void render(const LogicalNode& n, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    std::visit(
        [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, ScanOp>) {
                out += "SCAN " + op.table + " [" + columnList(op.columns) + "]";
            } else if constexpr (std::is_same_v<T, FilterOp>) {
                out += "FILTER (";
                for (std::size_t i = 0; i < op.predicates.size(); ++i) {
                    out += (i ? " AND " : "") + to_string(op.predicates[i]);
                }
                out += ")";
            } else if constexpr (std::is_same_v<T, JoinOp>) {
                out += "JOIN (";
                for (std::size_t i = 0; i < op.keys.size(); ++i) {
                    out += (i ? " AND " : "") + op.keys[i].first + " = " + op.keys[i].second;
                }
                out += ")";
            } else if constexpr (std::is_same_v<T, AggregateOp>) {
                out += "AGGREGATE [" + columnList(op.group_by) + "]";
                for (const auto& a : op.aggregates) {
                    out += " " + a.output_name;
                }
            } else {
                out += "PROJECT [" + columnList(op.columns) + "]";
            }
        },
        n.op);
    out += "\n";
    for (const auto& child : n.children) {
        render(*child, depth + 1, out);
    }
}

}// namespace

LogicalPtr make_scan(ScanOp op) { return node(std::move(op), {}); }
LogicalPtr make_filter(FilterOp op, LogicalPtr child) { return node(std::move(op), {std::move(child)}); }
LogicalPtr make_join(JoinOp op, LogicalPtr left, LogicalPtr right) {
    return node(std::move(op), {std::move(left), std::move(right)});
}
LogicalPtr make_aggregate(AggregateOp op, LogicalPtr child) { return node(std::move(op), {std::move(child)}); }
LogicalPtr make_project(ProjectOp op, LogicalPtr child) { return node(std::move(op), {std::move(child)}); }

std::vector<OutputColumn> output_columns(const LogicalNode& n) {
    return std::visit(
        [&](const auto& op) -> std::vector<OutputColumn> {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, ScanOp>) {
                return op.columns;
            } else if constexpr (std::is_same_v<T, FilterOp>) {
                return output_columns(*n.children.at(0));
            } else if constexpr (std::is_same_v<T, JoinOp>) {
                auto cols = output_columns(*n.children.at(0));
                auto right = output_columns(*n.children.at(1));
                cols.insert(cols.end(), right.begin(), right.end());
                return cols;
            } else if constexpr (std::is_same_v<T, AggregateOp>) {
                auto cols = op.group_by;
                for (const auto& a : op.aggregates) {
                    cols.push_back({a.output_name, a.output_type});
                }
                return cols;
            } else {
                return op.columns;
            }
        },
        n.op);
}

std::string to_string(const BoundPredicate& p) {
    std::string rhs;
    if (const auto* col = std::get_if<std::string>(&p.right)) {
        rhs = *col;
    } else {
        const auto& v = std::get<Value>(p.right);
        rhs = std::holds_alternative<std::string>(v) ? "'" + format_value(v) + "'" : format_value(v);
    }
    return p.column + " " + std::string(to_string(p.op)) + " " + rhs;
}

std::string to_string(const LogicalPlan& plan) {
    std::string out;
    if (plan.root) {
        render(*plan.root, 0, out);
    }
    return out;
}

}// namespace agora::query
