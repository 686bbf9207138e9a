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

#ifndef AGORA_QUERY_LOGICAL_PLAN_HPP_
#define AGORA_QUERY_LOGICAL_PLAN_HPP_

#include <agora/query/ast.hpp>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace agora::query {

/// Output column of a plan node. Base columns are named "table.column", aggregates e.g. "sum(lineitem.price)".
struct OutputColumn {
    std::string name;
    ColumnType type = ColumnType::Int64;
    friend bool operator==(const OutputColumn&, const OutputColumn&) = default;
};

/// Predicate over qualified column names.
struct BoundPredicate {
    std::string column;
    CompareOp op = CompareOp::Eq;
    std::variant<std::string, Value> right;
    friend bool operator==(const BoundPredicate&, const BoundPredicate&) = default;
};

struct BoundAggregate {
    AggFunc func = AggFunc::Count;
    /// Empty for COUNT(*).
    std::string argument;
    std::string output_name;
    ColumnType output_type = ColumnType::Int64;
    friend bool operator==(const BoundAggregate&, const BoundAggregate&) = default;
};

struct ScanOp {
    std::string table;
    /// Columns actually read, in table order.
    std::vector<OutputColumn> columns;
    friend bool operator==(const ScanOp&, const ScanOp&) = default;
};

struct FilterOp {
    std::vector<BoundPredicate> predicates;
    friend bool operator==(const FilterOp&, const FilterOp&) = default;
};

struct JoinOp {
    /// Equi-join key pairs; first names a column of the left input, second of the right.
    std::vector<std::pair<std::string, std::string>> keys;
    friend bool operator==(const JoinOp&, const JoinOp&) = default;
};

struct AggregateOp {
    std::vector<OutputColumn> group_by;
    std::vector<BoundAggregate> aggregates;
    friend bool operator==(const AggregateOp&, const AggregateOp&) = default;
};

struct ProjectOp {
    std::vector<OutputColumn> columns;
    friend bool operator==(const ProjectOp&, const ProjectOp&) = default;
};

struct LogicalNode;
using LogicalPtr = std::shared_ptr<const LogicalNode>;

struct LogicalNode {
    std::variant<ScanOp, FilterOp, JoinOp, AggregateOp, ProjectOp> op;
    std::vector<LogicalPtr> children;
};

struct LogicalPlan {
    LogicalPtr root;
    std::optional<Region> target_region;
};

LogicalPtr make_scan(ScanOp op);
LogicalPtr make_filter(FilterOp op, LogicalPtr child);
LogicalPtr make_join(JoinOp op, LogicalPtr left, LogicalPtr right);
LogicalPtr make_aggregate(AggregateOp op, LogicalPtr child);
LogicalPtr make_project(ProjectOp op, LogicalPtr child);

std::vector<OutputColumn> output_columns(const LogicalNode& node);

/// One node per line, children indented by two spaces.
std::string to_string(const LogicalPlan& plan);

std::string to_string(const BoundPredicate& predicate);

}// namespace agora::query

#endif// AGORA_QUERY_LOGICAL_PLAN_HPP_
