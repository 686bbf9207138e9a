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

#ifndef AGORA_QUERY_AST_HPP_
#define AGORA_QUERY_AST_HPP_

#include <agora/asset/types.hpp>
#include <agora/common/region.hpp>
#include <agora/planner/policy.hpp>
#include <agora/query/value.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace agora::query {

/// Column reference as written; table is empty when unqualified.
struct ColumnRef {
    std::string table;
    std::string column;

    [[nodiscard]] std::string qualified() const { return table.empty() ? column : table + "." + column; }
    friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);
bool evaluate_compare(CompareOp op, const Value& lhs, const Value& rhs);

struct Predicate {
    ColumnRef left;
    CompareOp op = CompareOp::Eq;
    std::variant<ColumnRef, Value> right;

    [[nodiscard]] bool is_column_pair() const { return std::holds_alternative<ColumnRef>(right); }
    friend bool operator==(const Predicate&, const Predicate&) = default;
};

enum class AggFunc { Count, Sum, Avg, Min, Max };

std::string_view to_string(AggFunc func);

struct AggregateCall {
    AggFunc func = AggFunc::Count;
    /// Empty for COUNT(*).
    std::optional<ColumnRef> argument;
    friend bool operator==(const AggregateCall&, const AggregateCall&) = default;
};

using SelectItem = std::variant<ColumnRef, AggregateCall>;

struct SelectSpec {
    /// SELECT * : every column of every table in FROM order.
    bool star = false;
    std::vector<SelectItem> items;
    std::vector<std::string> tables;
    std::vector<Predicate> predicates;
    std::vector<ColumnRef> group_by;
    std::optional<Region> target_region;
    friend bool operator==(const SelectSpec&, const SelectSpec&) = default;
};

struct ColumnDef {
    std::string name;
    asset::ColumnType type = asset::ColumnType::Int64;
    std::optional<std::int64_t> distinct;
    friend bool operator==(const ColumnDef&, const ColumnDef&) = default;
};

struct RegisterTable {
    std::string name;
    Region region = Region::EU;
    std::int64_t row_count = 0;
    std::int64_t row_bytes = 1;
    std::vector<ColumnDef> columns;
    friend bool operator==(const RegisterTable&, const RegisterTable&) = default;
};

struct PolicyStatement {
    planner::CompliancePolicy policy;
    friend bool operator==(const PolicyStatement&, const PolicyStatement&) = default;
};

using Statement = std::variant<RegisterTable, PolicyStatement, SelectSpec>;

}// namespace agora::query

#endif// AGORA_QUERY_AST_HPP_
