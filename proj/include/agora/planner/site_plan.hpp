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

#ifndef AGORA_PLANNER_SITE_PLAN_HPP_
#define AGORA_PLANNER_SITE_PLAN_HPP_

#include <agora/planner/cost_model.hpp>
#include <agora/query/catalog.hpp>
#include <agora/query/logical_plan.hpp>
#include <compare>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace agora::planner {

using query::AggregateOp;
using query::FilterOp;
using query::JoinOp;
using query::OutputColumn;
using query::ProjectOp;
using query::ScanOp;

/// Provenance of the rows flowing through a plan node.
struct LineageTag {
    std::string source_table;
    Region origin_region = Region::EU;
    bool aggregated = false;
    friend auto operator<=>(const LineageTag&, const LineageTag&) = default;
};

/// Moves its child's output from one region to another.
struct ShipOp {
    Region from = Region::EU;
    Region to = Region::EU;
    friend bool operator==(const ShipOp&, const ShipOp&) = default;
};

using PhysicalOp = std::variant<ScanOp, FilterOp, JoinOp, AggregateOp, ProjectOp, ShipOp>;

struct SiteNode;
using SitePtr = std::shared_ptr<const SiteNode>;

/**
 * @brief Site-annotated physical plan node.
 * A Ship node executes at its destination; every other node executes where its children are.
 */
struct SiteNode {
    PhysicalOp op;
    Region exec_region = Region::EU;
    std::vector<SitePtr> children;
    std::set<LineageTag> lineage;
    std::vector<OutputColumn> columns;
    /// Estimated output rows.
    double rows = 0;
    /// Sum of the widths of the output columns.
    std::int64_t row_bytes = 0;

    [[nodiscard]] double bytes() const { return rows * static_cast<double>(row_bytes); }
    [[nodiscard]] bool is_ship() const { return std::holds_alternative<ShipOp>(op); }
};

class MissingStats : public AgoraError {
  public:
    explicit MissingStats(const std::string& table) : AgoraError("MissingStats", table) {}
};

/// A parent and a child were placed in different regions without a Ship between them, or a Ship is degenerate.
class MalformedPlan : public AgoraError {
  public:
    explicit MalformedPlan(const std::string& message) : AgoraError("MalformedPlan", message) {}
};

/**
 * @brief Builds site plan nodes with their lineage, columns and cardinality estimates.
 *
 * Scan reads row_count rows. A filter keeps 1/distinct(c) of its input per equality with a literal on column c
 * and filter_selectivity_default per other predicate. A join yields |L|·|R| divided by max(distinct(a), distinct(b))
 * for every key pair a = b. An aggregate yields min(input, product of the group columns' distinct counts).
 * Aggregate outputs are 8 bytes wide; base columns keep their registered width.
 */
class PlanFactory {
  public:
    PlanFactory(const query::TableRegistry& registry, const CostModel& costModel);

    /// Scan at the table's home region. An empty column list reads every column.
    [[nodiscard]] SitePtr scan(const std::string& table, std::vector<OutputColumn> columns = {}) const;
    [[nodiscard]] SitePtr scan(ScanOp op) const;
    [[nodiscard]] SitePtr filter(FilterOp op, SitePtr child) const;
    /// Both inputs must already execute in the same region.
    [[nodiscard]] SitePtr join(JoinOp op, SitePtr left, SitePtr right) const;
    [[nodiscard]] SitePtr aggregate(AggregateOp op, SitePtr child) const;
    [[nodiscard]] SitePtr project(ProjectOp op, SitePtr child) const;
    [[nodiscard]] SitePtr ship(SitePtr child, Region to) const;
    /// Ships the child to region unless it is already there.
    [[nodiscard]] SitePtr place(SitePtr child, Region region) const;

    [[nodiscard]] std::int64_t column_width(const std::string& column) const;
    [[nodiscard]] double distinct(const std::string& column) const;
    [[nodiscard]] const query::TableRegistry& registry() const { return tables; }
    [[nodiscard]] const CostModel& cost_model() const { return costs; }

  private:
    const query::TableRegistry& tables;
    const CostModel& costs;
};

/// Lineage of a subtree: Scan(t) gives {(t, home, false)}, Aggregate marks every tag aggregated, others take the union.
std::set<LineageTag> lineage_tags(const SiteNode& node);

/// Estimated output rows of the node.
double estimate_cardinality(const SiteNode& node);

/// Rows an operator reads: row_count for scans, the sum of the children's rows otherwise; zero for Ship.
double rows_in(const SiteNode& node);

/**
 * @brief Total estimated cost of a plan.
 * Sum over Ship nodes of bytes(child)·rate(from, to), plus sum over all other operators of rows_in·cpu_cost_per_row.
 */
double estimate_cost(const SiteNode& root, const CostModel& costModel);

/// Number of Ship nodes in the plan.
std::size_t count_ships(const SiteNode& root);

/// Throws MalformedPlan if a region change lacks a Ship, or a Ship has from == to or from ≠ its child's region.
void check_well_formed(const SiteNode& root);

/**
 * @brief Indented plan text, one node per line, children indented by two spaces.
 * Lines look like "SHIP EU->NA", "JOIN@NA (customer.custkey = orders.custkey)" and "SCAN@EU orders".
 * With explain every line ends with "  [rows=<r> bytes=<b>]".
 */
std::string to_string(const SiteNode& root, bool explain = false);

}// namespace agora::planner

#endif// AGORA_PLANNER_SITE_PLAN_HPP_
