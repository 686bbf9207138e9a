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

#ifndef AGORA_PLANNER_OPTIMIZER_HPP_
#define AGORA_PLANNER_OPTIMIZER_HPP_

#include <agora/planner/compliance.hpp>
#include <agora/planner/site_plan.hpp>
#include <optional>
#include <span>

namespace agora::planner {

class EnumerationLimitExceeded : public AgoraError {
  public:
    explicit EnumerationLimitExceeded(std::size_t tables)
        : AgoraError("EnumerationLimitExceeded", std::to_string(tables) + " tables exceed the limit of 12") {}
};

class NoCompliantPlan : public AgoraError {
  public:
    NoCompliantPlan() : AgoraError("NoCompliantPlan", "no plan satisfies the compliance policies") {}
};

class UnsupportedPlan : public AgoraError {
  public:
    explicit UnsupportedPlan(const std::string& message) : AgoraError("UnsupportedPlan", message) {}
};

inline constexpr std::size_t kMaxOptimizerTables = 12;

struct BestPlan {
    SitePtr root;
    double cost = 0;
};

/**
 * @brief Relational pieces of a logical plan that the optimizer recombines.
 * Each table keeps its scan and optional filter; join keys are collected from every join.
 */
struct QueryShape {
    struct Leaf {
        ScanOp scan;
        std::optional<FilterOp> filter;
    };
    std::vector<Leaf> leaves;
    std::vector<std::pair<std::string, std::string>> join_keys;
    std::optional<AggregateOp> aggregate;
    ProjectOp project;
    std::optional<Region> target;
};

/// Throws UnsupportedPlan for trees that are not Project over optional Aggregate over joins of (filtered) scans.
QueryShape decompose(const query::LogicalPlan& plan);

/// Candidate execution regions: the home regions of the query's tables plus the target, in canonical order.
std::vector<Region> region_universe(const QueryShape& shape, const query::TableRegistry& registry);

/**
 * @brief Cheapest compliant site plan.
 *
 * Dynamic programming over connected table subsets and execution regions explores every bushy join tree without
 * cross products. Scans and filters run at the table's home region. Joins and the aggregate may run in any region of
 * the universe, with a Ship inserted below them when an input lives elsewhere. The projection runs with its input and
 * a final Ship delivers to the target, if any. Every Ship is checked against the policies.
 * Ties on cost (relative 1e-9) go to fewer Ship nodes, then to the smaller plan text.
 * Returns nullopt when no compliant plan exists. Throws EnumerationLimitExceeded above 12 tables.
 */
std::optional<BestPlan> optimize(const query::LogicalPlan& plan, const query::TableRegistry& registry,
                                 std::span<const CompliancePolicy> policies, const CostModel& costModel);

/// As optimize, throwing NoCompliantPlan instead of returning nullopt.
BestPlan optimize_or_throw(const query::LogicalPlan& plan, const query::TableRegistry& registry,
                           std::span<const CompliancePolicy> policies, const CostModel& costModel);

}// namespace agora::planner

#endif// AGORA_PLANNER_OPTIMIZER_HPP_
