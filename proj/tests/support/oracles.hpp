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

#ifndef AGORA_TESTS_ORACLES_HPP_
#define AGORA_TESTS_ORACLES_HPP_

#include <agora/escrow/session.hpp>
#include <agora/execution/database.hpp>
#include <agora/execution/variants.hpp>
#include <agora/metering/tracker.hpp>
#include <agora/planner/cost_model.hpp>
#include <agora/planner/policy.hpp>
#include <agora/planner/site_plan.hpp>
#include <agora/query/ast.hpp>
#include <agora/query/catalog.hpp>
#include <agora/query/logical_plan.hpp>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace agora::testing {

/// Directory holding data/ and tests/golden/.
std::filesystem::path source_dir();
std::string read_text(const std::filesystem::path& path);

struct RandomProgramOptions {
    int min_tables = 1;
    int max_tables = 4;
    int max_regions = 3;
    std::int64_t min_rows = 20;
    std::int64_t max_rows = 200;
    int max_policies = 3;
    bool allow_target = true;
};

/// REGISTER/CONSTRAINT/SELECT text of a random connected equi-join query.
std::string random_program(std::mt19937_64& rng, const RandomProgramOptions& options);

/// Nested-loop evaluation straight from the select: cross product, predicates, grouping, projection.
std::vector<query::Row> reference_evaluate(const query::SelectSpec& select, const query::TableRegistry& registry,
                                           const execution::Database& database);

/// Multiset equality under query::values_equal.
bool same_rows(std::vector<query::Row> a, std::vector<query::Row> b);

/// Sum of ship bytes times rate plus operator input rows times the cpu rate, recomputed from node estimates.
double oracle_cost(const planner::SiteNode& root, const planner::CostModel& costModel);

/// Ship nodes whose delivered lineage breaks a policy, recomputed from the scans below them.
std::size_t oracle_violations(const planner::SiteNode& root, std::span<const planner::CompliancePolicy> policies);

struct BruteForceResult {
    std::optional<double> best_cost;
    std::size_t plans = 0;
    std::size_t compliant = 0;
};

/// Enumerates every bushy join tree and every execution region of every join and the aggregate.
BruteForceResult brute_force_optimum(const query::LogicalPlan& plan, const query::TableRegistry& registry,
                                     std::span<const planner::CompliancePolicy> policies,
                                     const planner::CostModel& costModel);

struct ExhaustiveAssignment {
    bool feasible = false;
    std::vector<execution::Assignment> assignment;
    double runtime = 0;
    std::int64_t price = 0;
    /// Cheapest total over all eligible assignments, ignoring the budget.
    std::int64_t cheapest = 0;
};

/// Minimum (runtime, price, assignment) over every combination; eligible[s] lists the (variant, node) options of slot s.
ExhaustiveAssignment exhaustive_assignment(std::span<const execution::Slot> slots,
                                           const execution::VariantClasses& classes,
                                           std::span<const execution::NodeExecutorInfo> nodes,
                                           const std::vector<std::vector<execution::Assignment>>& eligible,
                                           std::optional<Money> budget);

/// Random slots, variant classes and nodes whose eligibility is known by construction.
struct SelectionInstance {
    std::vector<execution::Slot> slots;
    execution::VariantClasses classes;
    std::vector<execution::NodeExecutorInfo> nodes;
    execution::AuthorityRegistry authorities;
    execution::Timestamp now = 1'000'000;
    std::optional<Money> budget;
    /// Eligible (variant, node) options per slot, in (variant, node) order.
    std::vector<std::vector<execution::Assignment>> eligible;
};

SelectionInstance random_selection_instance(std::mt19937_64& rng);

/// Charge of one pricing model for a slot, in micro-units, using exact integer arithmetic where the unit allows.
std::int64_t oracle_charge(const asset::PricingModel& pricing, const execution::Slot& slot, double runtime);

/// Sort events by (window, asset, metric) and sum each run.
std::vector<metering::AggregatedCounter> sort_and_sum(std::vector<metering::UsageEvent> events,
                                                      std::int64_t windowSeconds);

struct TranscriptAudit {
    std::vector<std::string> atomicity;
    std::vector<std::string> blindness;
    std::set<std::size_t> paid_chunks;
    std::set<std::size_t> released_chunks;
};

/// Checks Verified before Confirmed payment before key release, per chunk, and that no data reaches the mediator.
TranscriptAudit audit_transcript(const escrow::Transcript& transcript);

}// namespace agora::testing

#endif// AGORA_TESTS_ORACLES_HPP_
