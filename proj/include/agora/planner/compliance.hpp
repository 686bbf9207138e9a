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

#ifndef AGORA_PLANNER_COMPLIANCE_HPP_
#define AGORA_PLANNER_COMPLIANCE_HPP_

#include <agora/planner/policy.hpp>
#include <agora/planner/site_plan.hpp>
#include <span>
#include <vector>

namespace agora::planner {

struct ComplianceViolation {
    SitePtr ship;
    CompliancePolicy policy;
};

struct ComplianceReport {
    std::vector<ComplianceViolation> violations;
    [[nodiscard]] bool compliant() const { return violations.empty(); }
};

/**
 * @brief Whether a ship to `to` carrying data with this lineage breaks the policy.
 *
 * Judgement is by lineage, not by the edge: DenyShip(f, t) is broken when non-aggregated data originating at f
 * arrives at t (or, for t = ANY, at any region other than f). AggregatedOnly(f) is broken when non-aggregated data
 * originating at f arrives anywhere other than f. Relaying through a third region therefore does not help.
 */
bool violates(const CompliancePolicy& policy, const std::set<LineageTag>& lineage, Region to);

bool ship_allowed(const std::set<LineageTag>& lineage, Region to, std::span<const CompliancePolicy> policies);

/// Every (Ship node, policy) pair that is violated, in pre-order.
ComplianceReport check_plan(const SitePtr& root, std::span<const CompliancePolicy> policies);

}// namespace agora::planner

#endif// AGORA_PLANNER_COMPLIANCE_HPP_
