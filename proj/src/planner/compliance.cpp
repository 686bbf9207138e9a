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

#include <agora/planner/compliance.hpp>

namespace agora::planner {

namespace {

bool carriesRaw(const std::set<LineageTag>& lineage, Region origin) {
    for (const auto& tag : lineage) {
        if (tag.origin_region == origin && !tag.aggregated) {
            return true;
        }
    }
    return false;
}

void walk(const SitePtr& node, std::span<const CompliancePolicy> policies, ComplianceReport& report) {
    if (const auto* ship = std::get_if<ShipOp>(&node->op)) {
        const auto& lineage = node->children.at(0)->lineage;
        for (const auto& policy : policies) {
            if (violates(policy, lineage, ship->to)) {
                report.violations.push_back({node, policy});
            }
        }
    }
    for (const auto& c : node->children) {
        walk(c, policies, report);
    }
}

}// namespace

bool violates(const CompliancePolicy& policy, const std::set<LineageTag>& lineage, Region to) {
    if (const auto* deny = std::get_if<DenyShip>(&policy)) {
        bool destinationMatches = deny->to ? to == *deny->to : to != deny->from;
        return destinationMatches && carriesRaw(lineage, deny->from);
    }
    const auto& aggregatedOnly = std::get<AggregatedOnly>(policy);
    return to != aggregatedOnly.from && carriesRaw(lineage, aggregatedOnly.from);
}

bool ship_allowed(const std::set<LineageTag>& lineage, Region to, std::span<const CompliancePolicy> policies) {
    for (const auto& policy : policies) {
        if (violates(policy, lineage, to)) {
            return false;
        }
    }
    return true;
}

ComplianceReport check_plan(const SitePtr& root, std::span<const CompliancePolicy> policies) {
    ComplianceReport report;
    if (root) {
        walk(root, policies, report);
    }
    return report;
}

}// namespace agora::planner
