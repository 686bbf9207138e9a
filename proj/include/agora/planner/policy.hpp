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

#ifndef AGORA_PLANNER_POLICY_HPP_
#define AGORA_PLANNER_POLICY_HPP_

#include <agora/common/region.hpp>
#include <optional>
#include <set>
#include <string>
#include <variant>

namespace agora::planner {

/// No data of origin `from` may reach `to` unaggregated. An empty `to` means any other region.
struct DenyShip {
    Region from;
    std::optional<Region> to;
    friend bool operator==(const DenyShip&, const DenyShip&) = default;
};

/// Data of origin `from` may leave its region only after aggregation.
struct AggregatedOnly {
    Region from;
    friend bool operator==(const AggregatedOnly&, const AggregatedOnly&) = default;
};

using CompliancePolicy = std::variant<DenyShip, AggregatedOnly>;

/// The asset must not be joined (overlaid) with any other source.
struct NoOverlay {
    friend bool operator==(const NoOverlay&, const NoOverlay&) = default;
};

/// The listed consumers may not use the asset.
struct VendorDeny {
    std::set<std::string> consumers;
    friend bool operator==(const VendorDeny&, const VendorDeny&) = default;
};

using UsageConstraint = std::variant<NoOverlay, VendorDeny>;

/// Throws AgoraError("DegeneratePolicy") for DenyShip with from == to.
CompliancePolicy make_deny_ship(Region from, std::optional<Region> to);

std::string to_string(const CompliancePolicy& policy);

}// namespace agora::planner

#endif// AGORA_PLANNER_POLICY_HPP_
