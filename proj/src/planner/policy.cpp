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

#include <agora/common/error.hpp>
#include <agora/planner/policy.hpp>

namespace agora::planner {

CompliancePolicy make_deny_ship(Region from, std::optional<Region> to) {
    if (to && *to == from) {
        throw AgoraError("DegeneratePolicy", "DENY SHIP FROM " + std::string(agora::to_string(from)) + " TO itself");
    }
    return DenyShip{from, to};
}

std::string to_string(const CompliancePolicy& policy) {
    if (const auto* deny = std::get_if<DenyShip>(&policy)) {
        return "DENY SHIP FROM " + std::string(agora::to_string(deny->from)) + " TO "
            + (deny->to ? std::string(agora::to_string(*deny->to)) : std::string("ANY"));
    }
    return "ALLOW ONLY AGGREGATED FROM " + std::string(agora::to_string(std::get<AggregatedOnly>(policy).from));
}

}// namespace agora::planner
