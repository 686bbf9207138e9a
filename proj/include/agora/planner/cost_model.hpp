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

#ifndef AGORA_PLANNER_COST_MODEL_HPP_
#define AGORA_PLANNER_COST_MODEL_HPP_

#include <agora/common/error.hpp>
#include <agora/common/region.hpp>
#include <map>
#include <utility>

namespace agora::planner {

class InvalidCostModel : public AgoraError {
  public:
    explicit InvalidCostModel(const std::string& message) : AgoraError("InvalidCostModel", message) {}
};

/**
 * @brief Data-movement and processing prices used by the optimizer.
 *
 * A configured rate (a, b) also applies to (b, a) unless (b, a) is configured separately.
 * Pairs that are not configured in either direction use default_ship_cost_per_byte.
 */
struct CostModel {
    double cpu_cost_per_row = 0.001;
    double filter_selectivity_default = 0.1;
    double default_ship_cost_per_byte = 0.01;
    std::map<std::pair<Region, Region>, double> ship_cost_per_byte;

    /// Zero when from == to.
    [[nodiscard]] double ship_rate(Region from, Region to) const;

    /// Throws InvalidCostModel for negative or non-finite rates or a selectivity outside (0, 1].
    void validate() const;
};

}// namespace agora::planner

#endif// AGORA_PLANNER_COST_MODEL_HPP_
