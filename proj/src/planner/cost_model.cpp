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

#include <agora/planner/cost_model.hpp>
#include <cmath>
#include <fmt/format.h>

namespace agora::planner {

double CostModel::ship_rate(Region from, Region to) const {
    if (from == to) {
        return 0.0;
    }
    if (auto it = ship_cost_per_byte.find({from, to}); it != ship_cost_per_byte.end()) {
        return it->second;
    }
    if (auto it = ship_cost_per_byte.find({to, from}); it != ship_cost_per_byte.end()) {
        return it->second;
    }
    return default_ship_cost_per_byte;
}

void CostModel::validate() const {
    auto nonNegative = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!nonNegative(cpu_cost_per_row)) {
        throw InvalidCostModel(fmt::format("cpu_cost_per_row must be finite and >= 0, got {}", cpu_cost_per_row));
    }
    if (!nonNegative(default_ship_cost_per_byte)) {
        throw InvalidCostModel(
            fmt::format("default_ship_cost_per_byte must be finite and >= 0, got {}", default_ship_cost_per_byte));
    }
    if (!std::isfinite(filter_selectivity_default) || filter_selectivity_default <= 0.0
        || filter_selectivity_default > 1.0) {
        throw InvalidCostModel(
            fmt::format("filter_selectivity_default must lie in (0, 1], got {}", filter_selectivity_default));
    }
    for (const auto& [pair, rate] : ship_cost_per_byte) {
        if (!nonNegative(rate)) {
            throw InvalidCostModel(fmt::format("ship cost {}->{} must be finite and >= 0, got {}",
                                               to_string(pair.first), to_string(pair.second), rate));
        }
    }
}

}// namespace agora::planner
