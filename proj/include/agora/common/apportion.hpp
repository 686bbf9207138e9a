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

#ifndef AGORA_COMMON_APPORTION_HPP_
#define AGORA_COMMON_APPORTION_HPP_

#include <agora/common/rational.hpp>
#include <cstdint>
#include <span>
#include <vector>

namespace agora {

/**
 * @brief Largest-remainder (Hamilton) apportionment of a non-negative integer total.
 *
 * Each part first receives floor(total * weight_i / sum(weights)). The units left over are handed out one at a
 * time to the parts with the largest fractional remainders; equal remainders go to the lower index first.
 * The result always sums to total exactly. Weights must be non-negative with a positive sum.
 */
std::vector<std::int64_t> apportion(std::int64_t total, std::span<const Rational> weights);

}// namespace agora

#endif// AGORA_COMMON_APPORTION_HPP_
