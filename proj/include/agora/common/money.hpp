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

#ifndef AGORA_COMMON_MONEY_HPP_
#define AGORA_COMMON_MONEY_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace agora {

/**
 * @brief Exact monetary amount in micro-units (1 currency unit = 1,000,000 micro-units).
 * All arithmetic is integer arithmetic and throws on signed overflow.
 */
struct Money {
    static constexpr std::int64_t kMicrosPerUnit = 1'000'000;

    std::int64_t micro_units = 0;

    static constexpr Money micros(std::int64_t value) { return Money{value}; }
    static constexpr Money units(std::int64_t value) { return Money{value * kMicrosPerUnit}; }

    /// Parses "2.5", "$2.50", "-0.000001". More than six fractional digits is an error.
    static Money parse(std::string_view text);

    /// "$2.50" style rendering with at least two and at most six fractional digits.
    [[nodiscard]] std::string to_string() const;

    Money& operator+=(Money other);
    Money& operator-=(Money other);

    friend Money operator+(Money a, Money b) { return a += b; }
    friend Money operator-(Money a, Money b) { return a -= b; }
    friend constexpr auto operator<=>(const Money&, const Money&) = default;
};

}// namespace agora

#endif// AGORA_COMMON_MONEY_HPP_
