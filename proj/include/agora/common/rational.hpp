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

#ifndef AGORA_COMMON_RATIONAL_HPP_
#define AGORA_COMMON_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace agora {

/**
 * @brief Normalized fraction with a positive denominator.
 * Intermediate products use 128-bit integers; a result that does not fit 64 bits throws std::overflow_error.
 */
class Rational {
  public:
    constexpr Rational() = default;
    Rational(std::int64_t numerator, std::int64_t denominator = 1);

    /// Accepts "3/4", "1" or "-2/6".
    static Rational parse(std::string_view text);

    [[nodiscard]] std::int64_t numerator() const { return num; }
    [[nodiscard]] std::int64_t denominator() const { return den; }
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  private:
    std::int64_t num = 0;
    std::int64_t den = 1;
};

}// namespace agora

#endif// AGORA_COMMON_RATIONAL_HPP_
