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
#include <agora/common/money.hpp>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace agora {

Money Money::parse(std::string_view text) {
    auto fail = [&] { return UsageError("InvalidMoney", "cannot parse amount '" + std::string(text) + "'"); };
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    if (!rest.empty() && rest.front() == '$') {
        rest.remove_prefix(1);
    }
    if (rest.empty()) {
        throw fail();
    }
    __int128 whole = 0;
    __int128 frac = 0;
    int fracDigits = 0;
    bool seenDot = false;
    bool seenDigit = false;
    for (char c : rest) {
        if (c == '.') {
            if (seenDot) {
                throw fail();
            }
            seenDot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw fail();
        }
        seenDigit = true;
        if (seenDot) {
            if (++fracDigits > 6) {
                throw fail();
            }
            frac = frac * 10 + (c - '0');
        } else {
            whole = whole * 10 + (c - '0');
            if (whole > std::numeric_limits<std::int64_t>::max()) {
                throw fail();
            }
        }
    }
    if (!seenDigit) {
        throw fail();
    }
    for (int i = fracDigits; i < 6; ++i) {
        frac *= 10;
    }
    __int128 micros = whole * kMicrosPerUnit + frac;
    if (micros > std::numeric_limits<std::int64_t>::max()) {
        throw fail();
    }
    return Money{static_cast<std::int64_t>(negative ? -micros : micros)};
}

std::string Money::to_string() const {
    // Widen before negating so INT64_MIN prints correctly.
    __int128 value = micro_units;
    std::string sign = value < 0 ? "-" : "";
    if (value < 0) {
        value = -value;
    }
    auto whole = static_cast<unsigned long long>(value / kMicrosPerUnit);
    auto frac = static_cast<unsigned long long>(value % kMicrosPerUnit);
    std::string fracText = std::to_string(frac);
    fracText.insert(0, 6 - fracText.size(), '0');
    while (fracText.size() > 2 && fracText.back() == '0') {
        fracText.pop_back();
    }
    return sign + "$" + std::to_string(whole) + "." + fracText;
}

Money& Money::operator+=(Money other) {
    if (__builtin_add_overflow(micro_units, other.micro_units, &micro_units)) {
        throw std::overflow_error("money addition overflow");
    }
    return *this;
}

Money& Money::operator-=(Money other) {
    if (__builtin_sub_overflow(micro_units, other.micro_units, &micro_units)) {
        throw std::overflow_error("money subtraction overflow");
    }
    return *this;
}

}// namespace agora
