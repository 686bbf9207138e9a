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
#include <agora/common/rational.hpp>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace agora {

namespace {

using Wide = __int128;

Wide wideGcd(Wide a, Wide b) {
    if (a < 0) {
        a = -a;
    }
    if (b < 0) {
        b = -b;
    }
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("rational overflow");
    }
    return static_cast<std::int64_t>(v);
}

Rational make(Wide num, Wide den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wideGcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num), narrow(den));
}

}// namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Wide n = numerator;
    Wide d = denominator;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Wide g = wideGcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = narrow(n);
    den = narrow(d);
}

Rational Rational::parse(std::string_view text) {
    auto parseInt = [&](std::string_view part) {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
            throw UsageError("InvalidRational", "cannot parse rational '" + std::string(text) + "'");
        }
        return value;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parseInt(text), 1);
    }
    std::int64_t d = parseInt(text.substr(slash + 1));
    if (d == 0) {
        throw UsageError("InvalidRational", "zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parseInt(text.substr(0, slash)), d);
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational operator+(const Rational& a, const Rational& b) {
    return make(Wide(a.num) * b.den + Wide(b.num) * a.den, Wide(a.den) * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make(Wide(a.num) * b.den - Wide(b.num) * a.den, Wide(a.den) * b.den);
}

Rational operator*(const Rational& a, const Rational& b) { return make(Wide(a.num) * b.num, Wide(a.den) * b.den); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = Wide(a.num) * b.den;
    Wide rhs = Wide(b.num) * a.den;
    if (lhs < rhs) {
        return std::strong_ordering::less;
    }
    if (lhs > rhs) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

}// namespace agora
