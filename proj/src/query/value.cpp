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

#include <agora/query/value.hpp>
#include <cmath>
#include <fmt/format.h>
#include <functional>

namespace agora::query {

namespace {

bool isNumber(const Value& v) { return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v); }

double asDouble(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return static_cast<double>(*i);
    }
    return std::get<double>(v);
}

}// namespace

std::partial_ordering compare_values(const Value& a, const Value& b) {
    bool aNull = std::holds_alternative<std::monostate>(a);
    bool bNull = std::holds_alternative<std::monostate>(b);
    if (aNull || bNull) {
        return aNull == bNull ? std::partial_ordering::equivalent
                              : (aNull ? std::partial_ordering::less : std::partial_ordering::greater);
    }
    if (isNumber(a) && isNumber(b)) {
        if (std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b)) {
            return std::get<std::int64_t>(a) <=> std::get<std::int64_t>(b);
        }
        return asDouble(a) <=> asDouble(b);
    }
    if (a.index() != b.index()) {
        return std::partial_ordering::unordered;
    }
    if (const auto* s = std::get_if<std::string>(&a)) {
        return *s <=> std::get<std::string>(b);
    }
    return std::get<bool>(a) <=> std::get<bool>(b);
}

bool values_equal(const Value& a, const Value& b) { return compare_values(a, b) == std::partial_ordering::equivalent; }

std::size_t hash_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::size_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return 0x9e3779b97f4a7c15ULL;
            } else if constexpr (std::is_same_v<T, double>) {
                // Integral doubles hash like the equal integer so mixed numeric keys meet in one bucket.
                if (std::trunc(x) == x && std::abs(x) < 9.2e18) {
                    return std::hash<std::int64_t>{}(static_cast<std::int64_t>(x));
                }
                return std::hash<double>{}(x);
            } else {
                return std::hash<T>{}(x);
            }
        },
        v);
}

std::string format_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "NULL";
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return x;
            } else {
                return fmt::format("{}", x);
            }
        },
        v);
}

bool value_fits(const Value& v, ColumnType type) {
    switch (type) {
        case ColumnType::Int64: return std::holds_alternative<std::int64_t>(v);
        case ColumnType::Float64: return isNumber(v);
        case ColumnType::Text:
        case ColumnType::Date: return std::holds_alternative<std::string>(v);
        case ColumnType::Bool: return std::holds_alternative<bool>(v);
    }
    return false;
}

std::size_t RowHash::operator()(const Row& row) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& v : row) {
        h ^= hash_value(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool RowEqual::operator()(const Row& a, const Row& b) const {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!values_equal(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

}// namespace agora::query
