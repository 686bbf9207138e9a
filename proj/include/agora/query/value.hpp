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

#ifndef AGORA_QUERY_VALUE_HPP_
#define AGORA_QUERY_VALUE_HPP_

#include <agora/asset/types.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace agora::query {

using asset::ColumnType;

/// Cell value. monostate is SQL NULL (only produced by aggregates over empty input); dates are ISO-8601 strings.
using Value = std::variant<std::monostate, std::int64_t, double, std::string, bool>;
using Row = std::vector<Value>;

/// Total order used by comparisons and sorting: NULL first, numbers compared numerically across int/float.
std::partial_ordering compare_values(const Value& a, const Value& b);
bool values_equal(const Value& a, const Value& b);
std::size_t hash_value(const Value& v);

std::string format_value(const Value& v);

/// Whether a value of this runtime kind may be stored in a column of the given type.
bool value_fits(const Value& v, ColumnType type);

struct RowHash {
    std::size_t operator()(const Row& row) const;
};
struct RowEqual {
    bool operator()(const Row& a, const Row& b) const;
};

}// namespace agora::query

#endif// AGORA_QUERY_VALUE_HPP_
