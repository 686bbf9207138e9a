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

#include <agora/query/ast.hpp>

namespace agora::query {

std::string_view to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "<>";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

bool evaluate_compare(CompareOp op, const Value& lhs, const Value& rhs) {
    if (std::holds_alternative<std::monostate>(lhs) || std::holds_alternative<std::monostate>(rhs)) {
        return false;
    }
    auto order = compare_values(lhs, rhs);
    if (order == std::partial_ordering::unordered) {
        return false;
    }
    switch (op) {
        case CompareOp::Eq: return order == 0;
        case CompareOp::Ne: return order != 0;
        case CompareOp::Lt: return order < 0;
        case CompareOp::Le: return order <= 0;
        case CompareOp::Gt: return order > 0;
        case CompareOp::Ge: return order >= 0;
    }
    return false;
}

std::string_view to_string(AggFunc func) {
    switch (func) {
        case AggFunc::Count: return "count";
        case AggFunc::Sum: return "sum";
        case AggFunc::Avg: return "avg";
        case AggFunc::Min: return "min";
        case AggFunc::Max: return "max";
    }
    return "?";
}

}// namespace agora::query
