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

#include <agora/asset/types.hpp>
#include <array>
#include <utility>

namespace agora::asset {

namespace {

template<typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table, std::string_view text) {
    for (const auto& [value, name] : table) {
        if (name == text) {
            return value;
        }
    }
    return std::nullopt;
}

template<typename Enum, std::size_t N>
std::string_view name(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
    for (const auto& [v, n] : table) {
        if (v == value) {
            return n;
        }
    }
    return "?";
}

constexpr std::array<std::pair<AssetKind, std::string_view>, 7> kKinds{{
    {AssetKind::DataSource, "DataSource"},
    {AssetKind::Algorithm, "Algorithm"},
    {AssetKind::Pipeline, "Pipeline"},
    {AssetKind::System, "System"},
    {AssetKind::ComputeNode, "ComputeNode"},
    {AssetKind::StorageNode, "StorageNode"},
    {AssetKind::Application, "Application"},
}};

constexpr std::array<std::pair<ColumnType, std::string_view>, 5> kTypes{{
    {ColumnType::Int64, "Int64"},
    {ColumnType::Float64, "Float64"},
    {ColumnType::Text, "Text"},
    {ColumnType::Bool, "Bool"},
    {ColumnType::Date, "Date"},
}};

constexpr std::array<std::pair<UsageUnit, std::string_view>, 4> kUnits{{
    {UsageUnit::PerCall, "PerCall"},
    {UsageUnit::PerThousandCalls, "PerThousandCalls"},
    {UsageUnit::PerMegabyte, "PerMegabyte"},
    {UsageUnit::PerHour, "PerHour"},
}};

}// namespace

std::string_view to_string(AssetKind kind) { return name(kKinds, kind); }
std::optional<AssetKind> parse_asset_kind(std::string_view text) { return lookup(kKinds, text); }
std::string_view to_string(ColumnType type) { return name(kTypes, type); }
std::optional<ColumnType> parse_column_type(std::string_view text) { return lookup(kTypes, text); }
std::string_view to_string(UsageUnit unit) { return name(kUnits, unit); }
std::optional<UsageUnit> parse_usage_unit(std::string_view text) { return lookup(kUnits, text); }

Money nominal_price(const PricingModel& pricing) {
    return std::visit(
        [](const auto& model) -> Money {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, PayPerUse>) {
                return model.rate;
            } else {
                return model.price;
            }
        },
        pricing);
}

const QualityMetric* AssetDescriptor::metric(std::string_view metricName) const {
    for (const auto& m : quality) {
        if (m.name == metricName) {
            return &m;
        }
    }
    return nullptr;
}

}// namespace agora::asset
