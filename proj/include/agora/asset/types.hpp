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

#ifndef AGORA_ASSET_TYPES_HPP_
#define AGORA_ASSET_TYPES_HPP_

#include <agora/common/money.hpp>
#include <agora/common/region.hpp>
#include <agora/metering/revenue_share.hpp>
#include <agora/planner/policy.hpp>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace agora::asset {

using AssetId = std::string;

enum class AssetKind { DataSource, Algorithm, Pipeline, System, ComputeNode, StorageNode, Application };

enum class ColumnType { Int64, Float64, Text, Bool, Date };

struct Column {
    std::string name;
    ColumnType type = ColumnType::Int64;
    friend bool operator==(const Column&, const Column&) = default;
};

struct Schema {
    std::vector<Column> columns;
    friend bool operator==(const Schema&, const Schema&) = default;
};

/// A named kind of value that is not relational, e.g. "model" or "relation".
struct Category {
    std::string name;
    friend bool operator==(const Category&, const Category&) = default;
};

/// Input or output type of an asset: a concrete schema or an opaque category.
using IOType = std::variant<Schema, Category>;

struct LogicalSignature {
    std::string goal;
    std::vector<IOType> inputs;
    IOType output = Category{"none"};
    friend bool operator==(const LogicalSignature&, const LogicalSignature&) = default;
};

struct QualityMetric {
    std::string name;
    double value = 0.0;
    std::string unit;
    friend bool operator==(const QualityMetric&, const QualityMetric&) = default;
};

enum class UsageUnit { PerCall, PerThousandCalls, PerMegabyte, PerHour };

struct PayOnce {
    Money price;
    friend bool operator==(const PayOnce&, const PayOnce&) = default;
};

struct Subscription {
    Money price;
    std::int64_t period_s = 0;
    friend bool operator==(const Subscription&, const Subscription&) = default;
};

struct PayPerUse {
    Money rate;
    UsageUnit unit = UsageUnit::PerCall;
    friend bool operator==(const PayPerUse&, const PayPerUse&) = default;
};

using PricingModel = std::variant<PayOnce, Subscription, PayPerUse>;

/// Headline amount of a pricing model (price or per-unit rate), used for ranking.
Money nominal_price(const PricingModel& pricing);

struct CertificateRequirement {
    std::string property;
    std::set<std::string> trusted_authorities;
    friend bool operator==(const CertificateRequirement&, const CertificateRequirement&) = default;
};

struct PipelineNode {
    std::string node_id;
    AssetId asset_ref;
    std::string role_category;
    friend bool operator==(const PipelineNode&, const PipelineNode&) = default;
};

struct PipelineEdge {
    std::string from_node;
    std::size_t from_output = 0;
    std::string to_node;
    std::size_t to_input = 0;
    friend bool operator==(const PipelineEdge&, const PipelineEdge&) = default;
};

struct PipelineGraph {
    std::vector<PipelineNode> nodes;
    std::vector<PipelineEdge> edges;
    friend bool operator==(const PipelineGraph&, const PipelineGraph&) = default;
};

struct AssetDescriptor {
    AssetId id;
    AssetKind kind = AssetKind::DataSource;
    std::string name;
    std::string provider;
    std::string version;
    LogicalSignature signature;
    std::vector<QualityMetric> quality;
    PricingModel pricing = PayOnce{};
    std::vector<planner::UsageConstraint> usage_constraints;
    std::vector<CertificateRequirement> required_certificates;
    std::optional<Region> region;
    std::optional<metering::RevenueShareTree> revenue_share;
    std::optional<PipelineGraph> graph;

    [[nodiscard]] const QualityMetric* metric(std::string_view metricName) const;

    friend bool operator==(const AssetDescriptor&, const AssetDescriptor&) = default;
};

std::string_view to_string(AssetKind kind);
std::optional<AssetKind> parse_asset_kind(std::string_view text);
std::string_view to_string(ColumnType type);
std::optional<ColumnType> parse_column_type(std::string_view text);
std::string_view to_string(UsageUnit unit);
std::optional<UsageUnit> parse_usage_unit(std::string_view text);

}// namespace agora::asset

#endif// AGORA_ASSET_TYPES_HPP_
