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

#ifndef AGORA_CATALOG_MATCHMAKING_HPP_
#define AGORA_CATALOG_MATCHMAKING_HPP_

#include <agora/catalog/market_index.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace agora::catalog {

enum class BoundKind { AtMost, AtLeast };

struct QualityBound {
    std::string metric;
    BoundKind kind = BoundKind::AtMost;
    double value = 0.0;
};

struct Request {
    std::string goal;
    std::optional<asset::IOType> required_output;
    std::vector<QualityBound> quality_bounds;
    std::optional<Money> budget;
    std::vector<std::string> keywords;
};

/// Scalarization weights of the ranking score. Higher score ranks first.
struct MatchWeights {
    double quality_slack = 0.5;
    double price = 0.5;
};

struct MatchCandidate {
    /// Either a single asset or a synthesized data + algorithm pipeline.
    std::variant<AssetId, asset::PipelineGraph> candidate;
    /// Asset id, or "<data>+<algorithm>" for compositions. Used for tie-breaking.
    std::string key;
    IdSet equivalents;
    Money price;
    double score = 0.0;
};

struct MatchResult {
    std::vector<MatchCandidate> ranked;
};

/// True when the asset itself meets goal, output, bounds and keyword requirements (budget excluded).
bool satisfies(const AssetDescriptor& descriptor, const Request& request);

double quality_slack(const AssetDescriptor& descriptor, const Request& request);

/**
 * @brief Finds every asset, and every single-edge composition of a data source feeding a one-input algorithm,
 * that matches the request.
 * Ranked by score = w_q * quality slack + w_p / (1 + price in currency units), ties by key.
 * Throws UsageError("InvalidRequest") for an empty goal or non-finite bounds.
 */
MatchResult match_request(const MarketIndex& index, const Request& request, const MatchWeights& weights = {});

}// namespace agora::catalog

#endif// AGORA_CATALOG_MATCHMAKING_HPP_
