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

#include <agora/asset/pipeline.hpp>
#include <agora/asset/signature.hpp>
#include <agora/catalog/matchmaking.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>

namespace agora::catalog {

namespace {

std::string lower(std::string text) {
    for (auto& c : text) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return text;
}

bool boundsHold(const AssetDescriptor& d, const Request& r) {
    for (const auto& bound : r.quality_bounds) {
        const auto* metric = d.metric(bound.metric);
        if (metric == nullptr) {
            return false;
        }
        bool ok = bound.kind == BoundKind::AtMost ? metric->value <= bound.value : metric->value >= bound.value;
        if (!ok) {
            return false;
        }
    }
    return true;
}

bool goalAndOutputMatch(const AssetDescriptor& d, const Request& r) {
    if (d.signature.goal != r.goal) {
        return false;
    }
    return !r.required_output
        || asset::canonical_io_type(d.signature.output) == asset::canonical_io_type(*r.required_output);
}

bool keywordsCovered(const std::set<std::string>& available, const Request& r) {
    return std::all_of(r.keywords.begin(), r.keywords.end(),
                       [&](const std::string& k) { return available.contains(lower(k)); });
}

bool withinBudget(Money price, const Request& r) { return !r.budget || price <= *r.budget; }

double score(double slack, Money price, const MatchWeights& w) {
    double units = static_cast<double>(price.micro_units) / static_cast<double>(Money::kMicrosPerUnit);
    return w.quality_slack * slack + w.price / (1.0 + units);
}

}// namespace

double quality_slack(const AssetDescriptor& d, const Request& r) {
    if (r.quality_bounds.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& bound : r.quality_bounds) {
        const auto* metric = d.metric(bound.metric);
        if (metric == nullptr) {
            continue;
        }
        double scale = std::max(std::abs(bound.value), 1e-9);
        total += bound.kind == BoundKind::AtMost ? (bound.value - metric->value) / scale
                                                 : (metric->value - bound.value) / scale;
    }
    return total / static_cast<double>(r.quality_bounds.size());
}

bool satisfies(const AssetDescriptor& d, const Request& r) {
    return goalAndOutputMatch(d, r) && boundsHold(d, r) && keywordsCovered(keywords_of(d), r);
}

MatchResult match_request(const MarketIndex& index, const Request& request, const MatchWeights& weights) {
    if (request.goal.empty()) {
        throw UsageError("InvalidRequest", "goal must not be empty");
    }
    for (const auto& bound : request.quality_bounds) {
        if (!std::isfinite(bound.value)) {
            throw UsageError("InvalidRequest", "bound on " + bound.metric + " is not finite");
        }
    }
    MatchResult result;
    auto goalIt = index.by_goal().find(request.goal);
    if (goalIt == index.by_goal().end()) {
        return result;
    }
    for (const auto& id : goalIt->second) {
        const auto& algo = *index.find(id);
        if (!goalAndOutputMatch(algo, request) || !boundsHold(algo, request)) {
            continue;
        }
        double slack = quality_slack(algo, request);
        Money price = asset::nominal_price(algo.pricing);
        if (withinBudget(price, request) && keywordsCovered(keywords_of(algo), request)) {
            result.ranked.push_back({id, id, index.equivalents(id), price, score(slack, price, weights)});
        }
        if (algo.kind != asset::AssetKind::Algorithm || algo.signature.inputs.size() != 1) {
            continue;
        }
        auto feeders = index.by_output().find(asset::canonical_io_type(algo.signature.inputs.front()));
        if (feeders == index.by_output().end()) {
            continue;
        }
        for (const auto& dataId : feeders->second) {
            const auto& data = *index.find(dataId);
            if (data.kind != asset::AssetKind::DataSource) {
                continue;
            }
            Money total = asset::nominal_price(data.pricing) + price;
            auto words = keywords_of(algo);
            auto dataWords = keywords_of(data);
            words.insert(dataWords.begin(), dataWords.end());
            if (!withinBudget(total, request) || !keywordsCovered(words, request)) {
                continue;
            }
            std::vector<AssetDescriptor> parts{data, algo};
            std::vector<asset::PipelineEdge> edges{{dataId, 0, id, 0}};
            try {
                auto graph = asset::compose_pipeline(parts, edges);
                result.ranked.push_back(
                    {std::move(graph), dataId + "+" + id, index.equivalents(id), total, score(slack, total, weights)});
            } catch (const asset::CompositionError&) {
                // Usage constraints rule this pairing out.
            }
        }
    }
    std::sort(result.ranked.begin(), result.ranked.end(), [](const MatchCandidate& a, const MatchCandidate& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.key < b.key;
    });
    return result;
}

}// namespace agora::catalog
