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

#include "commands.hpp"

#include <agora/asset/descriptor_io.hpp>
#include <agora/catalog/market_index.hpp>
#include <agora/catalog/matchmaking.hpp>
#include <algorithm>
#include <cctype>
#include <fmt/format.h>
#include <fstream>

namespace agora::cli {

namespace {

std::string lower(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return text;
}

}// namespace

catalog::QualityBound parse_bound(const std::string& text) {
    for (auto [token, kind] : {std::pair{"<=", catalog::BoundKind::AtMost}, std::pair{">=", catalog::BoundKind::AtLeast}}) {
        auto pos = text.find(token);
        if (pos == std::string::npos) {
            continue;
        }
        std::string metric = text.substr(0, pos);
        std::string value = text.substr(pos + 2);
        try {
            std::size_t used = 0;
            double v = std::stod(value, &used);
            if (metric.empty() || used != value.size()) {
                break;
            }
            return {metric, kind, v};
        } catch (const std::exception&) {
            break;
        }
    }
    throw UsageError("InvalidArgument", "--bound expects metric<=value or metric>=value, got '" + text + "'");
}

int catalog_publish(Context& ctx, const PublishArgs& args) {
    const Config& config = ctx.config();
    auto markets = load_markets(config);
    std::size_t target = 0;
    if (!args.market.empty()) {
        auto it = std::find_if(markets.begin(), markets.end(), [&](const auto& m) { return m.name() == args.market; });
        if (it == markets.end()) {
            throw UsageError("UnknownMarketplace", args.market);
        }
        target = static_cast<std::size_t>(it - markets.begin());
    }
    auto descriptors = asset::parse_descriptor_lines(read_file(args.file));
    for (const auto& d : descriptors) {
        markets[target].publish(d);
    }
    auto index = catalog::aggregate(markets);

    if (!args.dry_run) {
        std::ofstream file(config.marketplaces[target].path, std::ios::app | std::ios::binary);
        if (!file) {
            throw AgoraError("WriteFailed", config.marketplaces[target].path.string());
        }
        for (const auto& d : descriptors) {
            file << asset::serialize_descriptor(d) << '\n';
        }
    }
    for (const auto& d : descriptors) {
        ctx.out << fmt::format("published {} -> {}{}\n", d.id, markets[target].name(), args.dry_run ? " (dry run)" : "");
    }
    ctx.out << fmt::format("index: {} assets, {} signature classes\n", index.size(), index.by_signature().size());
    return 0;
}

int catalog_search(Context& ctx, const SearchArgs& args) {
    auto markets = load_markets(ctx.config());
    auto index = catalog::aggregate(markets);
    std::optional<asset::AssetKind> kind;
    if (!args.kind.empty()) {
        kind = asset::parse_asset_kind(args.kind);
        if (!kind) {
            throw UsageError("InvalidArgument", "unknown asset kind '" + args.kind + "'");
        }
    }
    std::size_t hits = 0;
    for (const auto& [id, d] : index.assets()) {
        auto words = catalog::keywords_of(d);
        bool match = std::all_of(args.keywords.begin(), args.keywords.end(),
                                 [&](const std::string& k) { return words.contains(lower(k)); });
        if (!match || (!args.goal.empty() && d.signature.goal != args.goal) || (kind && d.kind != *kind)) {
            continue;
        }
        ++hits;
        ctx.out << fmt::format("{:<28} {:<11} {:<20} {:<17} {:>10} equivalents={}\n", id, asset::to_string(d.kind),
                               d.signature.goal, index.provenance().at(id), asset::nominal_price(d.pricing).to_string(),
                               index.equivalents(id).size());
    }
    ctx.out << fmt::format("{} asset(s)\n", hits);
    return 0;
}

int catalog_match(Context& ctx, const MatchArgs& args) {
    const Config& config = ctx.config();
    auto markets = load_markets(config);
    auto index = catalog::aggregate(markets);
    catalog::Request request;
    request.goal = args.goal;
    request.keywords = args.keywords;
    for (const auto& b : args.bounds) {
        request.quality_bounds.push_back(parse_bound(b));
    }
    if (!args.budget.empty()) {
        request.budget = parse_money_option(args.budget, "--budget");
    }
    if (!args.output_category.empty()) {
        request.required_output = asset::Category{args.output_category};
    }
    auto result = catalog::match_request(index, request, config.match_weights);
    std::size_t shown = std::min(args.limit, result.ranked.size());
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& c = result.ranked[i];
        ctx.out << fmt::format("{:>2}. {:<44} score={:.6f} price={} equivalents={}\n", i + 1, c.key, c.score,
                               c.price.to_string(), c.equivalents.size());
    }
    ctx.out << fmt::format("{} match(es)\n", result.ranked.size());
    return 0;
}

}// namespace agora::cli
