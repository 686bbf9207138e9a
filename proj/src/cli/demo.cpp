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

#include <agora/asset/pipeline.hpp>
#include <agora/asset/signature.hpp>
#include <agora/catalog/matchmaking.hpp>
#include <agora/metering/invoice.hpp>
#include <agora/metering/revenue_share.hpp>
#include <agora/metering/settlement.hpp>
#include <agora/metering/tracker.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <sstream>

namespace agora::cli {

namespace {

using asset::AssetDescriptor;
using asset::PipelineEdge;

/// 2026-01-01T00:00:00Z; every demo timestamp is an offset from it.
constexpr metering::Timestamp kEpoch = 1767225600;
constexpr double kTrainingRows = 50'000;
constexpr std::int64_t kPredictionCalls = 2'500;

class Narrator {
  public:
    Narrator(std::ostream* out, std::string persona) : out(out), persona(std::move(persona)) {}
    void step(const std::string& text) {
        if (out) {
            *out << fmt::format("[{} {}] {}\n", persona, ++count, text);
        }
    }
    void line(const std::string& text) {
        if (out) {
            *out << "  " << text << '\n';
        }
    }

  private:
    std::ostream* out;
    std::string persona;
    int count = 0;
};

struct World {
    std::vector<catalog::Marketplace> markets;
    std::vector<execution::NodeExecutorInfo> nodes;
    execution::AuthorityRegistry authorities;
    execution::VariantClasses variants;

    catalog::MarketIndex index() const { return catalog::aggregate(markets); }

    catalog::Marketplace& community() {
        auto it = std::find_if(markets.begin(), markets.end(), [](const auto& m) { return m.name() == "community"; });
        return it == markets.end() ? markets.back() : *it;
    }

    AssetDescriptor require(const std::string& id) const {
        for (const auto& m : markets) {
            if (auto d = m.get(id)) {
                return *d;
            }
        }
        throw catalog::UnknownAsset(id);
    }
};

metering::RevenueShareTree share(std::string who, Rational part, std::vector<metering::RevenueShareTree> children = {}) {
    return {std::move(who), part, std::move(children)};
}

std::string joined(const std::vector<std::string>& items, std::string_view sep = ", ") {
    std::string out;
    for (const auto& item : items) {
        out += (out.empty() ? "" : std::string(sep)) + item;
    }
    return out;
}

AssetDescriptor composedModel(const std::string& id, const std::string& name, const std::string& provider, double mae,
                              asset::PipelineGraph graph, metering::RevenueShareTree revenue) {
    AssetDescriptor d;
    d.id = id;
    d.kind = asset::AssetKind::Pipeline;
    d.name = name;
    d.provider = provider;
    d.version = "1.0";
    d.signature = {"regression", {}, asset::Category{"model"}};
    d.quality = {{"mae", mae, "EUR"}};
    d.pricing = asset::PayPerUse{Money::units(1), asset::UsageUnit::PerThousandCalls};
    d.region = Region::EU;
    d.revenue_share = std::move(revenue);
    d.graph = std::move(graph);
    return d;
}

asset::PipelineGraph compose(const World& world, const std::vector<std::string>& ids, const std::vector<PipelineEdge>& edges,
                             const std::string& consumer) {
    std::vector<AssetDescriptor> parts;
    for (const auto& id : ids) {
        parts.push_back(world.require(id));
    }
    return asset::compose_pipeline(parts, edges, consumer);
}

void bob(World& world, Narrator& say) {
    auto index = world.index();
    say.step("searches all marketplaces for \"crime berlin\"");
    for (const auto& [id, d] : index.assets()) {
        auto words = catalog::keywords_of(d);
        if (words.contains("crime") && words.contains("berlin")) {
            say.line(fmt::format("found {} ({}, provider {}, {})", id, index.provenance().at(id), d.provider,
                                 asset::nominal_price(d.pricing).to_string()));
        }
    }

    say.step("augments real-estate-pricing with crime_rate and adds elastic-net");
    auto graph = compose(world, {"real-estate-pricing", "berlin-crime-rates", "district-join", "elastic-net"},
                         {{"real-estate-pricing", 0, "district-join", 0},
                          {"berlin-crime-rates", 0, "district-join", 1},
                          {"district-join", 0, "elastic-net", 0}},
                         "bob");
    say.line("pipeline types check; execution order: " + joined(asset::topological_order(graph), " -> "));

    say.step("trains the model and records its quality");
    say.line("elastic-net on Berlin listings: mae = 5400 EUR");

    say.step("publishes the composed asset");
    auto model = composedModel("bob-berlin-price-model", "Berlin apartment price model (elastic-net)", "bob", 5400,
                               std::move(graph),
                               share("bob-berlin-price-model", 1,
                                     {share("bob", {1, 2}), share("city-of-berlin", {1, 5}), share("berlin-police", {1, 10}),
                                      share("ml-hub-labs", {1, 10}), share("sklearn-community", {1, 10})}));
    auto id = world.community().publish(model);
    auto after = world.index();
    say.line(fmt::format("published {} -> {} at {} per 1000 calls", id, after.provenance().at(id),
                         asset::nominal_price(model.pricing).to_string()));
    say.line(fmt::format("market index now holds {} assets in {} signature classes", after.size(),
                         after.by_signature().size()));
}

void alice(World& world, Narrator& say) {
    auto index = world.index();
    say.step("looks for Berlin regression assets");
    for (const auto& [id, d] : index.assets()) {
        if (d.signature.goal == "regression" && d.kind == asset::AssetKind::Pipeline
            && catalog::keywords_of(d).contains("berlin")) {
            const auto* mae = d.metric("mae");
            say.line(fmt::format("{} by {} (mae {} EUR)", id, d.provider, mae ? fmt::format("{:.0f}", mae->value) : "?"));
        }
    }

    say.step("inspects bob-berlin-price-model");
    auto bobModel = world.require("bob-berlin-price-model");
    say.line("pipeline: " + joined(asset::topological_order(*bobModel.graph), " -> "));

    say.step("improves it with feature engineering and linear-regression");
    auto graph = compose(world, {"real-estate-pricing", "berlin-crime-rates", "district-join", "feature-engineering-kit",
                                 "linear-regression"},
                         {{"real-estate-pricing", 0, "district-join", 0},
                          {"berlin-crime-rates", 0, "district-join", 1},
                          {"district-join", 0, "feature-engineering-kit", 0},
                          {"feature-engineering-kit", 0, "linear-regression", 0}},
                         "alice");
    say.line("pipeline types check; execution order: " + joined(asset::topological_order(graph), " -> "));
    say.line("mae improves from 5400 EUR to 4300 EUR");

    say.step("contributes the improved asset back");
    auto model = composedModel(
        "alice-berlin-price-model", "Berlin apartment price model (engineered features)", "alice", 4300, std::move(graph),
        share("alice-berlin-price-model", 1,
              {share("alice", {2, 5}), share("feature-forge", {1, 10}), share("ml-hub-labs", {1, 10}),
               share("bob-berlin-price-model", {2, 5},
                     {share("bob", {1, 2}), share("city-of-berlin", {1, 4}), share("berlin-police", {1, 4})})}));
    auto id = world.community().publish(model);
    auto after = world.index();
    say.line(fmt::format("published {} -> {}", id, after.provenance().at(id)));
    auto equivalents = after.equivalents("linear-regression");
    say.line("equivalent implementations of linear-regression: "
             + joined(std::vector<std::string>(equivalents.begin(), equivalents.end())));

    say.step("previews the revenue split of a $2.50 payment");
    for (const auto& [who, amount] : metering::split_payment(Money::micros(2'500'000), *model.revenue_share)) {
        say.line(fmt::format("{:<16} {:>8}", who, amount.to_string()));
    }
}

std::vector<execution::Slot> trainingSlots(const AssetDescriptor& pipeline, const World& world) {
    std::vector<execution::Slot> slots;
    for (const auto& nodeId : asset::topological_order(*pipeline.graph)) {
        const auto& node = *std::find_if(pipeline.graph->nodes.begin(), pipeline.graph->nodes.end(),
                                         [&](const auto& n) { return n.node_id == nodeId; });
        auto algo = world.require(node.asset_ref);
        if (algo.kind != asset::AssetKind::Algorithm) {
            continue;
        }
        const auto* input = std::get_if<asset::Schema>(&algo.signature.inputs.front());
        execution::Slot slot;
        slot.label = fmt::format("{}:{}@EU({})", slots.size(), algo.signature.goal, algo.id);
        slot.class_key = asset::canonical_signature(algo.signature);
        slot.rows = kTrainingRows;
        slot.bytes = kTrainingRows * 8.0 * static_cast<double>(input ? input->columns.size() : 1);
        slot.region = Region::EU;
        slot.capability = algo.signature.goal == "regression" ? "ml" : "etl";
        slots.push_back(std::move(slot));
    }
    return slots;
}

void printBindings(const execution::ExecutionPlan& plan, Narrator& say) {
    for (const auto& b : plan.bindings) {
        say.line(fmt::format("{:<50} {:<24} {:<10} {:>7.1f}s {:>8}", b.slot.label, b.variant.asset, b.node_id, b.runtime,
                             b.price.to_string()));
    }
    say.line(fmt::format("total runtime {:.1f}s, price {}", plan.estimated_runtime, plan.estimated_price.to_string()));
}

void charlie(World& world, Narrator& say) {
    auto index = world.index();
    say.step("asks for regression assets with mae <= 5000 EUR");
    catalog::Request request;
    request.goal = "regression";
    request.quality_bounds = {{"mae", catalog::BoundKind::AtMost, 5000}};
    auto matches = catalog::match_request(index, request);
    for (const auto& c : matches.ranked) {
        say.line(fmt::format("match {} (score {:.4f}, {} per 1000 calls)", c.key, c.score, c.price.to_string()));
    }
    for (const auto& [id, d] : index.assets()) {
        const auto* mae = d.metric("mae");
        if (d.signature.goal == "regression" && mae && mae->value > 5000) {
            say.line(fmt::format("rejected {} (mae {:.0f} EUR)", id, mae->value));
        }
    }
    if (matches.ranked.empty()) {
        throw AgoraError("NoMatch", "no asset satisfies mae <= 5000");
    }
    auto chosen = world.require(matches.ranked.front().key);

    say.step("checks which EU nodes are certified for trusted execution");
    asset::CertificateRequirement tee{"tee", {"berlin-trust-center"}};
    for (const auto& node : world.nodes) {
        if (node.region != Region::EU || !node.capabilities.contains("ml")) {
            continue;
        }
        bool ok = execution::verify_certificates(node, std::span(&tee, 1), kEpoch, world.authorities);
        say.line(fmt::format("{:<14} tee={}", node.node_id, ok ? "verified" : "not verified"));
    }

    auto slots = trainingSlots(chosen, world);
    say.step(fmt::format("plans training of {} on {:.0f} rows without a budget", chosen.id, kTrainingRows));
    printBindings(execution::bind_slots(slots, world.variants, world.nodes, std::nullopt, world.authorities, kEpoch), say);

    const Money budget = Money::micros(1'500'000);
    say.step("applies the budget of " + budget.to_string());
    auto plan = execution::bind_slots(slots, world.variants, world.nodes, budget, world.authorities, kEpoch);
    printBindings(plan, say);
    try {
        (void)execution::bind_slots(slots, world.variants, world.nodes, Money::micros(500'000), world.authorities, kEpoch);
    } catch (const execution::BudgetInfeasible& e) {
        say.line(fmt::format("a $0.50 budget would be infeasible: cheapest assignment costs {}", e.minimum_price().to_string()));
    }

    say.step("runs the training and serves predictions; nodes report usage");
    std::vector<metering::UsageEvent> events;
    metering::Timestamp at = kEpoch;
    for (const auto& b : plan.bindings) {
        at += 60;
        events.push_back({b.variant.asset, metering::Metric::Calls, static_cast<std::int64_t>(b.slot.rows), at, b.node_id, {}});
        events.push_back({b.node_id, metering::Metric::Seconds, static_cast<std::int64_t>(std::ceil(b.runtime)), at, b.node_id, {}});
    }
    const std::string servingNode = plan.bindings.back().node_id;
    for (int batch = 0; batch < 5; ++batch) {
        at += 60;
        events.push_back({chosen.id, metering::Metric::Calls, kPredictionCalls / 5, at, servingNode, {}});
    }
    asset::CertificateRequirement tracking{"usage-tracking", {"berlin-trust-center"}};
    std::map<std::string, const execution::NodeExecutorInfo*> nodeById;
    for (const auto& node : world.nodes) {
        nodeById[node.node_id] = &node;
    }
    metering::Tracker tracker(60, [&](const std::string& node) {
        auto it = nodeById.find(node);
        return it != nodeById.end()
            && execution::verify_certificates(*it->second, std::span(&tracking, 1), kEpoch, world.authorities);
    });
    for (const auto& e : events) {
        tracker.track(e);
    }
    auto counters = tracker.flush_window(at + 60);
    for (const auto& c : counters) {
        say.line(fmt::format("window {:>+5}s {:<26} {:<8} {:>7}", c.window_start - kEpoch, c.asset, metering::to_string(c.metric),
                             c.total));
    }

    say.step("receives the invoice");
    std::map<std::string, asset::PricingModel> pricing;
    std::map<std::string, std::string> payee;
    pricing[chosen.id] = chosen.pricing;
    payee[chosen.id] = chosen.provider;
    for (const auto& b : plan.bindings) {
        pricing[b.variant.asset] = b.variant.price;
        payee[b.variant.asset] = world.require(b.variant.asset).provider;
        pricing[b.node_id] = nodeById.at(b.node_id)->price;
        payee[b.node_id] = b.node_id;
    }
    auto invoice = metering::make_invoice(counters, pricing, kEpoch, at + 60);
    std::string text = invoice.to_text();
    for (std::size_t start = 0; start < text.size();) {
        auto end = text.find('\n', start);
        say.line(text.substr(start, end - start));
        start = end + 1;
    }

    say.step("pays each provider");
    metering::InMemoryBackend backend;
    backend.set_balance("charlie", Money::units(10));
    metering::LedgerLog ledger;
    std::vector<metering::PaymentTxn> txns;
    for (const auto& line : invoice.lines) {
        txns.push_back({fmt::format("inv-{}-{}", kEpoch, txns.size() + 1), "charlie", payee.at(line.asset), line.amount, {}});
    }
    auto receipts = metering::settle(txns, backend, ledger);
    for (std::size_t i = 0; i < txns.size(); ++i) {
        say.line(fmt::format("{:<22} -> {:<18} {:>8} {}", txns[i].txn_id, txns[i].payee, txns[i].amount.to_string(),
                             metering::to_string(receipts[i].status)));
    }
    say.line("charlie's remaining balance: " + backend.balance("charlie").to_string());

    say.step("sees the license payment split along the asset lineage");
    Money license;
    for (const auto& line : invoice.lines) {
        if (line.asset == chosen.id) {
            license += line.amount;
        }
    }
    for (const auto& [who, amount] : metering::split_payment(license, *chosen.revenue_share)) {
        say.line(fmt::format("{:<16} {:>8}", who, amount.to_string()));
    }
}

}// namespace

int demo_command(Context& ctx, const std::string& persona) {
    const Config& config = ctx.config();
    World world{load_markets(config), load_nodes(config), load_authorities(config), load_variants(config)};
    std::ostringstream buffer;
    Narrator quietBob(nullptr, "bob");
    Narrator quietAlice(nullptr, "alice");
    buffer << fmt::format("== demo {} ==\n", persona);
    if (persona == "bob") {
        Narrator say(&buffer, "bob");
        bob(world, say);
    } else if (persona == "alice") {
        bob(world, quietBob);
        buffer << "(replayed: bob published bob-berlin-price-model)\n";
        Narrator say(&buffer, "alice");
        alice(world, say);
    } else if (persona == "charlie") {
        bob(world, quietBob);
        alice(world, quietAlice);
        buffer << "(replayed: bob and alice published their Berlin price models)\n";
        Narrator say(&buffer, "charlie");
        charlie(world, say);
    } else {
        throw UsageError("InvalidArgument", "unknown persona '" + persona + "'");
    }
    ctx.out << buffer.str();
    return 0;
}

}// namespace agora::cli
