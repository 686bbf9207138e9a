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

#include "builders.hpp"

#include <agora/asset/descriptor_io.hpp>
#include <agora/asset/pipeline.hpp>
#include <agora/asset/signature.hpp>
#include <agora/asset/validation.hpp>
#include <agora/metering/revenue_share.hpp>
#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>
#include <map>
#include <set>

using namespace agora;
using namespace agora::asset;
using agora::testing::algorithm;
using agora::testing::data_source;
using agora::testing::listings_schema;
using agora::testing::schema;

namespace {

AssetDescriptor bobPipeline() {
    auto crime = data_source("berlin-crime", Region::EU,
                             schema({{"district", ColumnType::Text}, {"crime_rate", ColumnType::Float64}}));
    auto joined = schema({{"district", ColumnType::Text}, {"crime_rate", ColumnType::Float64}, {"label", ColumnType::Float64}});
    auto augment = algorithm("join-augment", "augmentation", {crime.signature.output}, joined);
    auto net = algorithm("elastic-net", "regression", {joined}, Category{"model"});
    std::vector<AssetDescriptor> parts{crime, augment, net};
    std::vector<PipelineEdge> edges{{"berlin-crime", 0, "join-augment", 0}, {"join-augment", 0, "elastic-net", 0}};
    AssetDescriptor d = algorithm("bob-model", "regression", {}, Category{"model"});
    d.kind = AssetKind::Pipeline;
    d.graph = compose_pipeline(parts, edges);
    d.quality = {{"mae", 5400, "EUR"}};
    d.revenue_share = metering::RevenueShareTree{
        "bob-model", 1, {{"bob", {1, 2}, {}}, {"berlin-police", {1, 4}, {}}, {"sklearn-community", {1, 4}, {}}}};
    return d;
}

/// Independent acyclicity check by repeated removal of nodes without incoming edges.
bool isDag(const PipelineGraph& graph) {
    std::map<std::string, int> indegree;
    for (const auto& n : graph.nodes) {
        indegree[n.node_id];
    }
    for (const auto& e : graph.edges) {
        ++indegree[e.to_node];
    }
    std::size_t removed = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& [id, degree] : indegree) {
            if (degree == 0) {
                degree = -1;
                ++removed;
                progress = true;
                for (const auto& e : graph.edges) {
                    if (e.from_node == id) {
                        --indegree[e.to_node];
                    }
                }
            }
        }
    }
    return removed == graph.nodes.size();
}

}// namespace

TEST_CASE("pipeline without graph is rejected", "[validation]") {
    auto d = algorithm("p", "regression", {}, Category{"model"});
    d.kind = AssetKind::Pipeline;
    auto report = validate_descriptor(d);
    CHECK_FALSE(report.ok());
    CHECK(report.has("pipeline requires graph"));
}

TEST_CASE("data source priced per megabyte is valid", "[validation]") {
    auto d = data_source("berlin-listings", Region::EU, listings_schema());
    d.pricing = PayPerUse{Money::units(1), UsageUnit::PerMegabyte};
    CHECK(validate_descriptor(d).ok());
}

TEST_CASE("revenue shares must sum to one", "[validation]") {
    auto d = bobPipeline();
    d.revenue_share = metering::RevenueShareTree{"bob-model", 1, {{"a", {1, 2}, {}}, {"b", {1, 3}, {}}}};
    auto report = validate_descriptor(d);
    CHECK(report.has("shares sum 5/6"));
}

TEST_CASE("validation reports every broken field", "[validation]") {
    auto d = data_source("bad id!", Region::EU, Schema{});
    d.region.reset();
    d.name.clear();
    d.signature.goal = "astrology";
    d.quality = {{"mae", -1, "EUR"}};
    auto report = validate_descriptor(d);
    CHECK(report.has("URL-safe"));
    CHECK(report.has("must not be empty"));
    CHECK(report.has("region required"));
    CHECK(report.has("unknown goal"));
    CHECK(report.has("relational data source requires columns"));
    CHECK(report.has("non-negative"));
    CHECK_FALSE(is_valid_asset_id(""));
    CHECK(is_valid_asset_id("alice-berlin-price-model"));
    CHECK(is_known_goal("regression"));
    CHECK(goal_taxonomy().size() >= 20);
}

TEST_CASE("Bob's chain composes into a three-node DAG", "[pipeline]") {
    auto d = bobPipeline();
    REQUIRE(d.graph);
    CHECK(d.graph->nodes.size() == 3);
    CHECK(d.graph->edges.size() == 2);
    CHECK(isDag(*d.graph));
    CHECK(topological_order(*d.graph) == std::vector<std::string>{"berlin-crime", "join-augment", "elastic-net"});
    CHECK(validate_descriptor(d).ok());
}

TEST_CASE("edge between mismatching types is rejected", "[pipeline]") {
    auto source = data_source("numbers", Region::EU, schema({{"x", ColumnType::Float64}}));
    auto sink = algorithm("text-only", "classification", {schema({{"x", ColumnType::Text}})}, Category{"labels"});
    std::vector<AssetDescriptor> parts{source, sink};
    std::vector<PipelineEdge> edges{{"numbers", 0, "text-only", 0}};
    CHECK_THROWS_AS(compose_pipeline(parts, edges), TypeMismatch);
}

TEST_CASE("no-overlay data cannot reach a join", "[pipeline]") {
    auto left = data_source("left", Region::EU, schema({{"k", ColumnType::Int64}}));
    left.usage_constraints.push_back(planner::NoOverlay{});
    auto right = data_source("right", Region::EU, schema({{"k", ColumnType::Int64}}));
    auto join = algorithm("joiner", "join", {left.signature.output, right.signature.output}, schema({{"k", ColumnType::Int64}}));
    std::vector<AssetDescriptor> parts{left, right, join};
    std::vector<PipelineEdge> edges{{"left", 0, "joiner", 0}, {"right", 0, "joiner", 1}};
    try {
        compose_pipeline(parts, edges);
        FAIL("expected ConstraintViolation");
    } catch (const ConstraintViolation& e) {
        CHECK(e.asset_id() == "left");
    }
}

TEST_CASE("vendor-denied consumers cannot compose", "[pipeline]") {
    auto source = data_source("private-data", Region::EU, listings_schema());
    source.usage_constraints.push_back(planner::VendorDeny{{"competitor"}});
    std::vector<AssetDescriptor> parts{source};
    CHECK_THROWS_AS(compose_pipeline(parts, {}, std::string("competitor")), ConstraintViolation);
    CHECK_NOTHROW(compose_pipeline(parts, {}, std::string("charlie")));
}

TEST_CASE("structural faults are detected", "[pipeline]") {
    auto a = algorithm("a", "regression", {listings_schema()}, listings_schema());
    auto b = algorithm("b", "regression", {listings_schema()}, listings_schema());
    std::vector<AssetDescriptor> parts{a, b};
    std::vector<PipelineEdge> cycle{{"a", 0, "b", 0}, {"b", 0, "a", 0}};
    CHECK_THROWS_AS(compose_pipeline(parts, cycle), CycleDetected);
    std::vector<PipelineEdge> unbound{{"a", 0, "b", 0}};
    CHECK_THROWS_AS(compose_pipeline(parts, unbound), CompositionError);
    PipelineGraph dangling{{{"x", "x", ""}}, {{"x", 0, "ghost", 0}}};
    CHECK_FALSE(check_graph_structure(dangling).empty());
}

TEST_CASE("compositions pass an independent DAG and type check", "[pipeline][property]") {
    std::mt19937_64 rng(3);
    const Schema types[] = {listings_schema(), schema({{"v", ColumnType::Int64}})};
    int composed = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<AssetDescriptor> parts;
        std::vector<PipelineEdge> edges;
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        std::vector<int> outType;
        for (int i = 0; i < n; ++i) {
            int out = std::uniform_int_distribution<int>(0, 1)(rng);
            if (i == 0 || std::bernoulli_distribution(0.3)(rng)) {
                parts.push_back(data_source(fmt::format("n{}", i), Region::EU, types[out]));
            } else {
                int from = std::uniform_int_distribution<int>(0, i - 1)(rng);
                int in = std::bernoulli_distribution(0.85)(rng) ? outType[static_cast<std::size_t>(from)] : 1 - outType[static_cast<std::size_t>(from)];
                parts.push_back(algorithm(fmt::format("n{}", i), "feature-engineering", {types[in]}, types[out]));
                edges.push_back({fmt::format("n{}", from), 0, fmt::format("n{}", i), 0});
            }
            outType.push_back(out);
        }
        try {
            auto graph = compose_pipeline(parts, edges);
            ++composed;
            CHECK(isDag(graph));
            CHECK(check_graph_structure(graph).empty());
            std::map<std::string, const AssetDescriptor*> byId;
            for (const auto& p : parts) {
                byId[p.id] = &p;
            }
            for (const auto& e : graph.edges) {
                CHECK(canonical_io_type(byId[e.from_node]->signature.output)
                      == canonical_io_type(byId[e.to_node]->signature.inputs[e.to_input]));
            }
        } catch (const TypeMismatch&) {
        }
    }
    CHECK(composed > 100);
}

TEST_CASE("equivalent regressors share a signature", "[signature]") {
    auto input = listings_schema();
    auto lr = algorithm("linear-regression", "regression", {input}, Category{"model"});
    auto nn = algorithm("neural-network", "regression", {input}, Category{"model"});
    nn.provider = "someone-else";
    nn.quality = {{"mae", 10, "EUR"}};
    nn.pricing = PayOnce{Money::units(99)};
    CHECK(logical_signature(lr) == logical_signature(nn));
    auto classifier = algorithm("classifier", "classification", {input}, Category{"model"});
    CHECK(logical_signature(lr) != logical_signature(classifier));
}

TEST_CASE("signature ignores document key order", "[signature]") {
    auto d = algorithm("lr", "regression", {listings_schema()}, Category{"model"});
    auto doc = nlohmann::json::parse(serialize_descriptor(d));
    std::string permuted = "{";
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        keys.push_back(it.key());
    }
    std::reverse(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        permuted += (i ? "," : "") + nlohmann::json(keys[i]).dump() + ":" + doc[keys[i]].dump();
    }
    permuted += "}";
    CHECK(logical_signature(parse_descriptor(permuted)) == logical_signature(d));
}

TEST_CASE("pipeline descriptor round-trips", "[descriptor]") {
    auto d = bobPipeline();
    auto text = serialize_descriptor(d);
    auto back = parse_descriptor(text);
    CHECK(back == d);
    CHECK(serialize_descriptor(back) == text);
}

TEST_CASE("missing id is a schema error naming the field", "[descriptor]") {
    auto doc = nlohmann::json::parse(serialize_descriptor(data_source("x", Region::EU, listings_schema())));
    doc.erase("id");
    try {
        parse_descriptor(doc.dump());
        FAIL("expected SchemaError");
    } catch (const DescriptorSchemaError& e) {
        CHECK(e.field() == "id");
    }
    CHECK_THROWS_AS(parse_descriptor("{not json"), DescriptorSyntaxError);
}

TEST_CASE("generated descriptor corpus round-trips byte-stably", "[descriptor][property]") {
    std::mt19937_64 rng(99);
    std::string lines;
    for (int i = 0; i < 60; ++i) {
        auto d = agora::testing::random_descriptor(rng, i);
        REQUIRE(validate_descriptor(d).ok());
        auto once = serialize_descriptor(d);
        auto back = parse_descriptor(once);
        CHECK(back == d);
        CHECK(serialize_descriptor(back) == once);
        lines += once + "\n\n";
    }
    CHECK(parse_descriptor_lines(lines).size() == 60);
}

TEST_CASE("pricing documents accept dollar strings and micro-units", "[descriptor]") {
    auto a = pricing_from_json(nlohmann::json::parse(R"({"model":"PayPerUse","rate":"$1.00","unit":"PerThousandCalls"})"), "p");
    auto b = pricing_from_json(nlohmann::json::parse(R"({"model":"PayPerUse","rate":1000000,"unit":"PerThousandCalls"})"), "p");
    CHECK(a == b);
    CHECK(nominal_price(a) == Money::units(1));
    CHECK_THROWS_AS(pricing_from_json(nlohmann::json::parse(R"({"model":"Barter"})"), "p"), DescriptorSchemaError);
}
