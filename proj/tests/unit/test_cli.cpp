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

#include "oracles.hpp"

#include <agora/cli/app.hpp>
#include <agora/cli/config.hpp>
#include <catch_amalgamated.hpp>
#include <fstream>
#include <unistd.h>
#include <nlohmann/json.hpp>

using namespace agora;
using namespace agora::cli;
namespace fs = std::filesystem;

namespace {

CommandOutput invoke(std::vector<std::string> args) { return run_command(args); }

std::string data(const std::string& relative) { return (testing::source_dir() / "data" / relative).string(); }

std::string golden(const std::string& name) { return testing::read_text(testing::source_dir() / "tests/golden" / name); }

struct TempDir {
    fs::path path = fs::temp_directory_path() / fs::path("agora-cli-" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return path / name;
    }
};

}// namespace

TEST_CASE("absent optional fields take documented defaults", "[config]") {
    TempDir dir;
    dir.write("market.ndjson", "");
    auto doc = nlohmann::json::parse(R"({"marketplaces": [{"name": "m", "path": "market.ndjson"}]})");
    std::vector<std::string> defaulted;
    auto config = config_from_json(doc, dir.path, &defaulted);
    CHECK(config.marketplaces.at(0).path == dir.path / "market.ndjson");
    CHECK(config.window_seconds == 60);
    CHECK(config.default_region == Region::EU);
    CHECK(config.cost_model.cpu_cost_per_row == 0.001);
    CHECK(config.cost_model.filter_selectivity_default == 0.1);
    CHECK(config.cost_model.default_ship_cost_per_byte == 0.01);
    CHECK(config.match_weights.quality_slack == 0.5);
    auto has = [&](const std::string& entry) {
        return std::find(defaulted.begin(), defaulted.end(), entry) != defaulted.end();
    };
    CHECK(has("window_seconds=60"));
    CHECK(has("default_region=EU"));
    CHECK(has("nodes=none"));
    CHECK(has("cost_model=defaults"));
}

TEST_CASE("invalid configurations name the offending field", "[config]") {
    TempDir dir;
    dir.write("market.ndjson", "");
    auto field = [&](const std::string& text) {
        try {
            config_from_json(nlohmann::json::parse(text), dir.path);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("<accepted>");
    };
    const std::string market = R"("marketplaces": [{"name": "m", "path": "market.ndjson"}])";
    CHECK(field("{" + market + R"(, "cost_model": {"ship_cost_per_byte": [{"from": "EU", "to": "NA", "rate": -0.5}]}})")
          == "cost_model.ship_cost_per_byte[0].rate");
    CHECK(field("{" + market + R"(, "colour": "blue"})") == "colour");
    CHECK(field("{" + market + R"(, "window_seconds": 0})") == "window_seconds");
    CHECK(field("{" + market + R"(, "default_region": "MARS"})") == "default_region");
    CHECK(field("{" + market + R"(, "nodes": "missing.ndjson"})") == "nodes");
    CHECK(field(R"({"marketplaces": []})") == "marketplaces");
    CHECK(field("{" + market + R"(, "cost_model": {"filter_selectivity_default": 1.5}})") == "cost_model");
}

TEST_CASE("configurations round-trip through JSON", "[config]") {
    for (const auto* path : {"demo/config.json", "tpch_geo/config.json"}) {
        auto config = load_config(data(path));
        CHECK(config_from_json(to_json(config), "/") == config);
    }
    CHECK_THROWS_AS(load_config(data("nope.json")), ConfigError);
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(invoke({}).exit_code == 2);
    CHECK(invoke({"frobnicate"}).exit_code == 2);
    CHECK(invoke({"plan"}).exit_code == 2);
    CHECK(invoke({"plan", "--sql", data("missing.sql")}).exit_code == 2);
    CHECK(invoke({"demo", "bob"}).exit_code == 2);
    CHECK(invoke({"--config", data("demo/config.json"), "catalog", "match", "--goal", ""}).exit_code == 2);
    CHECK(invoke({"escrow", "simulate", "--drop", "1.5"}).exit_code == 2);

    TempDir dir;
    auto broken = dir.write("broken.sql", "SELECT FROM;");
    auto result = invoke({"plan", "--sql", broken.string()});
    CHECK(result.exit_code == 2);
    CHECK(result.out.empty());
    CHECK(result.err.find("1:8") != std::string::npos);
}

TEST_CASE("an unsatisfiable policy set reports NC-impossible", "[cli]") {
    auto result = invoke({"plan", "--sql", data("scenarios/all-deny.sql")});
    CHECK(result.exit_code == 1);
    CHECK(result.out == "compliant=NC-impossible\n");
}

TEST_CASE("plan output matches the golden file", "[cli][golden]") {
    auto result = invoke({"--config", data("tpch_geo/config.json"), "plan", "--sql", data("tpch_geo/q10.sql")});
    CHECK(result.exit_code == 0);
    CHECK(result.out == golden("tpch_geo_q10_plan.txt"));
    CHECK(result.out.find("SHIP NA->EU") == std::string::npos);

    auto free = invoke({"--config", data("tpch_geo/config.json"), "plan", "--sql", data("tpch_geo/q10.sql"), "--ignore-policies"});
    CHECK(free.exit_code == 0);
    CHECK(free.out.find("violation SHIP NA->EU") != std::string::npos);
    CHECK(free.out.find("compliant=NC") != std::string::npos);

    auto explained = invoke({"--config", data("tpch_geo/config.json"), "plan", "--sql", data("tpch_geo/q10.sql"), "--explain"});
    CHECK(explained.out.find("[rows=") != std::string::npos);
}

TEST_CASE("billing the sample usage log", "[cli]") {
    auto result = invoke({"bill", "--usage", data("billing/usage-2500.ndjson"), "--pricing", data("billing/pricing.json"),
                         "--json"});
    REQUIRE(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.out);
    CHECK(doc["total_micros"] == 2'500'000);
    CHECK(invoke({"bill", "--usage", data("billing/usage-2500.ndjson")}).exit_code == 2);
    TempDir dir;
    auto empty = dir.write("pricing.json", "{}");
    auto unpriced = invoke({"bill", "--usage", data("billing/usage-2500.ndjson"), "--pricing", empty.string()});
    CHECK(unpriced.exit_code == 1);
    CHECK(unpriced.err.find("MissingPricing") != std::string::npos);
}

TEST_CASE("escrow simulation", "[cli]") {
    auto clean = invoke({"--seed", "5", "escrow", "simulate", "--drop", "0.2", "--summary-only"});
    CHECK(clean.exit_code == 0);
    CHECK(clean.out.find("Completed") != std::string::npos);
    auto tampered = invoke({"--seed", "5", "escrow", "simulate", "--tamper", "0", "--summary-only"});
    CHECK(tampered.exit_code == 0);
    CHECK(tampered.out.find("Aborted(DigestMismatch)") != std::string::npos);
    CHECK(invoke({"--seed", "5", "escrow", "simulate", "--drop", "0.2"}).out
          == invoke({"--seed", "5", "escrow", "simulate", "--drop", "0.2"}).out);
}

TEST_CASE("catalog commands", "[cli]") {
    const auto config = data("demo/config.json");
    auto search = invoke({"--config", config, "catalog", "search", "berlin", "crime"});
    CHECK(search.exit_code == 0);
    CHECK(search.out.find("berlin-crime-rates") != std::string::npos);
    auto match = invoke({"--config", config, "catalog", "match", "--goal", "regression", "--bound", "mae<=5000"});
    CHECK(match.exit_code == 0);
    CHECK(invoke({"--config", config, "catalog", "match", "--goal", "regression", "--bound", "mae~5"}).exit_code == 2);
}

TEST_CASE("run executes a query over generated data", "[cli]") {
    auto result = invoke({"--seed", "3", "--config", data("tpch_geo/config.json"), "run", "--sql", data("tpch_geo/q3.sql"),
                         "--max-rows", "50"});
    CHECK(result.exit_code == 0);
    CHECK(invoke({"--seed", "3", "--config", data("tpch_geo/config.json"), "run", "--sql", data("tpch_geo/q3.sql"), "--max-rows",
                 "50"}).out
          == result.out);
}

TEST_CASE("persona demos match their golden transcripts", "[cli][golden]") {
    for (const auto* persona : {"bob", "alice", "charlie"}) {
        auto result = invoke({"--config", data("demo/config.json"), "demo", persona});
        INFO(persona);
        CHECK(result.exit_code == 0);
        CHECK(result.out == golden(std::string("demo_") + persona + ".txt"));
    }
}
