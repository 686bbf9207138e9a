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

#include <agora/cli/config.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace agora::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const json* member(const json& object, const char* key) {
    auto it = object.find(key);
    return it == object.end() ? nullptr : &*it;
}

void rejectUnknown(const json& object, const std::set<std::string>& known, const std::string& prefix) {
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key)) {
            throw ConfigError(prefix + key, "unknown field");
        }
    }
}

double number(const json& value, const std::string& field) {
    if (!value.is_number()) {
        throw ConfigError(field, "expected a number");
    }
    double v = value.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(field, "must be finite");
    }
    return v;
}

std::string text(const json& value, const std::string& field) {
    if (!value.is_string()) {
        throw ConfigError(field, "expected a string");
    }
    return value.get<std::string>();
}

Region region(const json& value, const std::string& field) {
    auto name = text(value, field);
    auto r = parse_region(name);
    if (!r) {
        throw ConfigError(field, "unknown region '" + name + "'");
    }
    return *r;
}

fs::path existingFile(const json& value, const std::string& field, const fs::path& baseDir) {
    fs::path p = text(value, field);
    if (p.is_relative()) {
        p = baseDir / p;
    }
    p = p.lexically_normal();
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) {
        throw ConfigError(field, "file not found: " + p.string());
    }
    return p;
}

class Defaults {
  public:
    explicit Defaults(std::vector<std::string>* sink) : sink(sink) {}
    template<typename T>
    void note(const std::string& field, const T& value) {
        if (sink) {
            sink->push_back(fmt::format("{}={}", field, value));
        }
    }

  private:
    std::vector<std::string>* sink;
};

std::optional<fs::path> optionalFile(const json& doc, const char* key, const fs::path& baseDir, Defaults& defaults) {
    if (const auto* v = member(doc, key)) {
        return existingFile(*v, key, baseDir);
    }
    defaults.note(key, "none");
    return std::nullopt;
}

void readScalar(const json& doc, const char* key, const std::string& prefix, double& target, Defaults& defaults) {
    if (const auto* v = member(doc, key)) {
        target = number(*v, prefix + key);
    } else {
        defaults.note(prefix + key, target);
    }
}

planner::CostModel costModel(const json* doc, Defaults& defaults) {
    planner::CostModel cm;
    if (doc == nullptr) {
        defaults.note("cost_model", "defaults");
        return cm;
    }
    if (!doc->is_object()) {
        throw ConfigError("cost_model", "expected an object");
    }
    const std::string prefix = "cost_model.";
    rejectUnknown(*doc, {"cpu_cost_per_row", "filter_selectivity_default", "default_ship_cost_per_byte", "ship_cost_per_byte"},
                  prefix);
    readScalar(*doc, "cpu_cost_per_row", prefix, cm.cpu_cost_per_row, defaults);
    readScalar(*doc, "filter_selectivity_default", prefix, cm.filter_selectivity_default, defaults);
    readScalar(*doc, "default_ship_cost_per_byte", prefix, cm.default_ship_cost_per_byte, defaults);
    if (const auto* rates = member(*doc, "ship_cost_per_byte")) {
        if (!rates->is_array()) {
            throw ConfigError(prefix + "ship_cost_per_byte", "expected an array");
        }
        for (std::size_t i = 0; i < rates->size(); ++i) {
            const auto& entry = (*rates)[i];
            const std::string field = fmt::format("{}ship_cost_per_byte[{}]", prefix, i);
            if (!entry.is_object()) {
                throw ConfigError(field, "expected an object");
            }
            rejectUnknown(entry, {"from", "to", "rate"}, field + ".");
            for (const char* key : {"from", "to", "rate"}) {
                if (!member(entry, key)) {
                    throw ConfigError(field + "." + key, "missing");
                }
            }
            Region from = region(entry["from"], field + ".from");
            Region to = region(entry["to"], field + ".to");
            if (from == to) {
                throw ConfigError(field, "from and to must differ");
            }
            double rate = number(entry["rate"], field + ".rate");
            if (rate < 0) {
                throw ConfigError(field + ".rate", "must be non-negative");
            }
            if (!cm.ship_cost_per_byte.emplace(std::pair{from, to}, rate).second) {
                throw ConfigError(field, "duplicate region pair");
            }
        }
    }
    try {
        cm.validate();
    } catch (const planner::InvalidCostModel& e) {
        throw ConfigError("cost_model", e.what());
    }
    return cm;
}

catalog::MatchWeights weights(const json* doc, Defaults& defaults) {
    catalog::MatchWeights w;
    if (doc == nullptr) {
        defaults.note("match_weights", fmt::format("{}/{}", w.quality_slack, w.price));
        return w;
    }
    if (!doc->is_object()) {
        throw ConfigError("match_weights", "expected an object");
    }
    const std::string prefix = "match_weights.";
    rejectUnknown(*doc, {"quality_slack", "price"}, prefix);
    readScalar(*doc, "quality_slack", prefix, w.quality_slack, defaults);
    readScalar(*doc, "price", prefix, w.price, defaults);
    if (w.quality_slack < 0 || w.price < 0) {
        throw ConfigError("match_weights", "weights must be non-negative");
    }
    if (w.quality_slack + w.price <= 0) {
        throw ConfigError("match_weights", "weights must not both be zero");
    }
    return w;
}

}// namespace

bool operator==(const Config& a, const Config& b) {
    return a.marketplaces == b.marketplaces && a.nodes == b.nodes && a.authorities == b.authorities
        && a.variants == b.variants && a.pricing == b.pricing
        && a.cost_model.cpu_cost_per_row == b.cost_model.cpu_cost_per_row
        && a.cost_model.filter_selectivity_default == b.cost_model.filter_selectivity_default
        && a.cost_model.default_ship_cost_per_byte == b.cost_model.default_ship_cost_per_byte
        && a.cost_model.ship_cost_per_byte == b.cost_model.ship_cost_per_byte
        && a.match_weights.quality_slack == b.match_weights.quality_slack
        && a.match_weights.price == b.match_weights.price && a.window_seconds == b.window_seconds
        && a.default_region == b.default_region;
}

Config config_from_json(const json& doc, const fs::path& baseDir, std::vector<std::string>* defaulted) {
    if (!doc.is_object()) {
        throw ConfigError("<root>", "expected a JSON object");
    }
    rejectUnknown(doc, {"marketplaces", "nodes", "authorities", "variants", "pricing", "cost_model", "match_weights",
                        "window_seconds", "default_region"},
                  "");
    Defaults defaults(defaulted);
    Config config;

    const auto* markets = member(doc, "marketplaces");
    if (markets == nullptr) {
        throw ConfigError("marketplaces", "missing");
    }
    if (!markets->is_array() || markets->empty()) {
        throw ConfigError("marketplaces", "expected a non-empty array");
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < markets->size(); ++i) {
        const auto& entry = (*markets)[i];
        const std::string field = fmt::format("marketplaces[{}]", i);
        if (!entry.is_object()) {
            throw ConfigError(field, "expected an object");
        }
        rejectUnknown(entry, {"name", "path"}, field + ".");
        if (!member(entry, "path")) {
            throw ConfigError(field + ".path", "missing");
        }
        MarketplaceSource source;
        source.path = existingFile(entry["path"], field + ".path", baseDir);
        source.name = member(entry, "name") ? text(entry["name"], field + ".name") : source.path.stem().string();
        if (source.name.empty()) {
            throw ConfigError(field + ".name", "must not be empty");
        }
        if (!names.insert(source.name).second) {
            throw ConfigError(field + ".name", "duplicate marketplace '" + source.name + "'");
        }
        config.marketplaces.push_back(std::move(source));
    }

    config.nodes = optionalFile(doc, "nodes", baseDir, defaults);
    config.authorities = optionalFile(doc, "authorities", baseDir, defaults);
    config.variants = optionalFile(doc, "variants", baseDir, defaults);
    config.pricing = optionalFile(doc, "pricing", baseDir, defaults);
    config.cost_model = costModel(member(doc, "cost_model"), defaults);
    config.match_weights = weights(member(doc, "match_weights"), defaults);

    if (const auto* window = member(doc, "window_seconds")) {
        if (!window->is_number_integer()) {
            throw ConfigError("window_seconds", "expected an integer");
        }
        config.window_seconds = window->get<std::int64_t>();
        if (config.window_seconds <= 0) {
            throw ConfigError("window_seconds", "must be positive");
        }
    } else {
        defaults.note("window_seconds", config.window_seconds);
    }
    if (const auto* r = member(doc, "default_region")) {
        config.default_region = region(*r, "default_region");
    } else {
        defaults.note("default_region", to_string(config.default_region));
    }
    return config;
}

Config load_config(const fs::path& path, std::vector<std::string>* defaulted) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("<file>", "cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", fmt::format("invalid JSON at byte {}", e.byte));
    }
    fs::path base = fs::absolute(path).parent_path();
    return config_from_json(doc, base, defaulted);
}

json to_json(const Config& config) {
    json doc;
    doc["marketplaces"] = json::array();
    for (const auto& m : config.marketplaces) {
        doc["marketplaces"].push_back({{"name", m.name}, {"path", fs::absolute(m.path).string()}});
    }
    auto path = [&](const char* key, const std::optional<fs::path>& p) {
        if (p) {
            doc[key] = fs::absolute(*p).string();
        }
    };
    path("nodes", config.nodes);
    path("authorities", config.authorities);
    path("variants", config.variants);
    path("pricing", config.pricing);
    json rates = json::array();
    for (const auto& [pair, rate] : config.cost_model.ship_cost_per_byte) {
        rates.push_back({{"from", std::string(to_string(pair.first))}, {"to", std::string(to_string(pair.second))}, {"rate", rate}});
    }
    doc["cost_model"] = {{"cpu_cost_per_row", config.cost_model.cpu_cost_per_row},
                         {"filter_selectivity_default", config.cost_model.filter_selectivity_default},
                         {"default_ship_cost_per_byte", config.cost_model.default_ship_cost_per_byte},
                         {"ship_cost_per_byte", rates}};
    doc["match_weights"] = {{"quality_slack", config.match_weights.quality_slack}, {"price", config.match_weights.price}};
    doc["window_seconds"] = config.window_seconds;
    doc["default_region"] = std::string(to_string(config.default_region));
    return doc;
}

}// namespace agora::cli
