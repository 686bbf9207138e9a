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

#include "support.hpp"

#include <agora/asset/descriptor_io.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace agora::cli {

const Config& Context::config() {
    if (!loaded) {
        if (!config_path) {
            throw ConfigError("--config", "this command needs a configuration file");
        }
        std::vector<std::string> defaulted;
        loaded = load_config(*config_path, &defaulted);
        if (verbose) {
            for (const auto& entry : defaulted) {
                err << "config default: " << entry << '\n';
            }
        }
    }
    return *loaded;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("FileNotFound", "cannot read " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<catalog::Marketplace> load_markets(const Config& config) {
    std::vector<catalog::Marketplace> markets;
    for (const auto& source : config.marketplaces) {
        catalog::Marketplace market(source.name);
        for (const auto& descriptor : asset::parse_descriptor_lines(read_file(source.path))) {
            market.publish(descriptor);
        }
        markets.push_back(std::move(market));
    }
    return markets;
}

execution::AuthorityRegistry load_authorities(const Config& config) {
    if (!config.authorities) {
        return {};
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(*config.authorities));
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("InvalidAuthorityRegistry", e.what());
    }
    return execution::AuthorityRegistry::from_json(doc);
}

std::vector<execution::NodeExecutorInfo> load_nodes(const Config& config) {
    if (!config.nodes) {
        return {};
    }
    return execution::parse_node_registry(read_file(*config.nodes));
}

execution::VariantClasses load_variants(const Config& config) {
    auto classes = execution::builtin_relational_variants();
    if (config.variants) {
        for (auto& variant : execution::parse_variants(read_file(*config.variants))) {
            execution::add_variant(classes, std::move(variant));
        }
    }
    return classes;
}

void add_builtin_nodes(std::vector<execution::NodeExecutorInfo>& nodes) {
    for (Region region : kAllRegions) {
        bool served = false;
        for (const auto& node : nodes) {
            served = served || (node.region == region && node.capabilities.contains("relational"));
        }
        if (!served) {
            execution::NodeExecutorInfo builtin;
            builtin.node_id = "builtin-" + std::string(to_string(region));
            builtin.region = region;
            builtin.capabilities = {"relational"};
            builtin.price = asset::PayPerUse{Money{}, asset::UsageUnit::PerHour};
            nodes.push_back(std::move(builtin));
        }
    }
}

Money parse_money_option(const std::string& text, const std::string& option) {
    try {
        return Money::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("InvalidArgument", option + ": " + e.what());
    }
}

}// namespace agora::cli
