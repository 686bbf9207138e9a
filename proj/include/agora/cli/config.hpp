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

#ifndef AGORA_CLI_CONFIG_HPP_
#define AGORA_CLI_CONFIG_HPP_

#include <agora/catalog/matchmaking.hpp>
#include <agora/common/error.hpp>
#include <agora/common/region.hpp>
#include <agora/planner/cost_model.hpp>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

namespace agora::cli {

class ConfigError : public UsageError {
  public:
    ConfigError(std::string field, const std::string& reason)
        : UsageError("ConfigError", field + ": " + reason), fieldName(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return fieldName; }

  private:
    std::string fieldName;
};

struct MarketplaceSource {
    std::string name;
    std::filesystem::path path;
    friend bool operator==(const MarketplaceSource&, const MarketplaceSource&) = default;
};

/// Paths are absolute after loading; relative paths in the file are resolved against the file's directory.
struct Config {
    std::vector<MarketplaceSource> marketplaces;
    std::optional<std::filesystem::path> nodes;
    std::optional<std::filesystem::path> authorities;
    std::optional<std::filesystem::path> variants;
    std::optional<std::filesystem::path> pricing;
    planner::CostModel cost_model;
    catalog::MatchWeights match_weights;
    std::int64_t window_seconds = 60;
    Region default_region = Region::EU;

    friend bool operator==(const Config& a, const Config& b);
};

/**
 * @brief Builds a validated Config from a JSON document.
 * @param baseDir directory that relative paths are resolved against
 * @param defaulted receives the names of optional fields that were absent and took their default
 * Throws ConfigError(field, reason) for missing files, unknown fields and out-of-range values.
 */
Config config_from_json(const nlohmann::json& document, const std::filesystem::path& baseDir,
                        std::vector<std::string>* defaulted = nullptr);

Config load_config(const std::filesystem::path& path, std::vector<std::string>* defaulted = nullptr);

/// Every field, with absolute paths. config_from_json(to_json(c), any) == c.
nlohmann::json to_json(const Config& config);

}// namespace agora::cli

#endif// AGORA_CLI_CONFIG_HPP_
