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

#ifndef AGORA_CLI_SUPPORT_HPP_
#define AGORA_CLI_SUPPORT_HPP_

#include <agora/catalog/marketplace.hpp>
#include <agora/cli/config.hpp>
#include <agora/execution/certificate.hpp>
#include <agora/execution/node.hpp>
#include <agora/execution/variants.hpp>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace agora::cli {

/// State shared by every subcommand of one invocation.
struct Context {
    Context(std::ostream& out, std::ostream& err) : out(out), err(err) {}

    std::optional<std::filesystem::path> config_path;
    std::uint64_t seed = 42;
    bool verbose = false;
    std::ostream& out;
    std::ostream& err;

    /// Loads the configuration on first use. Throws ConfigError when no --config was given.
    const Config& config();
    [[nodiscard]] bool has_config() const { return config_path.has_value(); }

  private:
    std::optional<Config> loaded;
};

std::string read_file(const std::filesystem::path& path);

std::vector<catalog::Marketplace> load_markets(const Config& config);
execution::AuthorityRegistry load_authorities(const Config& config);
std::vector<execution::NodeExecutorInfo> load_nodes(const Config& config);
/// Built-in relational variants plus the configured variant file.
execution::VariantClasses load_variants(const Config& config);

/// Adds a free "builtin-<region>" relational node for every region no listed node serves.
void add_builtin_nodes(std::vector<execution::NodeExecutorInfo>& nodes);

Money parse_money_option(const std::string& text, const std::string& option);

}// namespace agora::cli

#endif// AGORA_CLI_SUPPORT_HPP_
