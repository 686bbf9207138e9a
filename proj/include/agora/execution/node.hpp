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

#ifndef AGORA_EXECUTION_NODE_HPP_
#define AGORA_EXECUTION_NODE_HPP_

#include <agora/asset/types.hpp>
#include <agora/execution/certificate.hpp>
#include <set>
#include <span>

namespace agora::execution {

/// A compute node reachable through a node executor.
struct NodeExecutorInfo {
    std::string node_id;
    Region region = Region::EU;
    std::set<std::string> capabilities;
    std::vector<Certificate> certificates;
    /// PayPerUse per hour of runtime or per megabyte processed.
    asset::PricingModel price = asset::PayPerUse{};
    /// Relative processing rate; runtime is divided by it.
    double speed_factor = 1.0;
    friend bool operator==(const NodeExecutorInfo&, const NodeExecutorInfo&) = default;
};

class InvalidNode : public UsageError {
  public:
    explicit InvalidNode(const std::string& message) : UsageError("InvalidNode", message) {}
};

/// Throws InvalidNode for an empty id, a non-positive speed factor or a price that is not per hour or per megabyte.
void validate_node(const NodeExecutorInfo& node);

nlohmann::json to_json(const NodeExecutorInfo& node);
NodeExecutorInfo node_from_json(const nlohmann::json& document);

/// Newline-delimited node documents; blank lines are skipped. Every node is validated.
std::vector<NodeExecutorInfo> parse_node_registry(std::string_view text);

/**
 * @brief Whether the node satisfies every requirement at time now.
 * A requirement is met by an unexpired certificate for the node whose property matches, whose authority is trusted
 * and whose token verifies. Throws UnknownAuthority if a trusted set names an unregistered authority.
 */
bool verify_certificates(const NodeExecutorInfo& node, std::span<const asset::CertificateRequirement> requirements,
                         Timestamp now, const AuthorityRegistry& authorities);

}// namespace agora::execution

#endif// AGORA_EXECUTION_NODE_HPP_
