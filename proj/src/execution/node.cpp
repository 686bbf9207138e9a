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

#include <agora/asset/descriptor_io.hpp>
#include <agora/execution/node.hpp>
#include <cmath>
#include <nlohmann/json.hpp>

namespace agora::execution {

void validate_node(const NodeExecutorInfo& node) {
    if (node.node_id.empty()) {
        throw InvalidNode("node_id must not be empty");
    }
    if (!std::isfinite(node.speed_factor) || node.speed_factor <= 0) {
        throw InvalidNode(node.node_id + ": speed_factor must be positive");
    }
    const auto* perUse = std::get_if<asset::PayPerUse>(&node.price);
    if (perUse == nullptr
        || (perUse->unit != asset::UsageUnit::PerHour && perUse->unit != asset::UsageUnit::PerMegabyte)) {
        throw InvalidNode(node.node_id + ": price must be PayPerUse per hour or per megabyte");
    }
    if (perUse->rate.micro_units < 0) {
        throw InvalidNode(node.node_id + ": price must not be negative");
    }
}

nlohmann::json to_json(const NodeExecutorInfo& node) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : node.certificates) {
        certs.push_back(to_json(c));
    }
    return {{"node_id", node.node_id},
            {"region", std::string(to_string(node.region))},
            {"capabilities", node.capabilities},
            {"certificates", certs},
            {"price", asset::to_json(node.price)},
            {"speed_factor", node.speed_factor}};
}

NodeExecutorInfo node_from_json(const nlohmann::json& doc) {
    NodeExecutorInfo node;
    try {
        node.node_id = doc.at("node_id").get<std::string>();
        auto region = parse_region(doc.at("region").get<std::string>());
        if (!region) {
            throw InvalidNode(node.node_id + ": unknown region");
        }
        node.region = *region;
        if (doc.contains("capabilities")) {
            node.capabilities = doc.at("capabilities").get<std::set<std::string>>();
        }
        if (doc.contains("certificates")) {
            for (const auto& c : doc.at("certificates")) {
                node.certificates.push_back(certificate_from_json(c));
            }
        }
        node.price = asset::pricing_from_json(doc.at("price"), "price");
        if (doc.contains("speed_factor")) {
            node.speed_factor = doc.at("speed_factor").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidNode(e.what());
    }
    validate_node(node);
    return node;
}

std::vector<NodeExecutorInfo> parse_node_registry(std::string_view text) {
    std::vector<NodeExecutorInfo> nodes;
    std::size_t begin = 0;
    std::size_t lineNo = 0;
    while (begin <= text.size()) {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++lineNo;
        auto line = text.substr(begin, end - begin);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                nodes.push_back(node_from_json(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::parse_error& e) {
                throw InvalidNode("line " + std::to_string(lineNo) + ": " + e.what());
            }
        }
        begin = end + 1;
    }
    return nodes;
}

bool verify_certificates(const NodeExecutorInfo& node, std::span<const asset::CertificateRequirement> requirements,
                         Timestamp now, const AuthorityRegistry& authorities) {
    for (const auto& requirement : requirements) {
        for (const auto& name : requirement.trusted_authorities) {
            if (!authorities.contains(name)) {
                throw UnknownAuthority(name);
            }
        }
    }
    for (const auto& requirement : requirements) {
        bool met = false;
        for (const auto& c : node.certificates) {
            if (c.property == requirement.property && c.subject == node.node_id && c.expires_at > now
                && requirement.trusted_authorities.contains(c.authority) && authorities.verify(c)) {
                met = true;
                break;
            }
        }
        if (!met) {
            return false;
        }
    }
    return true;
}

}// namespace agora::execution
