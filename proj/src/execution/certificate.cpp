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

#include <agora/execution/certificate.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace agora::execution {

std::string certificate_token(std::string_view key, std::string_view subject, std::string_view property,
                              Timestamp expiresAt) {
    std::string message = fmt::format("{}|{}|{}", subject, property, expiresAt);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), reinterpret_cast<const unsigned char*>(message.data()),
             message.size(), digest, &length)
        == nullptr) {
        throw AgoraError("CryptoFailure", "HMAC-SHA256 failed");
    }
    std::string hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

void AuthorityRegistry::add(const std::string& name, std::string key) { keys[name] = std::move(key); }

std::vector<std::string> AuthorityRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, key] : keys) {
        out.push_back(name);
    }
    return out;
}

Certificate AuthorityRegistry::issue(const std::string& authority, const std::string& subject,
                                     const std::string& property, Timestamp expiresAt) const {
    auto it = keys.find(authority);
    if (it == keys.end()) {
        throw UnknownAuthority(authority);
    }
    return {authority, property, subject, expiresAt, certificate_token(it->second, subject, property, expiresAt)};
}

bool AuthorityRegistry::verify(const Certificate& c) const {
    auto it = keys.find(c.authority);
    return it != keys.end() && certificate_token(it->second, c.subject, c.property, c.expires_at) == c.token;
}

AuthorityRegistry AuthorityRegistry::from_json(const nlohmann::json& document) {
    if (!document.is_object()) {
        throw UsageError("InvalidAuthorityRegistry", "expected an object mapping authority name to key");
    }
    AuthorityRegistry registry;
    for (const auto& [name, key] : document.items()) {
        if (!key.is_string() || key.get<std::string>().empty()) {
            throw UsageError("InvalidAuthorityRegistry", "key of '" + name + "' must be a non-empty string");
        }
        registry.add(name, key.get<std::string>());
    }
    return registry;
}

nlohmann::json AuthorityRegistry::to_json() const { return nlohmann::json(keys); }

nlohmann::json to_json(const Certificate& c) {
    return {{"authority", c.authority},
            {"property", c.property},
            {"subject", c.subject},
            {"expires_at", c.expires_at},
            {"token", c.token}};
}

Certificate certificate_from_json(const nlohmann::json& doc) {
    try {
        return {doc.at("authority").get<std::string>(), doc.at("property").get<std::string>(),
                doc.at("subject").get<std::string>(), doc.at("expires_at").get<Timestamp>(),
                doc.at("token").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("InvalidCertificate", e.what());
    }
}

}// namespace agora::execution
