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

#ifndef AGORA_EXECUTION_CERTIFICATE_HPP_
#define AGORA_EXECUTION_CERTIFICATE_HPP_

#include <agora/common/error.hpp>
#include <agora/metering/usage.hpp>
#include <map>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace agora::execution {

using metering::Timestamp;

/// Attestation by an authority that a node has a property, e.g. "region=EU", "tee" or "usage-tracking".
struct Certificate {
    std::string authority;
    std::string property;
    std::string subject;
    Timestamp expires_at = 0;
    /// Lower-case hex HMAC-SHA256 of "subject|property|expires_at" under the authority's key.
    std::string token;
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

class UnknownAuthority : public AgoraError {
  public:
    explicit UnknownAuthority(const std::string& name) : AgoraError("UnknownAuthority", name) {}
};

/// Authorities and their verification keys.
class AuthorityRegistry {
  public:
    void add(const std::string& name, std::string key);
    [[nodiscard]] bool contains(const std::string& name) const { return keys.contains(name); }
    [[nodiscard]] std::vector<std::string> names() const;

    /// Throws UnknownAuthority.
    [[nodiscard]] Certificate issue(const std::string& authority, const std::string& subject, const std::string& property,
                                    Timestamp expiresAt) const;

    /// True iff the authority is registered and the token matches. Expiry is not checked here.
    [[nodiscard]] bool verify(const Certificate& certificate) const;

    /// {"authority name": "key", ...}
    static AuthorityRegistry from_json(const nlohmann::json& document);
    [[nodiscard]] nlohmann::json to_json() const;

    friend bool operator==(const AuthorityRegistry&, const AuthorityRegistry&) = default;

  private:
    std::map<std::string, std::string> keys;
};

std::string certificate_token(std::string_view key, std::string_view subject, std::string_view property,
                              Timestamp expiresAt);

nlohmann::json to_json(const Certificate& certificate);
Certificate certificate_from_json(const nlohmann::json& document);

}// namespace agora::execution

#endif// AGORA_EXECUTION_CERTIFICATE_HPP_
