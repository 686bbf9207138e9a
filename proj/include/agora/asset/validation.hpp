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

#ifndef AGORA_ASSET_VALIDATION_HPP_
#define AGORA_ASSET_VALIDATION_HPP_

#include <agora/asset/types.hpp>
#include <string>
#include <vector>

namespace agora::asset {

struct Violation {
    std::string field;
    std::string rule;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    [[nodiscard]] bool has(std::string_view rule) const;
    [[nodiscard]] std::string to_string() const;
};

/// Checks every descriptor invariant. Violations are reported, never thrown.
ValidationReport validate_descriptor(const AssetDescriptor& descriptor);

bool is_valid_asset_id(std::string_view id);

}// namespace agora::asset

#endif// AGORA_ASSET_VALIDATION_HPP_
