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

#ifndef AGORA_ASSET_DESCRIPTOR_IO_HPP_
#define AGORA_ASSET_DESCRIPTOR_IO_HPP_

#include <agora/asset/types.hpp>
#include <agora/common/error.hpp>
#include <cstddef>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace agora::asset {

/// The document is not well-formed JSON; position is the byte offset reported by the parser.
class DescriptorSyntaxError : public UsageError {
  public:
    DescriptorSyntaxError(std::size_t position, const std::string& message)
        : UsageError("SyntaxError", "at byte " + std::to_string(position) + ": " + message), pos(position) {}
    [[nodiscard]] std::size_t position() const { return pos; }

  private:
    std::size_t pos;
};

/// The document is JSON but a field is missing or has the wrong shape.
class DescriptorSchemaError : public UsageError {
  public:
    DescriptorSchemaError(std::string field, const std::string& message)
        : UsageError("SchemaError", "field '" + field + "': " + message), fieldName(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return fieldName; }

  private:
    std::string fieldName;
};

AssetDescriptor parse_descriptor(std::string_view document);

/// Compact UTF-8 JSON with sorted keys; equal descriptors serialize to identical bytes.
std::string serialize_descriptor(const AssetDescriptor& descriptor);

/// Newline-delimited documents; blank lines are skipped.
std::vector<AssetDescriptor> parse_descriptor_lines(std::string_view text);

nlohmann::json to_json(const AssetDescriptor& descriptor);
AssetDescriptor descriptor_from_json(const nlohmann::json& document);

nlohmann::json to_json(const LogicalSignature& signature);
LogicalSignature signature_from_json(const nlohmann::json& document, const std::string& field);
nlohmann::json to_json(const std::vector<CertificateRequirement>& requirements);
std::vector<CertificateRequirement> requirements_from_json(const nlohmann::json& document, const std::string& field);
nlohmann::json to_json(const IOType& type);
IOType io_type_from_json(const nlohmann::json& document, const std::string& field);
nlohmann::json to_json(const PricingModel& pricing);
/// Amounts may be integer micro-units or strings such as "$2.50".
PricingModel pricing_from_json(const nlohmann::json& document, const std::string& field);
nlohmann::json to_json(const metering::RevenueShareTree& tree);
metering::RevenueShareTree revenue_share_from_json(const nlohmann::json& document, const std::string& field);

}// namespace agora::asset

#endif// AGORA_ASSET_DESCRIPTOR_IO_HPP_
