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
#include <agora/asset/signature.hpp>
#include <nlohmann/json.hpp>

namespace agora::asset {

std::string canonical_io_type(const IOType& type) { return to_json(type).dump(); }

std::string canonical_signature(const LogicalSignature& signature) {
    nlohmann::json doc;
    doc["goal"] = signature.goal;
    doc["inputs"] = nlohmann::json::array();
    for (const auto& input : signature.inputs) {
        doc["inputs"].push_back(to_json(input));
    }
    doc["output"] = to_json(signature.output);
    return doc.dump();
}

std::string logical_signature(const AssetDescriptor& descriptor) { return canonical_signature(descriptor.signature); }

}// namespace agora::asset
