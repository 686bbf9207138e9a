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

#ifndef AGORA_ASSET_SIGNATURE_HPP_
#define AGORA_ASSET_SIGNATURE_HPP_

#include <agora/asset/types.hpp>
#include <string>

namespace agora::asset {

/**
 * @brief Canonical byte string of the goal and I/O types of an asset.
 * Two assets are equivalence candidates iff these strings are byte-identical. Quality, pricing, provider and
 * naming do not take part.
 */
std::string logical_signature(const AssetDescriptor& descriptor);
std::string canonical_signature(const LogicalSignature& signature);

/// Canonical bytes of a single I/O type; used for type matching in composition and matchmaking.
std::string canonical_io_type(const IOType& type);

}// namespace agora::asset

#endif// AGORA_ASSET_SIGNATURE_HPP_
