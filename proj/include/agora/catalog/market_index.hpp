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

#ifndef AGORA_CATALOG_MARKET_INDEX_HPP_
#define AGORA_CATALOG_MARKET_INDEX_HPP_

#include <agora/asset/types.hpp>
#include <agora/common/error.hpp>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace agora::catalog {

using asset::AssetDescriptor;
using asset::AssetId;
using IdSet = std::set<AssetId>;

class IdCollisionAcrossMarkets : public AgoraError {
  public:
    IdCollisionAcrossMarkets(const AssetId& id, const std::string& first, const std::string& second)
        : AgoraError("IdCollisionAcrossMarkets", id + " published by both '" + first + "' and '" + second + "'") {}
};

class UnknownAsset : public AgoraError {
  public:
    explicit UnknownAsset(const AssetId& id) : AgoraError("UnknownAsset", id) {}
};

/// Lower-cased alphanumeric tokens (length >= 2) of the id, name, provider and goal.
std::set<std::string> keywords_of(const AssetDescriptor& descriptor);

/**
 * @brief Search structures over a set of descriptors.
 * by_signature groups are exactly the classes of byte-identical logical signatures. Every id that appears in any
 * index resolves through find().
 */
class MarketIndex {
  public:
    /// Throws IdCollisionAcrossMarkets when the id is already indexed.
    void add(const AssetDescriptor& descriptor, const std::string& market);
    void remove(const AssetId& id);

    [[nodiscard]] const AssetDescriptor* find(const AssetId& id) const;
    [[nodiscard]] std::size_t size() const { return store.size(); }
    [[nodiscard]] bool empty() const { return store.empty(); }

    /// Signature class of id, including id itself. Throws UnknownAsset.
    [[nodiscard]] IdSet equivalents(const AssetId& id) const;

    [[nodiscard]] const std::map<std::string, IdSet>& by_signature() const { return signatureIndex; }
    [[nodiscard]] const std::map<std::string, IdSet>& by_keyword() const { return keywordIndex; }
    [[nodiscard]] const std::map<std::string, IdSet>& by_goal() const { return goalIndex; }
    /// Keyed by canonical output type.
    [[nodiscard]] const std::map<std::string, IdSet>& by_output() const { return outputIndex; }
    [[nodiscard]] const std::map<AssetId, std::string>& provenance() const { return origin; }
    [[nodiscard]] const std::map<AssetId, AssetDescriptor>& assets() const { return store; }

    /// Empty when every index entry resolves and every stored asset is reachable.
    [[nodiscard]] std::vector<std::string> check_coherence() const;

    friend bool operator==(const MarketIndex&, const MarketIndex&) = default;

  private:
    std::map<AssetId, AssetDescriptor> store;
    std::map<AssetId, std::string> origin;
    std::map<AssetId, std::string> signatureOf;
    std::map<std::string, IdSet> signatureIndex;
    std::map<std::string, IdSet> keywordIndex;
    std::map<std::string, IdSet> goalIndex;
    std::map<std::string, IdSet> outputIndex;
};

}// namespace agora::catalog

#endif// AGORA_CATALOG_MARKET_INDEX_HPP_
