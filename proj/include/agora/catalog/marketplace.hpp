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

#ifndef AGORA_CATALOG_MARKETPLACE_HPP_
#define AGORA_CATALOG_MARKETPLACE_HPP_

#include <agora/catalog/market_index.hpp>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

namespace agora::catalog {

class DuplicateId : public AgoraError {
  public:
    explicit DuplicateId(const AssetId& id) : AgoraError("DuplicateId", id) {}
};

class InvalidDescriptor : public AgoraError {
  public:
    InvalidDescriptor(const AssetId& id, const std::string& report) : AgoraError("InvalidDescriptor", id + ": " + report) {}
};

/**
 * @brief One asset marketplace: a store of descriptors plus its own index.
 * Readers share the lock; publish and retract take it exclusively, so a reader never sees an asset that is in
 * the store but not yet indexed.
 */
class Marketplace {
  public:
    explicit Marketplace(std::string name);

    [[nodiscard]] const std::string& name() const { return marketName; }

    /// Validates and stores the descriptor. Throws InvalidDescriptor or DuplicateId.
    AssetId publish(const AssetDescriptor& descriptor);
    /// Throws UnknownAsset.
    void retract(const AssetId& id);

    [[nodiscard]] std::optional<AssetDescriptor> get(const AssetId& id) const;
    [[nodiscard]] std::size_t size() const;
    /// Sorted by id.
    [[nodiscard]] std::vector<AssetDescriptor> assets() const;
    /// Consistent snapshot of the index.
    [[nodiscard]] MarketIndex index() const;

    template<typename Fn>
    auto with_index(Fn&& fn) const {
        std::shared_lock lock(*mutex);
        return fn(marketIndex);
    }

  private:
    std::string marketName;
    std::unique_ptr<std::shared_mutex> mutex;
    MarketIndex marketIndex;
};

/// Union index over all markets with provenance. Throws IdCollisionAcrossMarkets.
MarketIndex aggregate(std::span<const Marketplace> markets);

/// Signature class of id. Throws UnknownAsset.
IdSet equivalents(const MarketIndex& index, const AssetId& id);

}// namespace agora::catalog

#endif// AGORA_CATALOG_MARKETPLACE_HPP_
