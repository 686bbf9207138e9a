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

#include <agora/asset/validation.hpp>
#include <agora/catalog/marketplace.hpp>
#include <mutex>

namespace agora::catalog {

Marketplace::Marketplace(std::string name) : marketName(std::move(name)), mutex(std::make_unique<std::shared_mutex>()) {}

AssetId Marketplace::publish(const AssetDescriptor& descriptor) {
    auto report = asset::validate_descriptor(descriptor);
    if (!report.ok()) {
        throw InvalidDescriptor(descriptor.id, report.to_string());
    }
    std::unique_lock lock(*mutex);
    if (marketIndex.find(descriptor.id) != nullptr) {
        throw DuplicateId(descriptor.id);
    }
    marketIndex.add(descriptor, marketName);
    return descriptor.id;
}

void Marketplace::retract(const AssetId& id) {
    std::unique_lock lock(*mutex);
    marketIndex.remove(id);
}

std::optional<AssetDescriptor> Marketplace::get(const AssetId& id) const {
    std::shared_lock lock(*mutex);
    if (const auto* d = marketIndex.find(id)) {
        return *d;
    }
    return std::nullopt;
}

std::size_t Marketplace::size() const {
    std::shared_lock lock(*mutex);
    return marketIndex.size();
}

std::vector<AssetDescriptor> Marketplace::assets() const {
    std::shared_lock lock(*mutex);
    std::vector<AssetDescriptor> out;
    out.reserve(marketIndex.size());
    for (const auto& [id, d] : marketIndex.assets()) {
        out.push_back(d);
    }
    return out;
}

MarketIndex Marketplace::index() const {
    std::shared_lock lock(*mutex);
    return marketIndex;
}

MarketIndex aggregate(std::span<const Marketplace> markets) {
    MarketIndex index;
    for (const auto& market : markets) {
        market.with_index([&](const MarketIndex& own) {
            for (const auto& [id, d] : own.assets()) {
                index.add(d, market.name());
            }
            return 0;
        });
    }
    return index;
}

IdSet equivalents(const MarketIndex& index, const AssetId& id) { return index.equivalents(id); }

}// namespace agora::catalog
