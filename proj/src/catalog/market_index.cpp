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

#include <agora/asset/signature.hpp>
#include <agora/catalog/market_index.hpp>
#include <cctype>

namespace agora::catalog {

namespace {

void tokenize(const std::string& text, std::set<std::string>& out) {
    std::string token;
    auto flush = [&] {
        if (token.size() >= 2) {
            out.insert(token);
        }
        token.clear();
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else {
            flush();
        }
    }
    flush();
}

void eraseFrom(std::map<std::string, IdSet>& index, const std::string& key, const AssetId& id) {
    auto it = index.find(key);
    if (it == index.end()) {
        return;
    }
    it->second.erase(id);
    if (it->second.empty()) {
        index.erase(it);
    }
}

}// namespace

std::set<std::string> keywords_of(const AssetDescriptor& d) {
    std::set<std::string> out;
    tokenize(d.id, out);
    tokenize(d.name, out);
    tokenize(d.provider, out);
    tokenize(d.signature.goal, out);
    return out;
}

void MarketIndex::add(const AssetDescriptor& d, const std::string& market) {
    if (auto it = origin.find(d.id); it != origin.end()) {
        throw IdCollisionAcrossMarkets(d.id, it->second, market);
    }
    auto signature = asset::logical_signature(d);
    store.emplace(d.id, d);
    origin.emplace(d.id, market);
    signatureOf.emplace(d.id, signature);
    signatureIndex[signature].insert(d.id);
    for (const auto& word : keywords_of(d)) {
        keywordIndex[word].insert(d.id);
    }
    goalIndex[d.signature.goal].insert(d.id);
    outputIndex[asset::canonical_io_type(d.signature.output)].insert(d.id);
}

void MarketIndex::remove(const AssetId& id) {
    auto it = store.find(id);
    if (it == store.end()) {
        throw UnknownAsset(id);
    }
    const auto& d = it->second;
    eraseFrom(signatureIndex, signatureOf.at(id), id);
    for (const auto& word : keywords_of(d)) {
        eraseFrom(keywordIndex, word, id);
    }
    eraseFrom(goalIndex, d.signature.goal, id);
    eraseFrom(outputIndex, asset::canonical_io_type(d.signature.output), id);
    signatureOf.erase(id);
    origin.erase(id);
    store.erase(it);
}

const AssetDescriptor* MarketIndex::find(const AssetId& id) const {
    auto it = store.find(id);
    return it == store.end() ? nullptr : &it->second;
}

IdSet MarketIndex::equivalents(const AssetId& id) const {
    auto it = signatureOf.find(id);
    if (it == signatureOf.end()) {
        throw UnknownAsset(id);
    }
    return signatureIndex.at(it->second);
}

std::vector<std::string> MarketIndex::check_coherence() const {
    std::vector<std::string> problems;
    auto checkIndex = [&](const std::map<std::string, IdSet>& index, const char* name) {
        for (const auto& [key, ids] : index) {
            if (ids.empty()) {
                problems.push_back(std::string(name) + " has empty entry '" + key + "'");
            }
            for (const auto& id : ids) {
                if (!store.contains(id)) {
                    problems.push_back(std::string(name) + " entry '" + key + "' references missing " + id);
                }
            }
        }
    };
    checkIndex(signatureIndex, "by_signature");
    checkIndex(keywordIndex, "by_keyword");
    checkIndex(goalIndex, "by_goal");
    checkIndex(outputIndex, "by_output");
    for (const auto& [id, d] : store) {
        auto sig = signatureOf.find(id);
        if (sig == signatureOf.end() || !signatureIndex.contains(sig->second)
            || !signatureIndex.at(sig->second).contains(id)) {
            problems.push_back(id + " unreachable through by_signature");
        }
        if (!origin.contains(id)) {
            problems.push_back(id + " has no provenance");
        }
    }
    return problems;
}

}// namespace agora::catalog
