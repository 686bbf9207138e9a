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

#include <agora/escrow/protocol.hpp>
#include <algorithm>

namespace agora::escrow {

std::string_view to_string(ChunkState state) {
    switch (state) {
    case ChunkState::Init: return "Init";
    case ChunkState::CiphertextSent: return "CiphertextSent";
    case ChunkState::ManifestRegistered: return "ManifestRegistered";
    case ChunkState::IntegrityVerified: return "IntegrityVerified";
    case ChunkState::PaymentIssued: return "PaymentIssued";
    case ChunkState::KeyReleased: return "KeyReleased";
    case ChunkState::Completed: return "Completed";
    case ChunkState::Aborted: return "Aborted";
    }
    return "?";
}

PreparedTransfer sender_prepare(std::span<const std::uint8_t> data, std::size_t chunk_bytes, Money price_per_chunk,
                                SeededBytes& entropy, const std::string& session_id) {
    if (data.empty()) {
        throw UsageError("EmptyTransfer", "no data to transfer");
    }
    if (chunk_bytes == 0) {
        throw UsageError("InvalidChunkSize", "chunk size must be positive");
    }
    PreparedTransfer out;
    for (std::size_t offset = 0, index = 0; offset < data.size(); offset += chunk_bytes, ++index) {
        auto piece = data.subspan(offset, std::min(chunk_bytes, data.size() - offset));
        Key key{};
        entropy.fill(key);
        std::array<std::uint8_t, kNonceBytes> nonce{};
        entropy.fill(nonce);
        Bytes sealed = seal(key, nonce, piece);
        out.manifests.push_back(ChunkManifest{session_id, index, digest(sealed), sealed.size(), price_per_chunk});
        out.ciphertexts.push_back(std::move(sealed));
        out.keys.push_back(key);
    }
    return out;
}

VerifyResult receiver_verify_chunk(std::span<const std::uint8_t> ciphertext, const ChunkManifest& manifest) {
    if (ciphertext.size() != manifest.ciphertext_len) {
        return VerifyResult::DigestMismatch;
    }
    return digest(ciphertext) == manifest.ciphertext_digest ? VerifyResult::Verified : VerifyResult::DigestMismatch;
}

void Mediator::register_chunk(const ChunkManifest& manifest, const Key& key) {
    manifests[manifest.chunk_index] = manifest;
    keys[manifest.chunk_index] = key;
}

const ChunkManifest& Mediator::manifest(std::size_t chunk) const {
    auto it = manifests.find(chunk);
    if (it == manifests.end()) {
        throw UnknownChunk(chunk);
    }
    return it->second;
}

std::variant<KeyMessage, Refusal> Mediator::release_key(std::size_t chunk, const metering::PaymentTxn& payment) {
    const ChunkManifest& m = manifest(chunk);
    if (releasedChunks.contains(chunk)) {
        return KeyMessage{chunk, keys.at(chunk)};
    }
    if (payment.status != metering::TxnStatus::Confirmed) {
        return Refusal{chunk, "payment " + std::string(metering::to_string(payment.status))};
    }
    if (payment.amount != m.price) {
        return Refusal{chunk, "payment amount " + payment.amount.to_string() + " != " + m.price.to_string()};
    }
    payments[chunk] = payment;
    releasedChunks.insert(chunk);
    return KeyMessage{chunk, keys.at(chunk)};
}

}// namespace agora::escrow
