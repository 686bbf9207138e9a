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

#ifndef AGORA_ESCROW_PROTOCOL_HPP_
#define AGORA_ESCROW_PROTOCOL_HPP_

#include <agora/common/error.hpp>
#include <agora/common/money.hpp>
#include <agora/escrow/crypto.hpp>
#include <agora/metering/settlement.hpp>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace agora::escrow {

struct ChunkManifest {
    std::string session_id;
    std::size_t chunk_index = 0;
    Digest ciphertext_digest{};
    std::size_t ciphertext_len = 0;
    Money price;
    friend bool operator==(const ChunkManifest&, const ChunkManifest&) = default;
};

enum class ChunkState {
    Init,
    CiphertextSent,
    ManifestRegistered,
    IntegrityVerified,
    PaymentIssued,
    KeyReleased,
    Completed,
    Aborted
};

std::string_view to_string(ChunkState state);

struct PreparedTransfer {
    std::vector<Bytes> ciphertexts;
    std::vector<ChunkManifest> manifests;
    std::vector<Key> keys;
};

/// Splits data into ceil(len / chunk_bytes) chunks, each sealed under its own key.
PreparedTransfer sender_prepare(std::span<const std::uint8_t> data, std::size_t chunk_bytes, Money price_per_chunk,
                                SeededBytes& entropy, const std::string& session_id);

enum class VerifyResult { Verified, DigestMismatch };

VerifyResult receiver_verify_chunk(std::span<const std::uint8_t> ciphertext, const ChunkManifest& manifest);

class UnknownChunk : public AgoraError {
  public:
    explicit UnknownChunk(std::size_t chunk) : AgoraError("UnknownChunk", "chunk " + std::to_string(chunk)) {}
};

struct KeyMessage {
    std::size_t chunk_index = 0;
    Key key{};
};

struct Refusal {
    std::size_t chunk_index = 0;
    std::string reason;
};

/// Escrow agent holding manifests and keys. It never sees ciphertext or plaintext.
class Mediator {
  public:
    void register_chunk(const ChunkManifest& manifest, const Key& key);
    [[nodiscard]] bool registered(std::size_t chunk) const { return manifests.contains(chunk); }
    [[nodiscard]] const ChunkManifest& manifest(std::size_t chunk) const;

    /// Releases the key iff the payment is Confirmed for exactly the manifest price. Repeats return the same key.
    std::variant<KeyMessage, Refusal> release_key(std::size_t chunk, const metering::PaymentTxn& payment);
    [[nodiscard]] bool released(std::size_t chunk) const { return releasedChunks.contains(chunk); }

  private:
    std::map<std::size_t, ChunkManifest> manifests;
    std::map<std::size_t, Key> keys;
    std::map<std::size_t, metering::PaymentTxn> payments;
    std::set<std::size_t> releasedChunks;
};

}// namespace agora::escrow

#endif// AGORA_ESCROW_PROTOCOL_HPP_
