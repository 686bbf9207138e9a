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

#ifndef AGORA_ESCROW_CRYPTO_HPP_
#define AGORA_ESCROW_CRYPTO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace agora::escrow {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;
using Key = std::array<std::uint8_t, 32>;

inline constexpr std::size_t kNonceBytes = 12;
inline constexpr std::size_t kTagBytes = 16;

/// SHA-256.
Digest digest(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> data);

/// AES-256-GCM. The result is nonce || ciphertext || tag.
Bytes seal(const Key& key, const std::array<std::uint8_t, kNonceBytes>& nonce, std::span<const std::uint8_t> plaintext);

/// Inverse of seal; nullopt when authentication fails or the input is too short.
std::optional<Bytes> open(const Key& key, std::span<const std::uint8_t> sealed);

/**
 * @brief Seeded byte generator for keys, nonces and simulated data.
 * Deterministic by design so that simulations replay exactly; it is not a source of secret randomness.
 */
class SeededBytes {
  public:
    explicit SeededBytes(std::uint64_t seed) : engine(seed) {}
    void fill(std::span<std::uint8_t> out);
    Bytes bytes(std::size_t count);

  private:
    std::mt19937_64 engine;
};

}// namespace agora::escrow

#endif// AGORA_ESCROW_CRYPTO_HPP_
