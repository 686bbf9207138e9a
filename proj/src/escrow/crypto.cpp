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

#include <agora/common/error.hpp>
#include <agora/escrow/crypto.hpp>
#include <fmt/format.h>
#include <memory>
#include <openssl/evp.h>
#include <openssl/sha.h>

namespace agora::escrow {

namespace {

struct CipherContextDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherContext = std::unique_ptr<EVP_CIPHER_CTX, CipherContextDeleter>;

CipherContext newContext() {
    CipherContext ctx(EVP_CIPHER_CTX_new());
    if (!ctx) {
        throw AgoraError("CryptoFailure", "cannot allocate cipher context");
    }
    return ctx;
}

void check(int ok, const char* what) {
    if (ok != 1) {
        throw AgoraError("CryptoFailure", what);
    }
}

}// namespace

Digest digest(std::span<const std::uint8_t> data) {
    Digest out{};
    SHA256(data.data(), data.size(), out.data());
    return out;
}

std::string to_hex(std::span<const std::uint8_t> data) {
    std::string hex;
    hex.reserve(data.size() * 2);
    for (auto b : data) {
        hex += fmt::format("{:02x}", b);
    }
    return hex;
}

Bytes seal(const Key& key, const std::array<std::uint8_t, kNonceBytes>& nonce, std::span<const std::uint8_t> plaintext) {
    auto ctx = newContext();
    check(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr), "cipher init");
    check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(kNonceBytes), nullptr), "nonce length");
    check(EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()), "key setup");
    Bytes out(kNonceBytes + plaintext.size() + kTagBytes);
    std::copy(nonce.begin(), nonce.end(), out.begin());
    int written = 0;
    check(EVP_EncryptUpdate(ctx.get(), out.data() + kNonceBytes, &written, plaintext.data(),
                            static_cast<int>(plaintext.size())),
          "encrypt");
    int tail = 0;
    check(EVP_EncryptFinal_ex(ctx.get(), out.data() + kNonceBytes + written, &tail), "encrypt final");
    check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, static_cast<int>(kTagBytes),
                              out.data() + kNonceBytes + plaintext.size()),
          "tag");
    return out;
}

std::optional<Bytes> open(const Key& key, std::span<const std::uint8_t> sealed) {
    if (sealed.size() < kNonceBytes + kTagBytes) {
        return std::nullopt;
    }
    const std::size_t length = sealed.size() - kNonceBytes - kTagBytes;
    auto ctx = newContext();
    check(EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr), "cipher init");
    check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(kNonceBytes), nullptr), "nonce length");
    check(EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), sealed.data()), "key setup");
    Bytes plain(length);
    int written = 0;
    check(EVP_DecryptUpdate(ctx.get(), plain.data(), &written, sealed.data() + kNonceBytes, static_cast<int>(length)),
          "decrypt");
    Bytes tag(sealed.end() - static_cast<std::ptrdiff_t>(kTagBytes), sealed.end());
    check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, static_cast<int>(kTagBytes), tag.data()), "tag");
    int tail = 0;
    if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + written, &tail) != 1) {
        return std::nullopt;
    }
    return plain;
}

void SeededBytes::fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t word = engine();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
            out[i] = static_cast<std::uint8_t>(word >> (8 * b));
        }
    }
}

Bytes SeededBytes::bytes(std::size_t count) {
    Bytes out(count);
    fill(out);
    return out;
}

}// namespace agora::escrow
