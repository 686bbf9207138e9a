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

#include "oracles.hpp"

#include <agora/escrow/crypto.hpp>
#include <agora/escrow/protocol.hpp>
#include <agora/escrow/session.hpp>
#include <catch_amalgamated.hpp>
#include <sodium.h>

using namespace agora;
using namespace agora::escrow;

namespace {

Bytes payload(std::size_t size, std::uint64_t seed) {
    SeededBytes entropy(seed);
    return entropy.bytes(size);
}

metering::PaymentTxn confirmed(Money amount) {
    return {"txn", "receiver", "sender", amount, metering::TxnStatus::Confirmed};
}

}// namespace

TEST_CASE("digest is SHA-256", "[crypto]") {
    REQUIRE(sodium_init() >= 0);
    const std::string abc = "abc";
    CHECK(to_hex(digest({reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()}))
          == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    for (std::size_t size : {0, 1, 55, 56, 64, 1000, 65537}) {
        auto data = payload(size, size);
        Digest expected;
        crypto_hash_sha256(expected.data(), data.data(), data.size());
        CHECK(digest(data) == expected);
    }
}

TEST_CASE("sealed chunks open only under the right key", "[crypto]") {
    REQUIRE(sodium_init() >= 0);
    SeededBytes entropy(5);
    Key key;
    entropy.fill(key);
    std::array<std::uint8_t, kNonceBytes> nonce;
    entropy.fill(nonce);
    auto plain = payload(333, 1);
    auto sealed = seal(key, nonce, plain);
    CHECK(sealed.size() == kNonceBytes + plain.size() + kTagBytes);
    CHECK(std::equal(nonce.begin(), nonce.end(), sealed.begin()));
    CHECK(open(key, sealed) == plain);
    if (crypto_aead_aes256gcm_is_available()) {
        Bytes reference(plain.size() + crypto_aead_aes256gcm_ABYTES);
        unsigned long long length = 0;
        crypto_aead_aes256gcm_encrypt(reference.data(), &length, plain.data(), plain.size(), nullptr, 0, nullptr,
                                      nonce.data(), key.data());
        CHECK(Bytes(sealed.begin() + kNonceBytes, sealed.end()) == reference);
    }
    auto flipped = sealed;
    flipped[kNonceBytes + 7] ^= 0x01;
    CHECK_FALSE(open(key, flipped));
    Key other = key;
    other[0] ^= 0xff;
    CHECK_FALSE(open(other, sealed));
    CHECK_FALSE(open(key, Bytes(10)));
}

TEST_CASE("seeded bytes replay", "[crypto]") {
    CHECK(payload(64, 9) == payload(64, 9));
    CHECK(payload(64, 9) != payload(64, 10));
}

TEST_CASE("sender splits, seals and describes every chunk", "[protocol]") {
    auto data = payload(10'000, 2);
    SeededBytes entropy(3);
    auto prepared = sender_prepare(data, 4096, Money::micros(100'000), entropy, "s");
    REQUIRE(prepared.ciphertexts.size() == 3);
    Bytes joined;
    std::set<Key> keys;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& m = prepared.manifests[i];
        CHECK(m.chunk_index == i);
        CHECK(m.session_id == "s");
        CHECK(m.ciphertext_len == prepared.ciphertexts[i].size());
        CHECK(m.ciphertext_digest == digest(prepared.ciphertexts[i]));
        CHECK(receiver_verify_chunk(prepared.ciphertexts[i], m) == VerifyResult::Verified);
        auto plain = open(prepared.keys[i], prepared.ciphertexts[i]);
        REQUIRE(plain);
        joined.insert(joined.end(), plain->begin(), plain->end());
        keys.insert(prepared.keys[i]);
    }
    CHECK(joined == data);
    CHECK(keys.size() == 3);
    auto bad = prepared.ciphertexts[1];
    bad.back() ^= 0x80;
    CHECK(receiver_verify_chunk(bad, prepared.manifests[1]) == VerifyResult::DigestMismatch);
    CHECK(receiver_verify_chunk(prepared.ciphertexts[0], prepared.manifests[1]) == VerifyResult::DigestMismatch);
}

TEST_CASE("mediator releases keys only against confirmed, exact payment", "[protocol]") {
    auto data = payload(100, 4);
    SeededBytes entropy(4);
    auto prepared = sender_prepare(data, 64, Money::micros(100'000), entropy, "s");
    Mediator mediator;
    mediator.register_chunk(prepared.manifests[0], prepared.keys[0]);
    CHECK(mediator.registered(0));
    CHECK_FALSE(mediator.registered(1));
    CHECK_THROWS_AS(mediator.release_key(1, confirmed(Money::micros(100'000))), UnknownChunk);

    auto pending = confirmed(Money::micros(100'000));
    pending.status = metering::TxnStatus::Pending;
    CHECK(std::holds_alternative<Refusal>(mediator.release_key(0, pending)));
    CHECK(std::holds_alternative<Refusal>(mediator.release_key(0, confirmed(Money::micros(99'999)))));
    CHECK_FALSE(mediator.released(0));
    auto first = mediator.release_key(0, confirmed(Money::micros(100'000)));
    REQUIRE(std::holds_alternative<KeyMessage>(first));
    CHECK(std::get<KeyMessage>(first).key == prepared.keys[0]);
    CHECK(mediator.released(0));
    auto again = mediator.release_key(0, confirmed(Money::micros(100'000)));
    CHECK(std::get<KeyMessage>(again).key == prepared.keys[0]);
}

TEST_CASE("a clean network completes and delivers the data", "[session]") {
    auto data = payload(10'000, 6);
    metering::InMemoryBackend backend;
    auto t = run_session(data, SimNetConfig{1}, backend);
    CHECK(t.outcome == SessionOutcome::Completed);
    CHECK(t.abort_reason.empty());
    CHECK(t.chunks == 3);
    CHECK(t.received == data);
    CHECK(t.payments.size() == 3);
    CHECK(backend.balance("sender") == Money::micros(300'000));
    auto audit = testing::audit_transcript(t);
    CHECK(audit.atomicity.empty());
    CHECK(audit.blindness.empty());
    CHECK(audit.paid_chunks == std::set<std::size_t>{0, 1, 2});
    CHECK(audit.released_chunks == audit.paid_chunks);
}

TEST_CASE("lossy networks still complete atomically", "[session][property]") {
    auto data = payload(12'000, 7);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        metering::InMemoryBackend backend;
        SimNetConfig net{seed, 0.2, 0.1, 3, 10};
        auto t = run_session(data, net, backend, {3000, Money::micros(50'000), std::nullopt});
        INFO("seed " << seed);
        CHECK(t.outcome == SessionOutcome::Completed);
        CHECK(t.received == data);
        auto audit = testing::audit_transcript(t);
        CHECK(audit.atomicity.empty());
        CHECK(audit.blindness.empty());
        CHECK(audit.paid_chunks.size() == 4);
    }
}

TEST_CASE("tampered chunks are never paid for and never unlocked", "[session]") {
    auto data = payload(10'000, 8);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        metering::InMemoryBackend backend;
        SessionOptions options;
        options.tamper_chunk = seed % 3;
        auto t = run_session(data, SimNetConfig{seed, 0.1}, backend, options);
        CHECK(t.outcome == SessionOutcome::Aborted);
        CHECK(t.abort_reason == "DigestMismatch");
        auto audit = testing::audit_transcript(t);
        CHECK(audit.atomicity.empty());
        CHECK_FALSE(audit.paid_chunks.contains(*options.tamper_chunk));
        CHECK_FALSE(audit.released_chunks.contains(*options.tamper_chunk));
    }
}

TEST_CASE("a declined payment aborts the session", "[session]") {
    auto data = payload(5000, 9);
    metering::InMemoryBackend backend;
    backend.set_balance("receiver", Money::micros(150'000));
    auto t = run_session(data, SimNetConfig{2}, backend);
    CHECK(t.outcome == SessionOutcome::Aborted);
    CHECK(t.abort_reason == "PaymentFailed");
    auto audit = testing::audit_transcript(t);
    CHECK(audit.atomicity.empty());
    CHECK(audit.paid_chunks.size() == 1);
}

TEST_CASE("transcripts replay exactly", "[session]") {
    auto data = payload(9000, 10);
    SimNetConfig net{42, 0.3, 0.2, 4, 10};
    metering::InMemoryBackend a;
    metering::InMemoryBackend b;
    auto first = run_session(data, net, a);
    auto second = run_session(data, net, b);
    CHECK(first.text() == second.text());
    net.seed = 43;
    metering::InMemoryBackend c;
    CHECK(run_session(data, net, c).text() != first.text());
}

TEST_CASE("simulation settings are validated", "[session]") {
    CHECK_NOTHROW(validate(SimNetConfig{}));
    CHECK_THROWS_AS(validate(SimNetConfig{0, 1.0}), UsageError);
    CHECK_THROWS_AS(validate(SimNetConfig{0, 0.0, -0.1}), UsageError);
    CHECK_THROWS_AS(validate(SimNetConfig{0, 0.0, 0.0, -1}), UsageError);
    CHECK_THROWS_AS(validate(SimNetConfig{0, 0.0, 0.0, 3, -1}), UsageError);
}
