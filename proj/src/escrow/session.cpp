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

#include <agora/escrow/session.hpp>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <random>
#include <set>

namespace agora::escrow {

namespace {

enum class Role { Sender, Receiver, Mediator };

std::string_view roleName(Role role) {
    switch (role) {
    case Role::Sender: return "sender";
    case Role::Receiver: return "receiver";
    case Role::Mediator: return "mediator";
    }
    return "?";
}

enum class MsgType { Deposit, Manifest, Ready, Ciphertext, PaymentNotice, KeyRelease, Refusal, DecryptAck, Dispute, Ack };

std::string_view typeName(MsgType type) {
    switch (type) {
    case MsgType::Deposit: return "Deposit";
    case MsgType::Manifest: return "Manifest";
    case MsgType::Ready: return "Ready";
    case MsgType::Ciphertext: return "Ciphertext";
    case MsgType::PaymentNotice: return "PaymentNotice";
    case MsgType::KeyRelease: return "KeyRelease";
    case MsgType::Refusal: return "Refusal";
    case MsgType::DecryptAck: return "DecryptAck";
    case MsgType::Dispute: return "Dispute";
    case MsgType::Ack: return "Ack";
    }
    return "?";
}

struct Message {
    std::uint64_t id = 0;
    Role from = Role::Sender;
    Role to = Role::Sender;
    MsgType type = MsgType::Ack;
    std::size_t chunk = 0;
    Bytes payload;
    std::optional<ChunkManifest> manifest;
    std::optional<Key> key;
    std::optional<metering::PaymentTxn> payment;
    std::uint64_t ack_of = 0;
    std::string note;
};

Message make(Role from, Role to, MsgType type, std::size_t chunk, std::string note = {}) {
    Message m;
    m.from = from;
    m.to = to;
    m.type = type;
    m.chunk = chunk;
    m.note = std::move(note);
    return m;
}

struct Pending {
    Message msg;
    std::int64_t deadline = 0;
    int attempts = 0;
};

constexpr std::int64_t kStepLimit = 10'000'000;

class Simulation {
  public:
    Simulation(std::span<const std::uint8_t> data, const SimNetConfig& net, metering::PaymentBackend& backend,
               const SessionOptions& options)
        : net(net), backend(backend), options(options), rng(net.seed),
          timeout(2 * (static_cast<std::int64_t>(net.max_delay_steps) + 1) + 1) {
        t.session_id = fmt::format("escrow-{}", net.seed);
        SeededBytes entropy(net.seed ^ 0x9e3779b97f4a7c15ULL);
        prepared = sender_prepare(data, options.chunk_bytes, options.price_per_chunk, entropy, t.session_id);
        t.chunks = prepared.manifests.size();
        senderState.assign(t.chunks, ChunkState::Init);
        receiverState.assign(t.chunks, ChunkState::Init);
        mediatorState.assign(t.chunks, ChunkState::Init);
        rxManifest.resize(t.chunks);
        rxCipher.resize(t.chunks);
        rxPlain.resize(t.chunks);
    }

    Transcript run() {
        for (std::size_t i = 0; i < t.chunks; ++i) {
            Message m = make(Role::Sender, Role::Mediator, MsgType::Deposit, i);
            m.manifest = prepared.manifests[i];
            m.key = prepared.keys[i];
            sendReliable(std::move(m));
        }
        while (!finished) {
            ++step;
            if (step > kStepLimit) {
                finish(SessionOutcome::Aborted, "step limit");
                break;
            }
            while (!finished && !inFlight.empty() && inFlight.begin()->first.first <= step) {
                Message m = std::move(inFlight.begin()->second);
                inFlight.erase(inFlight.begin());
                deliver(std::move(m));
            }
            if (!finished) {
                fireTimers();
            }
            if (!finished && inFlight.empty() && outboxesEmpty()) {
                finish(SessionOutcome::Aborted, "stalled");
            }
        }
        t.steps = step;
        return std::move(t);
    }

  private:
    const SimNetConfig& net;
    metering::PaymentBackend& backend;
    const SessionOptions& options;
    std::mt19937_64 rng;
    std::int64_t timeout;
    Transcript t;
    std::int64_t step = 0;
    std::uint64_t nextId = 1;
    std::uint64_t nextSeq = 0;
    bool finished = false;
    std::map<std::pair<std::int64_t, std::uint64_t>, Message> inFlight;
    std::array<std::map<std::uint64_t, Pending>, 3> outbox;
    std::array<std::set<std::uint64_t>, 3> seen;

    PreparedTransfer prepared;
    std::vector<ChunkState> senderState;
    std::vector<ChunkState> receiverState;
    std::vector<ChunkState> mediatorState;
    Mediator mediator;
    metering::LedgerLog ledger;
    std::vector<std::optional<ChunkManifest>> rxManifest;
    std::vector<std::optional<Bytes>> rxCipher;
    std::vector<std::optional<Bytes>> rxPlain;
    bool receiverAborted = false;
    std::size_t acknowledgedChunks = 0;

    static std::size_t index(Role role) { return static_cast<std::size_t>(role); }

    double uniform() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    std::int64_t delay() {
        return 1 + static_cast<std::int64_t>(rng() % (static_cast<std::uint64_t>(net.max_delay_steps) + 1));
    }

    void record(Role from, Role to, std::string_view type, const std::string& chunk, const std::string& detail) {
        t.records.push_back(
            fmt::format("step={} from={} to={} type={} chunk={} {}", step, roleName(from), roleName(to), type, chunk, detail));
    }

    void recordState(Role role, std::size_t chunk, ChunkState state, const std::string& reason = {}) {
        std::string detail(to_string(state));
        if (!reason.empty()) {
            detail += "(" + reason + ")";
        }
        record(role, role, "STATE", std::to_string(chunk), detail);
    }

    void transmit(const Message& m, int attempt) {
        const bool dropped = uniform() < net.drop_rate;
        const std::int64_t due = step + delay();
        const bool duplicated = !dropped && uniform() < net.dup_rate;
        const std::int64_t dupDue = step + delay();
        std::string detail = m.type == MsgType::Ack ? fmt::format("sent ack={}", m.ack_of)
                                                    : fmt::format("sent id={} attempt={}", m.id, attempt);
        detail += fmt::format(" payload={}", m.payload.size());
        if (!m.note.empty()) {
            detail += " " + m.note;
        }
        if (dropped) {
            detail += " dropped";
        }
        if (duplicated) {
            detail += " duplicated";
        }
        record(m.from, m.to, typeName(m.type), std::to_string(m.chunk), detail);
        if (!dropped) {
            inFlight.emplace(std::pair{due, nextSeq++}, m);
        }
        if (duplicated) {
            inFlight.emplace(std::pair{dupDue, nextSeq++}, m);
        }
    }

    void sendReliable(Message m) {
        m.id = nextId++;
        outbox[index(m.from)][m.id] = Pending{m, step + timeout, 1};
        transmit(m, 1);
    }

    bool outboxesEmpty() const {
        for (const auto& box : outbox) {
            if (!box.empty()) {
                return false;
            }
        }
        return true;
    }

    void fireTimers() {
        for (auto& box : outbox) {
            for (auto& [id, pending] : box) {
                if (pending.deadline > step) {
                    continue;
                }
                if (pending.attempts > net.max_retries) {
                    record(pending.msg.from, pending.msg.to, typeName(pending.msg.type),
                           std::to_string(pending.msg.chunk), fmt::format("retries exhausted id={}", id));
                    finish(SessionOutcome::Aborted, "timeout");
                    return;
                }
                ++pending.attempts;
                pending.deadline = step + timeout;
                transmit(pending.msg, pending.attempts);
            }
        }
    }

    void finish(SessionOutcome outcome, const std::string& reason) {
        if (finished) {
            return;
        }
        finished = true;
        t.outcome = outcome;
        if (t.abort_reason.empty()) {
            t.abort_reason = reason;
        }
        if (outcome == SessionOutcome::Completed) {
            for (const auto& piece : rxPlain) {
                t.received.insert(t.received.end(), piece->begin(), piece->end());
            }
            record(Role::Mediator, Role::Mediator, "SESSION", "*", "Completed");
        } else {
            record(Role::Mediator, Role::Mediator, "SESSION", "*", "Aborted(" + t.abort_reason + ")");
        }
    }

    void deliver(Message m) {
        const std::string chunk = std::to_string(m.chunk);
        if (m.type == MsgType::Ack) {
            record(m.from, m.to, "Ack", chunk, fmt::format("delivered ack={}", m.ack_of));
            auto& box = outbox[index(m.to)];
            auto it = box.find(m.ack_of);
            if (it != box.end()) {
                const Message acked = std::move(it->second.msg);
                box.erase(it);
                onAcknowledged(acked);
            }
            return;
        }
        const bool fresh = seen[index(m.to)].insert(m.id).second;
        record(m.from, m.to, typeName(m.type), chunk, fmt::format("{} id={}", fresh ? "delivered" : "duplicate", m.id));
        Message ack = make(m.to, m.from, MsgType::Ack, m.chunk);
        ack.ack_of = m.id;
        transmit(ack, 1);
        if (!fresh) {
            return;
        }
        switch (m.to) {
        case Role::Sender: senderReceive(m); break;
        case Role::Receiver: receiverReceive(m); break;
        case Role::Mediator: mediatorReceive(m); break;
        }
    }

    void onAcknowledged(const Message& m) {
        if (m.type == MsgType::Manifest && m.from == Role::Mediator) {
            sendReliable(make(Role::Mediator, Role::Sender, MsgType::Ready, m.chunk));
        }
    }

    void senderReceive(const Message& m) {
        if (m.type != MsgType::Ready || senderState[m.chunk] != ChunkState::Init) {
            return;
        }
        Message out = make(Role::Sender, Role::Receiver, MsgType::Ciphertext, m.chunk);
        out.payload = prepared.ciphertexts[m.chunk];
        if (options.tamper_chunk == m.chunk) {
            out.payload[out.payload.size() / 2] ^= 0x01;
        }
        sendReliable(std::move(out));
        senderState[m.chunk] = ChunkState::CiphertextSent;
        recordState(Role::Sender, m.chunk, ChunkState::CiphertextSent);
    }

    void receiverAbort(std::size_t chunk, const std::string& reason) {
        receiverAborted = true;
        receiverState[chunk] = ChunkState::Aborted;
        recordState(Role::Receiver, chunk, ChunkState::Aborted, reason);
        if (t.abort_reason.empty()) {
            t.abort_reason = reason;
        }
    }

    void receiverReceive(const Message& m) {
        if (receiverAborted) {
            return;
        }
        const std::size_t i = m.chunk;
        switch (m.type) {
        case MsgType::Manifest:
            rxManifest[i] = *m.manifest;
            tryVerify(i);
            break;
        case MsgType::Ciphertext:
            rxCipher[i] = m.payload;
            tryVerify(i);
            break;
        case MsgType::KeyRelease: {
            if (receiverState[i] != ChunkState::PaymentIssued) {
                return;
            }
            receiverState[i] = ChunkState::KeyReleased;
            recordState(Role::Receiver, i, ChunkState::KeyReleased);
            auto plain = open(*m.key, *rxCipher[i]);
            if (!plain) {
                receiverAbort(i, "DecryptFailed");
                sendReliable(make(Role::Receiver, Role::Mediator, MsgType::Dispute, i, "reason=DecryptFailed"));
                return;
            }
            rxPlain[i] = std::move(*plain);
            receiverState[i] = ChunkState::Completed;
            recordState(Role::Receiver, i, ChunkState::Completed);
            sendReliable(make(Role::Receiver, Role::Mediator, MsgType::DecryptAck, i));
            break;
        }
        case MsgType::Refusal:
            receiverAbort(i, "Refused");
            finish(SessionOutcome::Aborted, "Refused");
            break;
        default: break;
        }
    }

    void tryVerify(std::size_t i) {
        if (!rxManifest[i] || !rxCipher[i] || receiverState[i] != ChunkState::Init) {
            return;
        }
        if (receiver_verify_chunk(*rxCipher[i], *rxManifest[i]) != VerifyResult::Verified) {
            receiverAbort(i, "DigestMismatch");
            sendReliable(make(Role::Receiver, Role::Mediator, MsgType::Dispute, i, "reason=DigestMismatch"));
            return;
        }
        receiverState[i] = ChunkState::IntegrityVerified;
        recordState(Role::Receiver, i, ChunkState::IntegrityVerified);

        std::vector<metering::PaymentTxn> txns{metering::PaymentTxn{
            fmt::format("{}/chunk-{}", t.session_id, i), "receiver", "sender", rxManifest[i]->price}};
        auto receipts = metering::settle(txns, backend, ledger);
        const auto& txn = txns.front();
        record(Role::Receiver, Role::Sender, "PAYMENT", std::to_string(i),
               fmt::format("txn={} amount={} status={} attempts={}", txn.txn_id, txn.amount.to_string(),
                           metering::to_string(txn.status), receipts.front().attempts));
        t.payments.push_back(txn);
        if (txn.status != metering::TxnStatus::Confirmed) {
            receiverAbort(i, "PaymentFailed");
            finish(SessionOutcome::Aborted, "PaymentFailed");
            return;
        }
        receiverState[i] = ChunkState::PaymentIssued;
        recordState(Role::Receiver, i, ChunkState::PaymentIssued);
        Message notice = make(Role::Receiver, Role::Mediator, MsgType::PaymentNotice, i);
        notice.payment = txn;
        notice.note = "txn=" + txn.txn_id;
        sendReliable(std::move(notice));
    }

    void mediatorReceive(const Message& m) {
        const std::size_t i = m.chunk;
        switch (m.type) {
        case MsgType::Deposit: {
            mediator.register_chunk(*m.manifest, *m.key);
            mediatorState[i] = ChunkState::ManifestRegistered;
            recordState(Role::Mediator, i, ChunkState::ManifestRegistered);
            Message out = make(Role::Mediator, Role::Receiver, MsgType::Manifest, i);
            out.manifest = *m.manifest;
            out.note = "digest=" + to_hex(m.manifest->ciphertext_digest).substr(0, 16);
            sendReliable(std::move(out));
            break;
        }
        case MsgType::PaymentNotice: {
            metering::PaymentTxn payment = *m.payment;
            payment.status = ledger.status(payment.txn_id).value_or(metering::TxnStatus::Pending);
            auto result = mediator.release_key(i, payment);
            if (auto* key = std::get_if<KeyMessage>(&result)) {
                mediatorState[i] = ChunkState::KeyReleased;
                recordState(Role::Mediator, i, ChunkState::KeyReleased);
                Message out = make(Role::Mediator, Role::Receiver, MsgType::KeyRelease, i);
                out.key = key->key;
                sendReliable(std::move(out));
            } else {
                const auto& refusal = std::get<Refusal>(result);
                sendReliable(make(Role::Mediator, Role::Receiver, MsgType::Refusal, i, "reason=\"" + refusal.reason + "\""));
            }
            break;
        }
        case MsgType::DecryptAck:
            mediatorState[i] = ChunkState::Completed;
            recordState(Role::Mediator, i, ChunkState::Completed);
            if (++acknowledgedChunks == t.chunks) {
                finish(SessionOutcome::Completed, "");
            }
            break;
        case MsgType::Dispute:
            for (std::size_t c = 0; c < t.chunks; ++c) {
                if (mediatorState[c] != ChunkState::Completed) {
                    mediatorState[c] = ChunkState::Aborted;
                    recordState(Role::Mediator, c, ChunkState::Aborted, "Dispute");
                }
            }
            finish(SessionOutcome::Aborted, "Dispute");
            break;
        default: break;
        }
    }
};

}// namespace

void validate(const SimNetConfig& net) {
    auto rate = [](double r) { return std::isfinite(r) && r >= 0.0 && r < 1.0; };
    if (!rate(net.drop_rate) || !rate(net.dup_rate)) {
        throw UsageError("InvalidSimConfig", "drop and duplicate rates must lie in [0, 1)");
    }
    if (net.max_delay_steps < 0 || net.max_retries < 0) {
        throw UsageError("InvalidSimConfig", "max_delay_steps and max_retries must be non-negative");
    }
}

std::string Transcript::text() const {
    std::string out;
    for (const auto& line : records) {
        out += line;
        out += '\n';
    }
    return out;
}

Transcript run_session(std::span<const std::uint8_t> data, const SimNetConfig& net, metering::PaymentBackend& backend,
                       const SessionOptions& options) {
    validate(net);
    Simulation sim(data, net, backend, options);
    return sim.run();
}

}// namespace agora::escrow
