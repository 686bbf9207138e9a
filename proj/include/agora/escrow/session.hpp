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

#ifndef AGORA_ESCROW_SESSION_HPP_
#define AGORA_ESCROW_SESSION_HPP_

#include <agora/escrow/protocol.hpp>
#include <agora/metering/settlement.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace agora::escrow {

struct SimNetConfig {
    std::uint64_t seed = 0;
    double drop_rate = 0.0;
    double dup_rate = 0.0;
    int max_delay_steps = 3;
    int max_retries = 10;
};

/// Throws UsageError("InvalidSimConfig") when a field is out of range.
void validate(const SimNetConfig& net);

struct SessionOptions {
    std::size_t chunk_bytes = 4096;
    Money price_per_chunk = Money::micros(100'000);
    /// Flips one bit of this chunk's ciphertext on its way to the receiver.
    std::optional<std::size_t> tamper_chunk;
};

enum class SessionOutcome { Completed, Aborted };

struct Transcript {
    std::string session_id;
    SessionOutcome outcome = SessionOutcome::Aborted;
    /// Empty when Completed; "timeout", "DigestMismatch", "PaymentFailed", ... otherwise.
    std::string abort_reason;
    std::size_t chunks = 0;
    std::int64_t steps = 0;
    std::vector<std::string> records;
    std::vector<metering::PaymentTxn> payments;
    /// Plaintext the receiver reassembled; complete only when the session Completed.
    Bytes received;

    [[nodiscard]] std::string text() const;
};

/**
 * @brief Runs sender, receiver and mediator over a lossy simulated network until completion or abort.
 *
 * Each step delivers the messages due at that step in send order, then fires retransmission timers. Every
 * protocol message is acknowledged; unacknowledged messages are resent after a timeout, at most max_retries
 * times. The same seed always yields the same transcript.
 */
Transcript run_session(std::span<const std::uint8_t> data, const SimNetConfig& net, metering::PaymentBackend& backend,
                       const SessionOptions& options = {});

}// namespace agora::escrow

#endif// AGORA_ESCROW_SESSION_HPP_
