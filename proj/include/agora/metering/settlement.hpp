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

#ifndef AGORA_METERING_SETTLEMENT_HPP_
#define AGORA_METERING_SETTLEMENT_HPP_

#include <agora/common/money.hpp>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace agora::metering {

enum class TxnStatus { Pending, Confirmed, Failed };

std::string_view to_string(TxnStatus status);

struct PaymentTxn {
    std::string txn_id;
    std::string payer;
    std::string payee;
    Money amount;
    TxnStatus status = TxnStatus::Pending;
    friend bool operator==(const PaymentTxn&, const PaymentTxn&) = default;
};

enum class BackendOutcome { Completed, Declined, Unavailable };

/// Executes payments; implementations decide how money actually moves.
class PaymentBackend {
  public:
    virtual ~PaymentBackend() = default;
    /// Must be idempotent per txn_id: a repeated call for a completed transaction reports Completed again.
    virtual BackendOutcome execute(const PaymentTxn& txn) = 0;
};

/// Fee-free reference backend keeping balances in memory. Payers without a configured balance have unlimited credit.
class InMemoryBackend : public PaymentBackend {
  public:
    void set_balance(const std::string& account, Money balance);
    [[nodiscard]] Money balance(const std::string& account) const;
    BackendOutcome execute(const PaymentTxn& txn) override;

  private:
    mutable std::mutex mutex;
    std::map<std::string, Money> balances;
    std::set<std::string> funded;
    std::map<std::string, BackendOutcome> done;
};

struct LedgerEntry {
    std::string txn_id;
    TxnStatus status = TxnStatus::Pending;
    int attempt = 0;
    friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

/// Append-only transaction log. Throws AgoraError("LedgerViolation") on a transition out of Confirmed or Failed.
class LedgerLog {
  public:
    void append(const LedgerEntry& entry);
    [[nodiscard]] std::vector<LedgerEntry> entries() const;
    [[nodiscard]] std::optional<TxnStatus> status(const std::string& txnId) const;

  private:
    mutable std::mutex mutex;
    std::vector<LedgerEntry> log;
    std::map<std::string, TxnStatus> latest;
};

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds base_delay{50};
    std::chrono::milliseconds max_delay{1000};
    /// Called between attempts; the default does not sleep.
    std::function<void(std::chrono::milliseconds)> sleep;

    /// base_delay · 2^(attempt-1), capped at max_delay.
    [[nodiscard]] std::chrono::milliseconds delay_after(int attempt) const;
};

struct Receipt {
    std::string txn_id;
    TxnStatus status = TxnStatus::Pending;
    int attempts = 0;
    /// Empty for Confirmed; "Declined", "BackendUnavailable" or "InvalidAmount" otherwise.
    std::string reason;
};

/**
 * @brief Drives each pending transaction to Confirmed or Failed.
 * Unavailable outcomes are retried with capped exponential backoff up to max_attempts; Declined fails at once.
 * Every status change is appended to the ledger and written back into txns.
 */
std::vector<Receipt> settle(std::vector<PaymentTxn>& txns, PaymentBackend& backend, LedgerLog& ledger,
                            const RetryPolicy& policy = {});

}// namespace agora::metering

#endif// AGORA_METERING_SETTLEMENT_HPP_
