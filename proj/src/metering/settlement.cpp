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
#include <agora/metering/settlement.hpp>
#include <algorithm>

namespace agora::metering {

std::string_view to_string(TxnStatus status) {
    switch (status) {
        case TxnStatus::Pending: return "Pending";
        case TxnStatus::Confirmed: return "Confirmed";
        case TxnStatus::Failed: return "Failed";
    }
    return "?";
}

void InMemoryBackend::set_balance(const std::string& account, Money value) {
    std::lock_guard lock(mutex);
    balances[account] = value;
    funded.insert(account);
}

Money InMemoryBackend::balance(const std::string& account) const {
    std::lock_guard lock(mutex);
    auto it = balances.find(account);
    return it == balances.end() ? Money{} : it->second;
}

BackendOutcome InMemoryBackend::execute(const PaymentTxn& txn) {
    std::lock_guard lock(mutex);
    if (auto it = done.find(txn.txn_id); it != done.end()) {
        return it->second;
    }
    BackendOutcome outcome = BackendOutcome::Completed;
    const bool limited = funded.contains(txn.payer);
    if (txn.amount.micro_units <= 0 || (limited && balances[txn.payer] < txn.amount)) {
        outcome = BackendOutcome::Declined;
    } else {
        balances[txn.payer] -= txn.amount;
        balances[txn.payee] += txn.amount;
    }
    done.emplace(txn.txn_id, outcome);
    return outcome;
}

void LedgerLog::append(const LedgerEntry& entry) {
    std::lock_guard lock(mutex);
    auto it = latest.find(entry.txn_id);
    if (it != latest.end() && it->second != TxnStatus::Pending) {
        throw AgoraError("LedgerViolation", entry.txn_id + " is already " + std::string(to_string(it->second)));
    }
    log.push_back(entry);
    latest[entry.txn_id] = entry.status;
}

std::vector<LedgerEntry> LedgerLog::entries() const {
    std::lock_guard lock(mutex);
    return log;
}

std::optional<TxnStatus> LedgerLog::status(const std::string& txnId) const {
    std::lock_guard lock(mutex);
    auto it = latest.find(txnId);
    if (it == latest.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::chrono::milliseconds RetryPolicy::delay_after(int attempt) const {
    auto delay = base_delay;
    for (int i = 1; i < attempt && delay < max_delay; ++i) {
        delay *= 2;
    }
    return std::min(delay, max_delay);
}

std::vector<Receipt> settle(std::vector<PaymentTxn>& txns, PaymentBackend& backend, LedgerLog& ledger,
                            const RetryPolicy& policy) {
    std::vector<Receipt> receipts;
    for (auto& txn : txns) {
        if (txn.status != TxnStatus::Pending) {
            throw AgoraError("InvalidTransaction", txn.txn_id + " is not pending");
        }
        Receipt receipt{txn.txn_id, TxnStatus::Pending, 0, {}};
        ledger.append({txn.txn_id, TxnStatus::Pending, 0});
        if (txn.amount.micro_units <= 0) {
            receipt.status = TxnStatus::Failed;
            receipt.reason = "InvalidAmount";
        }
        while (receipt.status == TxnStatus::Pending) {
            ++receipt.attempts;
            BackendOutcome outcome = backend.execute(txn);
            if (outcome == BackendOutcome::Completed) {
                receipt.status = TxnStatus::Confirmed;
            } else if (outcome == BackendOutcome::Declined) {
                receipt.status = TxnStatus::Failed;
                receipt.reason = "Declined";
            } else if (receipt.attempts >= policy.max_attempts) {
                receipt.status = TxnStatus::Failed;
                receipt.reason = "BackendUnavailable";
            } else if (policy.sleep) {
                policy.sleep(policy.delay_after(receipt.attempts));
            }
        }
        txn.status = receipt.status;
        ledger.append({txn.txn_id, receipt.status, receipt.attempts});
        receipts.push_back(receipt);
    }
    return receipts;
}

}// namespace agora::metering
