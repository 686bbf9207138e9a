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

#include <agora/metering/invoice.hpp>
#include <agora/metering/revenue_share.hpp>
#include <agora/metering/settlement.hpp>
#include <agora/metering/tracker.hpp>
#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>
#include <thread>

using namespace agora;
using namespace agora::metering;

namespace {

constexpr Timestamp kEpoch = 1'767'225'600;

UsageEvent calls(const std::string& asset, std::int64_t amount, Timestamp at, std::optional<std::string> id = {}) {
    return {asset, Metric::Calls, amount, at, "eu-cpu-1", std::move(id)};
}

RevenueShareTree leaf(const std::string& who, Rational share) { return {who, share, {}}; }

RevenueShareTree aliceTree() {
    RevenueShareTree bob{"bob-berlin-price-model", Rational(2, 5),
                         {leaf("bob", Rational(1, 2)), leaf("city-of-berlin", Rational(1, 4)),
                          leaf("berlin-police", Rational(1, 4))}};
    return {"alice-berlin-price-model", Rational(1),
            {leaf("alice", Rational(2, 5)), leaf("feature-forge", Rational(1, 10)), leaf("ml-hub-labs", Rational(1, 10)), bob}};
}

RevenueShareTree randomTree(std::mt19937_64& rng, int depth, const std::string& name, Rational share) {
    RevenueShareTree node{name, share, {}};
    if (depth == 0 || std::bernoulli_distribution(0.3)(rng)) {
        return node;
    }
    const int children = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<std::int64_t> weights;
    std::int64_t total = 0;
    for (int i = 0; i < children; ++i) {
        weights.push_back(std::uniform_int_distribution<std::int64_t>(1, 12)(rng));
        total += weights.back();
    }
    for (int i = 0; i < children; ++i) {
        node.children.push_back(randomTree(rng, depth - 1, name + "." + std::to_string(i), Rational(weights[i], total)));
    }
    return node;
}

/// Exact leaf shares as rationals, depth first.
void exactShares(const RevenueShareTree& node, Rational carried, std::vector<std::pair<std::string, Rational>>& out) {
    if (node.children.empty()) {
        out.emplace_back(node.beneficiary, carried);
        return;
    }
    for (const auto& c : node.children) {
        exactShares(c, carried * c.share, out);
    }
}

int depthOf(const RevenueShareTree& node) {
    int d = 0;
    for (const auto& c : node.children) {
        d = std::max(d, depthOf(c));
    }
    return d + 1;
}

class FlakyBackend : public PaymentBackend {
  public:
    explicit FlakyBackend(int failures) : failures(failures) {}
    BackendOutcome execute(const PaymentTxn& txn) override {
        ++calls;
        if (failures-- > 0) {
            return BackendOutcome::Unavailable;
        }
        return inner.execute(txn);
    }
    int failures;
    int calls = 0;
    InMemoryBackend inner;
};

}// namespace

TEST_CASE("events land in the tumbling window containing them", "[tracker]") {
    Tracker tracker(60);
    CHECK(tracker.window_start(kEpoch + 59) == kEpoch);
    CHECK(tracker.window_start(-1) == -60);
    tracker.track(calls("m", 5, kEpoch + 1));
    tracker.track(calls("m", 7, kEpoch + 59));
    tracker.track(calls("m", 1, kEpoch + 60));
    auto first = tracker.flush_window(kEpoch + 60);
    REQUIRE(first.size() == 1);
    CHECK(first[0] == AggregatedCounter{kEpoch, kEpoch + 60, "m", Metric::Calls, 12});
    CHECK_THROWS_AS(tracker.track(calls("m", 1, kEpoch + 30)), LateEvent);
    CHECK(tracker.late_events() == 1);
    CHECK(tracker.flush_window(kEpoch + 60).empty());
    CHECK(tracker.flush_window(kEpoch + 120).at(0).total == 1);
    CHECK_THROWS_AS(tracker.track(calls("m", -1, kEpoch + 200)), AgoraError);
    CHECK_THROWS_AS(tracker.track(calls("", 1, kEpoch + 200)), AgoraError);
}

TEST_CASE("re-delivered events are counted once", "[tracker]") {
    Tracker tracker(60);
    CHECK(tracker.track(calls("m", 5, kEpoch, "e1")) == TrackResult::Accepted);
    CHECK(tracker.track(calls("m", 5, kEpoch, "e1")) == TrackResult::Duplicate);
    CHECK(tracker.track(calls("m", 5, kEpoch)) == TrackResult::Accepted);
    CHECK(tracker.flush_window(kEpoch + 60).at(0).total == 10);
}

TEST_CASE("untrusted nodes cannot report usage", "[tracker]") {
    Tracker tracker(60, [](const std::string& node) { return node == "eu-cpu-1"; });
    CHECK_NOTHROW(tracker.track(calls("m", 1, kEpoch)));
    auto rogue = calls("m", 1, kEpoch);
    rogue.node = "rogue";
    CHECK_THROWS_AS(tracker.track(rogue), UntrustedNode);
}

TEST_CASE("tracker counters equal sort and sum", "[tracker][property]") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 20; ++round) {
        std::vector<UsageEvent> events;
        for (int i = 0; i < 500; ++i) {
            auto e = calls("asset-" + std::to_string(rng() % 4), static_cast<std::int64_t>(rng() % 100),
                           kEpoch + static_cast<Timestamp>(rng() % 600));
            e.metric = static_cast<Metric>(rng() % 4);
            if (rng() % 3 == 0) {
                e.event_id = "id-" + std::to_string(rng() % 200);
            }
            events.push_back(e);
        }
        Tracker tracker(60);
        for (const auto& e : events) {
            tracker.track(e);
        }
        CHECK(tracker.flush_window(kEpoch + 600) == testing::sort_and_sum(events, 60));
    }
}

TEST_CASE("concurrent tracking loses nothing", "[tracker][concurrency]") {
    Tracker tracker(60);
    std::vector<std::thread> workers;
    for (int w = 0; w < 8; ++w) {
        workers.emplace_back([&tracker, w] {
            for (int i = 0; i < 1000; ++i) {
                tracker.track(calls("m", 1, kEpoch + (i % 60), "w" + std::to_string(w) + "-" + std::to_string(i % 500)));
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
    CHECK(tracker.flush_window(kEpoch + 60).at(0).total == 8 * 500);
}

TEST_CASE("2,500 calls at one dollar per thousand bill exactly 2.5 dollars", "[invoice]") {
    Tracker tracker(60);
    for (int i = 0; i < 10; ++i) {
        tracker.track(calls("model", 250, kEpoch + i * 30 + 5, "c" + std::to_string(i)));
    }
    auto counters = tracker.flush_window(kEpoch + 300);
    std::map<std::string, asset::PricingModel> pricing{
        {"model", asset::PayPerUse{Money::units(1), asset::UsageUnit::PerThousandCalls}}};
    auto invoice = make_invoice(counters, pricing, kEpoch, kEpoch + 300);
    REQUIRE(invoice.lines.size() == 1);
    CHECK(invoice.lines[0].quantity == 2500);
    CHECK(invoice.total.micro_units == 2'500'000);
    CHECK(invoice.to_json()["total_micros"] == 2'500'000);
    CHECK(invoice.to_text().find(".50") != std::string::npos);
}

TEST_CASE("invoice lines", "[invoice]") {
    std::vector<AggregatedCounter> counters{
        {0, 60, "a", Metric::Calls, 1}, {0, 60, "a", Metric::Bytes, 99},  {0, 60, "b", Metric::Calls, 1},
        {0, 60, "c", Metric::Calls, 1}, {0, 60, "mb", Metric::Bytes, 1'500'000}, {600, 660, "a", Metric::Calls, 1000},
    };
    std::map<std::string, asset::PricingModel> pricing{
        {"a", asset::PayPerUse{Money::micros(1), asset::UsageUnit::PerThousandCalls}},
        {"b", asset::PayPerUse{Money::micros(1), asset::UsageUnit::PerThousandCalls}},
        {"c", asset::PayPerUse{Money::micros(1), asset::UsageUnit::PerThousandCalls}},
        {"mb", asset::PayPerUse{Money::units(2), asset::UsageUnit::PerMegabyte}},
        {"once", asset::PayOnce{Money::units(5)}},
        {"sub", asset::Subscription{Money::units(3), 100}},
    };
    auto invoice = make_invoice(counters, pricing, 0, 120);
    std::map<std::string, Money> byAsset;
    for (const auto& l : invoice.lines) {
        byAsset[l.asset] += l.amount;
    }
    CHECK(byAsset["a"] + byAsset["b"] + byAsset["c"] == Money{});
    CHECK(byAsset["mb"] == Money::units(3));
    CHECK(byAsset["once"] == Money::units(5));
    CHECK(byAsset["sub"] == Money::units(6));
    CHECK(invoice.total == Money::units(14));
    counters.push_back({0, 60, "unpriced", Metric::Calls, 1});
    CHECK_THROWS_AS(make_invoice(counters, pricing, 0, 120), MissingPricing);
}

TEST_CASE("invoice totals floor the exact amount", "[invoice][property]") {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 500; ++round) {
        std::vector<AggregatedCounter> counters;
        std::map<std::string, asset::PricingModel> pricing;
        __int128 exactNumerator = 0;
        for (int a = 0; a < 6; ++a) {
            auto name = "asset-" + std::to_string(a);
            auto unit = static_cast<asset::UsageUnit>(rng() % 4);
            const std::int64_t rate = static_cast<std::int64_t>(rng() % 5'000'000);
            pricing[name] = asset::PayPerUse{Money::micros(rate), unit};
            const Metric billed = unit == asset::UsageUnit::PerMegabyte ? Metric::Bytes
                                  : unit == asset::UsageUnit::PerHour   ? Metric::Seconds
                                                                        : Metric::Calls;
            const std::int64_t quantity = static_cast<std::int64_t>(rng() % 100'000);
            counters.push_back({0, 60, name, billed, quantity});
            const std::int64_t div = unit == asset::UsageUnit::PerCall            ? 1
                                     : unit == asset::UsageUnit::PerThousandCalls ? 1000
                                     : unit == asset::UsageUnit::PerMegabyte      ? 1'000'000
                                                                                  : 3600;
            exactNumerator += static_cast<__int128>(quantity) * rate * (9'000'000 / div);
        }
        auto invoice = make_invoice(counters, pricing, 0, 60);
        CHECK(invoice.total.micro_units == static_cast<std::int64_t>(exactNumerator / 9'000'000));
        for (const auto& line : invoice.lines) {
            CHECK(line.amount.micro_units >= 0);
        }
    }
}

TEST_CASE("pricing table documents", "[invoice]") {
    auto table = parse_pricing_table(testing::read_text(testing::source_dir() / "data/billing/pricing.json"));
    CHECK(table.at("alice-berlin-price-model")
          == asset::PricingModel{asset::PayPerUse{Money::units(1), asset::UsageUnit::PerThousandCalls}});
    auto events = parse_usage_log(testing::read_text(testing::source_dir() / "data/billing/usage-2500.ndjson"));
    CHECK(events.size() == 10);
    CHECK(parse_usage_log(serialize_usage_log(events)) == events);
    CHECK_THROWS_AS(parse_usage_log("{\"asset\": 3}\n"), InvalidUsageLog);
}

TEST_CASE("revenue split along Alice's lineage", "[split]") {
    auto split = split_payment(Money::micros(2'500'000), aliceTree());
    std::vector<std::pair<std::string, Money>> expected{
        {"alice", Money::micros(1'000'000)},         {"feature-forge", Money::micros(250'000)},
        {"ml-hub-labs", Money::micros(250'000)},     {"bob", Money::micros(500'000)},
        {"city-of-berlin", Money::micros(250'000)},  {"berlin-police", Money::micros(250'000)},
    };
    CHECK(split == expected);
    CHECK(check_revenue_share(aliceTree()).empty());
    auto broken = aliceTree();
    broken.children.pop_back();
    CHECK_FALSE(check_revenue_share(broken).empty());
    CHECK_THROWS_AS(split_payment(Money::units(1), broken), AgoraError);
    auto thirds = RevenueShareTree{"root", 1, {leaf("x", Rational(1, 3)), leaf("y", Rational(1, 3)), leaf("z", Rational(1, 3))}};
    auto cents = split_payment(Money::micros(100), thirds);
    CHECK(cents[0].second.micro_units == 34);
    CHECK(cents[1].second.micro_units == 33);
}

TEST_CASE("splits conserve the gross and stay near the exact share", "[split][property]") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 2000; ++i) {
        auto tree = randomTree(rng, 4, "r", Rational(1));
        Money gross = Money::micros(static_cast<std::int64_t>(rng() % 10'000'000'000ULL));
        auto split = split_payment(gross, tree);
        std::vector<std::pair<std::string, Rational>> exact;
        exactShares(tree, Rational(1), exact);
        REQUIRE(split.size() == exact.size());
        std::int64_t sum = 0;
        for (std::size_t k = 0; k < split.size(); ++k) {
            sum += split[k].second.micro_units;
            CHECK(split[k].first == exact[k].first);
            CHECK(split[k].second.micro_units >= 0);
            double ideal = static_cast<double>(gross.micro_units) * exact[k].second.to_double();
            CHECK(std::abs(static_cast<double>(split[k].second.micro_units) - ideal) <= depthOf(tree) + 1e-6 * ideal);
        }
        CHECK(sum == gross.micro_units);
    }
}

TEST_CASE("settlement confirms, retries and declines", "[settle]") {
    InMemoryBackend backend;
    backend.set_balance("charlie", Money::units(3));
    LedgerLog ledger;
    std::vector<PaymentTxn> txns{{"t1", "charlie", "alice", Money::units(2)},
                                 {"t2", "charlie", "bob", Money::units(2)},
                                 {"t3", "charlie", "bob", Money{}}};
    auto receipts = settle(txns, backend, ledger);
    CHECK(receipts[0].status == TxnStatus::Confirmed);
    CHECK(receipts[1].status == TxnStatus::Failed);
    CHECK(receipts[1].reason == "Declined");
    CHECK(receipts[2].reason == "InvalidAmount");
    CHECK(backend.balance("charlie") == Money::units(1));
    CHECK(backend.balance("alice") == Money::units(2));
    CHECK(txns[0].status == TxnStatus::Confirmed);
    CHECK(ledger.entries().size() == 6);
    CHECK(ledger.status("t1") == TxnStatus::Confirmed);
    CHECK_THROWS_AS(ledger.append({"t1", TxnStatus::Pending, 9}), AgoraError);
    CHECK_THROWS_AS(settle(txns, backend, ledger), AgoraError);
    CHECK(backend.execute(txns[0]) == BackendOutcome::Completed);
    CHECK(backend.balance("alice") == Money::units(2));
}

TEST_CASE("unavailable backends are retried with capped backoff", "[settle]") {
    std::vector<std::chrono::milliseconds> slept;
    RetryPolicy policy;
    policy.max_attempts = 4;
    policy.base_delay = std::chrono::milliseconds(100);
    policy.max_delay = std::chrono::milliseconds(300);
    policy.sleep = [&](std::chrono::milliseconds d) { slept.push_back(d); };
    CHECK(policy.delay_after(1).count() == 100);
    CHECK(policy.delay_after(2).count() == 200);
    CHECK(policy.delay_after(5).count() == 300);

    FlakyBackend twice(2);
    LedgerLog ledger;
    std::vector<PaymentTxn> one{{"t", "a", "b", Money::units(1)}};
    auto receipts = settle(one, twice, ledger, policy);
    CHECK(receipts[0].status == TxnStatus::Confirmed);
    CHECK(receipts[0].attempts == 3);
    CHECK(slept == std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(100), std::chrono::milliseconds(200)});

    FlakyBackend down(100);
    std::vector<PaymentTxn> other{{"u", "a", "b", Money::units(1)}};
    receipts = settle(other, down, ledger, policy);
    CHECK(receipts[0].status == TxnStatus::Failed);
    CHECK(receipts[0].reason == "BackendUnavailable");
    CHECK(down.calls == 4);
}
