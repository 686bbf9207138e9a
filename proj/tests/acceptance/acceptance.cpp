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

#include <agora/cli/app.hpp>
#include <agora/escrow/session.hpp>
#include <agora/execution/executor.hpp>
#include <agora/execution/variants.hpp>
#include <agora/metering/invoice.hpp>
#include <agora/metering/revenue_share.hpp>
#include <agora/planner/compliance.hpp>
#include <agora/planner/optimizer.hpp>
#include <agora/query/lowering.hpp>
#include <agora/query/parser.hpp>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>

using namespace agora;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double secondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string dataPath(const std::string& relative) { return (testing::source_dir() / "data" / relative).string(); }

struct Scenario {
    query::Program program;
    query::TableRegistry registry;
    query::LogicalPlan plan;
};

Scenario scenario(const std::string& text) {
    Scenario s{query::split_program(query::parse_program(text)), {}, {}};
    s.registry = query::TableRegistry(s.program.tables);
    s.plan = query::to_logical_plan(s.program.queries.at(0), s.registry);
    return s;
}

planner::CostModel geoCosts() {
    planner::CostModel cm;
    cm.ship_cost_per_byte[{Region::NA, Region::EU}] = 0.0001;
    cm.ship_cost_per_byte[{Region::EU, Region::NA}] = 0.01;
    return cm;
}

Outcome geoPlanShape() {
    auto start = Clock::now();
    auto result = cli::run_command(std::vector<std::string>{"--config", dataPath("tpch_geo/config.json"), "plan", "--sql",
                                                            dataPath("tpch_geo/q10.sql")});
    const auto golden = testing::read_text(testing::source_dir() / "tests/golden/tpch_geo_q10_plan.txt");
    const bool shape = result.exit_code == 0 && result.out.find("SHIP ME->NA") != std::string::npos
                       && result.out.find("SHIP EU->NA") != std::string::npos
                       && result.out.find("SHIP NA->EU") == std::string::npos
                       && result.out.find("compliant=C") != std::string::npos;

    auto s = scenario(testing::read_text(dataPath("tpch_geo/q10.sql")));
    auto costs = geoCosts();
    planner::PlanFactory f(s.registry, costs);
    auto customerOrders = f.join(planner::JoinOp{{{"customer.c_custkey", "orders.o_custkey"}}}, f.scan("customer"),
                                 f.scan("orders"));
    auto withNation = f.join(planner::JoinOp{{{"customer.c_nationkey", "nation.n_nationkey"}}}, customerOrders,
                             f.ship(f.scan("nation"), Region::EU));
    auto shapeA = f.join(planner::JoinOp{{{"orders.o_orderkey", "lineitem.l_orderkey"}}}, withNation,
                         f.ship(f.scan("lineitem"), Region::EU));
    const auto violations = planner::check_plan(shapeA, s.program.policies).violations.size();
    const double elapsed = secondsSince(start);
    return {shape && result.out == golden && violations == 1 && elapsed < 1.0,
            fmt::format("golden={} shape={} lineitem_to_eu_violations={} time={:.3f}s", result.out == golden, shape, violations,
                        elapsed)};
}

Outcome bruteForceAgreement() {
    auto start = Clock::now();
    std::mt19937_64 rng(20240601);
    testing::RandomProgramOptions options;
    planner::CostModel cm;
    cm.ship_cost_per_byte[{Region::EU, Region::NA}] = 0.002;
    cm.ship_cost_per_byte[{Region::AS, Region::ME}] = 0.03;
    int discrepancies = 0;
    int infeasible = 0;
    const int instances = 500;
    for (int i = 0; i < instances; ++i) {
        auto s = scenario(testing::random_program(rng, options));
        auto best = planner::optimize(s.plan, s.registry, s.program.policies, cm);
        auto oracle = testing::brute_force_optimum(s.plan, s.registry, s.program.policies, cm);
        if (best.has_value() != oracle.best_cost.has_value()) {
            ++discrepancies;
            continue;
        }
        if (!best) {
            ++infeasible;
            continue;
        }
        const double tolerance = 1e-9 * std::max(1.0, std::abs(*oracle.best_cost));
        if (std::abs(best->cost - *oracle.best_cost) > tolerance
            || testing::oracle_violations(*best->root, s.program.policies) != 0) {
            ++discrepancies;
        }
    }
    const double elapsed = secondsSince(start);
    return {discrepancies == 0 && elapsed < 60.0,
            fmt::format("instances={} no_compliant_plan={} discrepancies={} time={:.2f}s", instances, infeasible,
                        discrepancies, elapsed)};
}

double medianSeconds(const std::function<void()>& fn, int repetitions) {
    std::vector<double> samples;
    for (int i = 0; i < repetitions; ++i) {
        auto start = Clock::now();
        fn();
        samples.push_back(secondsSince(start));
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

Outcome policyOverhead() {
    auto costs = geoCosts();
    std::string detail;
    bool pass = true;
    for (const auto* name : {"q3", "q10"}) {
        auto s = scenario(testing::read_text(dataPath(std::string("tpch_geo/") + name + ".sql")));
        const auto& policies = s.program.policies;
        const double free = medianSeconds([&] { (void)planner::optimize(s.plan, s.registry, {}, costs); }, 31);
        const double constrained = medianSeconds([&] { (void)planner::optimize(s.plan, s.registry, policies, costs); }, 31);
        const double ratio = constrained / free;
        pass = pass && ratio <= 5.0;
        detail += fmt::format("{}_ratio={:.2f} ", name, ratio);
    }
    auto s = scenario(testing::read_text(dataPath("tpch_geo/q10.sql")));
    auto unconstrained = planner::optimize(s.plan, s.registry, {}, costs);
    const bool nonCompliant = unconstrained && !planner::check_plan(unconstrained->root, s.program.policies).compliant();
    return {pass && nonCompliant, detail + fmt::format("no_policy_plan_noncompliant={}", nonCompliant)};
}

/// Demo training stage: fast linear regression or slow, cheap neural network on one GPU node.
testing::SelectionInstance charlieInstance() {
    testing::SelectionInstance in;
    auto variant = [](const std::string& id, double factor, std::int64_t microsPerThousand) {
        execution::ImplementationVariant v;
        v.asset = id;
        v.implements = {"regression", {asset::Category{"table"}}, asset::Category{"model"}};
        v.runtime_factor = factor;
        v.price = asset::PayPerUse{Money::micros(microsPerThousand), asset::UsageUnit::PerThousandCalls};
        return v;
    };
    execution::add_variant(in.classes, variant("linear-regression", 0.00125, 40'000));
    execution::add_variant(in.classes, variant("neural-network", 0.002, 10'000));
    execution::NodeExecutorInfo gpu;
    gpu.node_id = "eu-gpu-1";
    gpu.capabilities = {"ml"};
    in.nodes = {gpu};
    execution::Slot slot;
    slot.label = "train";
    slot.class_key = in.classes.begin()->first;
    slot.rows = 50'000;
    slot.capability = "ml";
    in.slots = {slot};
    in.eligible = {{{0, 0}, {1, 0}}};
    in.budget = Money::micros(1'500'000);
    return in;
}

Outcome variantSelection() {
    std::mt19937_64 rng(4242);
    int discrepancies = 0;
    int flips = 0;
    int feasible = 0;
    const int instances = 100;
    for (int i = 0; i < instances; ++i) {
        auto in = i == 0 ? charlieInstance() : testing::random_selection_instance(rng);
        auto solve = [&](std::optional<Money> budget) -> std::optional<std::vector<execution::Assignment>> {
            execution::SelectionInput input{in.slots, in.classes, in.nodes, budget, in.authorities, in.now};
            auto oracle = testing::exhaustive_assignment(in.slots, in.classes, in.nodes, in.eligible, budget);
            try {
                auto got = execution::select_assignment(input);
                if (!oracle.feasible || got != oracle.assignment) {
                    ++discrepancies;
                }
                return got;
            } catch (const execution::BudgetInfeasible& e) {
                if (oracle.feasible || e.minimum_price().micro_units != oracle.cheapest) {
                    ++discrepancies;
                }
            } catch (const execution::NoEligibleNode&) {
                bool anyEmpty = std::any_of(in.eligible.begin(), in.eligible.end(), [](const auto& o) { return o.empty(); });
                if (!anyEmpty) {
                    ++discrepancies;
                }
            }
            return std::nullopt;
        };
        auto unconstrained = solve(std::nullopt);
        auto budgeted = solve(in.budget);
        if (budgeted) {
            ++feasible;
        }
        if (unconstrained && budgeted) {
            for (std::size_t s = 0; s < in.slots.size(); ++s) {
                if ((*unconstrained)[s].variant != (*budgeted)[s].variant) {
                    ++flips;
                    break;
                }
            }
        }
    }
    return {discrepancies == 0 && flips >= 1,
            fmt::format("instances={} feasible={} budget_flips={} discrepancies={}", instances, feasible, flips,
                        discrepancies)};
}

metering::RevenueShareTree randomTree(std::mt19937_64& rng, int depth, int& serial) {
    metering::RevenueShareTree node{fmt::format("b{}", serial++), Rational(1), {}};
    if (depth == 0 || rng() % 3 == 0) {
        return node;
    }
    const auto n = static_cast<int>(rng() % 5 + 1);
    std::vector<std::int64_t> weights;
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        weights.push_back(static_cast<std::int64_t>(rng() % 97 + 1));
        total += weights.back();
    }
    for (int i = 0; i < n; ++i) {
        auto child = randomTree(rng, depth - 1, serial);
        child.share = Rational(weights[static_cast<std::size_t>(i)], total);
        node.children.push_back(std::move(child));
    }
    return node;
}

Outcome meteringAndSplits() {
    std::mt19937_64 rng(10'000);
    constexpr metering::Timestamp t0 = 1'767'225'600;
    std::vector<metering::UsageEvent> events;
    for (int i = 0; i < 10'000; ++i) {
        metering::UsageEvent e{fmt::format("asset-{}", rng() % 7), static_cast<metering::Metric>(rng() % 4),
                               static_cast<std::int64_t>(rng() % 1000), t0 + static_cast<metering::Timestamp>(rng() % 600),
                               "node", std::nullopt};
        if (rng() % 5 == 0) {
            e.event_id = fmt::format("ev-{}", rng() % 1500);
        }
        events.push_back(e);
    }
    metering::Tracker tracker(60);
    for (const auto& e : events) {
        tracker.track(e);
    }
    const auto counters = tracker.flush_window(t0 + 600);
    std::set<metering::Timestamp> windows;
    for (const auto& c : counters) {
        windows.insert(c.window_start);
    }
    const bool countersMatch = counters == testing::sort_and_sum(events, 60);

    metering::Tracker calls(60);
    for (int i = 0; i < 10; ++i) {
        calls.track({"model", metering::Metric::Calls, 250, t0 + i * 30 + 5, "node", fmt::format("c{}", i)});
    }
    auto billed = calls.flush_window(t0 + 300);
    std::map<std::string, asset::PricingModel> pricing{
        {"model", asset::PayPerUse{Money::units(1), asset::UsageUnit::PerThousandCalls}}};
    const auto invoiceMicros = metering::make_invoice(billed, pricing, t0, t0 + 300).total.micro_units;

    int conservationFailures = 0;
    for (int i = 0; i < 10'000; ++i) {
        int serial = 0;
        auto tree = randomTree(rng, 4, serial);
        const auto gross = Money::micros(static_cast<std::int64_t>(rng() % 1'000'000'000'000ULL));
        std::int64_t sum = 0;
        for (const auto& [who, amount] : metering::split_payment(gross, tree)) {
            sum += amount.micro_units;
        }
        if (sum != gross.micro_units) {
            ++conservationFailures;
        }
    }
    return {countersMatch && windows.size() == 10 && invoiceMicros == 2'500'000 && conservationFailures == 0,
            fmt::format("windows={} counters_match={} invoice_micros={} split_conservation_failures={}", windows.size(),
                        countersMatch, invoiceMicros, conservationFailures)};
}

Outcome escrowProtocol() {
    auto start = Clock::now();
    escrow::SeededBytes entropy(99);
    const auto data = entropy.bytes(20'000);
    int completed = 0;
    std::size_t atomicity = 0;
    std::size_t blindness = 0;
    int tamperLeaks = 0;
    int tamperRuns = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        metering::InMemoryBackend backend;
        auto t = escrow::run_session(data, {seed, 0.2, 0.0, 3, 10}, backend);
        if (t.outcome == escrow::SessionOutcome::Completed && t.received == data) {
            ++completed;
        }
        auto audit = testing::audit_transcript(t);
        atomicity += audit.atomicity.size();
        blindness += audit.blindness.size();
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        metering::InMemoryBackend backend;
        escrow::SessionOptions options;
        options.tamper_chunk = seed % 5;
        auto t = escrow::run_session(data, {seed, 0.2, 0.1, 3, 10}, backend, options);
        ++tamperRuns;
        auto audit = testing::audit_transcript(t);
        atomicity += audit.atomicity.size();
        blindness += audit.blindness.size();
        if (audit.paid_chunks.contains(*options.tamper_chunk) || audit.released_chunks.contains(*options.tamper_chunk)
            || t.outcome == escrow::SessionOutcome::Completed) {
            ++tamperLeaks;
        }
    }
    const double elapsed = secondsSince(start);
    return {completed == 100 && atomicity == 0 && blindness == 0 && tamperLeaks == 0 && elapsed < 30.0,
            fmt::format("completed={}/100 tamper_runs={} atomicity_violations={} blindness_violations={} "
                        "tampered_paid_or_released={} time={:.2f}s",
                        completed, tamperRuns, atomicity, blindness, tamperLeaks, elapsed)};
}

Outcome personaDemos() {
    int matched = 0;
    std::string detail;
    for (const auto* persona : {"bob", "alice", "charlie"}) {
        auto result = cli::run_command(
            std::vector<std::string>{"--config", dataPath("demo/config.json"), "demo", persona});
        auto golden = testing::read_text(testing::source_dir() / "tests/golden" / (std::string("demo_") + persona + ".txt"));
        const bool ok = result.exit_code == 0 && result.out == golden;
        matched += ok ? 1 : 0;
        detail += fmt::format("{}={} ", persona, ok ? "golden" : "differs");
    }
    return {matched == 3, detail + fmt::format("matched={}/3", matched)};
}

Outcome executionSoundness() {
    std::mt19937_64 rng(8080);
    testing::RandomProgramOptions options;
    options.max_tables = 5;
    options.max_rows = 200;
    planner::CostModel costs;
    std::vector<execution::NodeExecutorInfo> nodes;
    for (Region r : kAllRegions) {
        execution::NodeExecutorInfo node;
        node.node_id = fmt::format("local-{}", to_string(r));
        node.region = r;
        node.capabilities = {"relational"};
        nodes.push_back(node);
    }
    const auto classes = execution::builtin_relational_variants();
    int compared = 0;
    int mismatches = 0;
    int attempts = 0;
    while (compared < 200 && attempts < 2000) {
        ++attempts;
        auto s = scenario(testing::random_program(rng, options));
        auto best = planner::optimize(s.plan, s.registry, s.program.policies, costs);
        if (!best) {
            continue;
        }
        auto bound = execution::select_variants(best->root, classes, nodes, std::nullopt, {}, 0);
        auto db = execution::generate_database(s.registry, static_cast<std::uint64_t>(attempts), 200);
        auto got = execution::execute_plan(bound, db, 0).result.rows;
        if (!testing::same_rows(got, testing::reference_evaluate(s.program.queries[0], s.registry, db))) {
            ++mismatches;
        }
        ++compared;
    }
    return {compared >= 200 && mismatches == 0, fmt::format("queries={} mismatches={}", compared, mismatches)};
}

}// namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"compliant Q10 plan shape and non-compliant lineitem shipment", geoPlanShape},
        {"optimizer equals brute force on random instances", bruteForceAgreement},
        {"policy checking overhead and non-compliant unconstrained plans", policyOverhead},
        {"variant selection equals exhaustive enumeration", variantSelection},
        {"metering counters, invoice and split conservation", meteringAndSplits},
        {"escrow completion, atomicity and tamper safety", escrowProtocol},
        {"persona demos match golden transcripts", personaDemos},
        {"optimized plan execution equals reference evaluation", executionSoundness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failed += outcome.pass ? 0 : 1;
        fmt::print("{} criterion {}: {} ({})\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, outcome.detail);
    }
    return failed == 0 ? 0 : 1;
}
