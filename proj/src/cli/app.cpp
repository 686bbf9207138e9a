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

#include "commands.hpp"

#include <CLI11.hpp>
#include <agora/cli/app.hpp>
#include <fmt/format.h>
#include <functional>
#include <sstream>

namespace agora::cli {

namespace {

void addRange(CLI::Option* option, double lo, double hi) { option->check(CLI::Range(lo, hi)); }

}// namespace

CommandOutput run_command(std::span<const std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Context ctx(out, err);
    std::string configPath;
    std::function<int()> action;

    CLI::App app{"Asset ecosystem toolkit: catalog, compliant planning, execution, billing and escrow", "agora"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--config", configPath, "Configuration file (JSON)");
    app.add_option("--seed", ctx.seed, "Seed for generated data and simulations");
    app.add_flag("--verbose", ctx.verbose, "Echo applied configuration defaults");

    auto* catalogCmd = app.add_subcommand("catalog", "Publish, search and match assets");
    catalogCmd->require_subcommand(1);
    PublishArgs publish;
    auto* publishCmd = catalogCmd->add_subcommand("publish", "Publish descriptors (one JSON document per line)");
    publishCmd->add_option("file", publish.file, "Descriptor file")->required();
    publishCmd->add_option("--market", publish.market, "Target marketplace (default: first configured)");
    publishCmd->add_flag("--dry-run", publish.dry_run, "Validate and index without writing");
    publishCmd->callback([&] { action = [&] { return catalog_publish(ctx, publish); }; });

    SearchArgs search;
    auto* searchCmd = catalogCmd->add_subcommand("search", "Keyword search over all marketplaces");
    searchCmd->add_option("keywords", search.keywords, "Keywords that must all match");
    searchCmd->add_option("--goal", search.goal, "Restrict to a goal");
    searchCmd->add_option("--kind", search.kind, "Restrict to an asset kind");
    searchCmd->callback([&] { action = [&] { return catalog_search(ctx, search); }; });

    MatchArgs match;
    auto* matchCmd = catalogCmd->add_subcommand("match", "Rank assets and compositions for a request");
    matchCmd->add_option("--goal", match.goal, "Requested goal")->required();
    matchCmd->add_option("--bound", match.bounds, "Quality bound such as mae<=5000 (repeatable)");
    matchCmd->add_option("--keyword", match.keywords, "Required keyword (repeatable)");
    matchCmd->add_option("--budget", match.budget, "Maximum nominal price, e.g. $25");
    matchCmd->add_option("--output-category", match.output_category, "Required output category");
    matchCmd->add_option("--limit", match.limit, "Rows to print");
    matchCmd->callback([&] { action = [&] { return catalog_match(ctx, match); }; });

    PlanArgs plan;
    auto* planCmd = app.add_subcommand("plan", "Find the cheapest compliant site plan");
    planCmd->add_option("--sql", plan.sql, "Program with REGISTER TABLE, CONSTRAINT and SELECT statements")->required();
    planCmd->add_flag("--explain", plan.explain, "Annotate operators with estimated rows and bytes");
    planCmd->add_flag("--ignore-policies", plan.ignore_policies, "Optimize without policies and report violations");
    planCmd->callback([&] { action = [&] { return plan_command(ctx, plan); }; });

    RunArgs run;
    auto* runCmd = app.add_subcommand("run", "Plan, bind and execute a query over generated data");
    runCmd->add_option("--sql", run.sql, "Program with one SELECT statement")->required();
    runCmd->add_option("--budget", run.budget, "Price limit for the variant assignment");
    runCmd->add_option("--at", run.at, "Execution timestamp (seconds)");
    runCmd->add_option("--usage-out", run.usage_out, "Write usage events to this file");
    runCmd->add_option("--max-rows", run.max_rows, "Rows generated per table")->check(CLI::PositiveNumber);
    runCmd->add_option("--limit", run.limit, "Result rows to print");
    runCmd->callback([&] { action = [&] { return run_query(ctx, run); }; });

    BillArgs bill;
    auto* billCmd = app.add_subcommand("bill", "Aggregate a usage log and print the invoice");
    billCmd->add_option("--usage", bill.usage, "Usage log (one JSON event per line)")->required();
    billCmd->add_option("--pricing", bill.pricing, "Pricing table (JSON object asset -> pricing)");
    billCmd->add_option("--start", bill.start, "Period start (default: first event's window)");
    billCmd->add_option("--end", bill.end, "Period end (default: end of the last event's window)");
    billCmd->add_flag("--json", bill.json, "Print the invoice as JSON");
    billCmd->callback([&] { action = [&] { return bill_command(ctx, bill); }; });

    auto* escrowCmd = app.add_subcommand("escrow", "Escrow transfer protocol");
    escrowCmd->require_subcommand(1);
    EscrowArgs escrowArgs;
    auto* simulateCmd = escrowCmd->add_subcommand("simulate", "Run one transfer over the simulated network");
    simulateCmd->add_option("--bytes", escrowArgs.bytes, "Bytes to transfer");
    simulateCmd->add_option("--chunk", escrowArgs.chunk, "Chunk size in bytes");
    addRange(simulateCmd->add_option("--drop", escrowArgs.drop, "Message drop probability"), 0.0, 0.999999);
    addRange(simulateCmd->add_option("--dup", escrowArgs.dup, "Message duplication probability"), 0.0, 0.999999);
    simulateCmd->add_option("--retries", escrowArgs.retries, "Resends per message")->check(CLI::NonNegativeNumber);
    simulateCmd->add_option("--max-delay", escrowArgs.max_delay, "Extra delivery delay in steps")->check(CLI::NonNegativeNumber);
    simulateCmd->add_option("--tamper", escrowArgs.tamper, "Corrupt this chunk's ciphertext in transit");
    simulateCmd->add_option("--price", escrowArgs.price, "Price per chunk");
    simulateCmd->add_flag("--summary-only", escrowArgs.summary_only, "Print only the outcome line");
    simulateCmd->callback([&] { action = [&] { return escrow_simulate(ctx, escrowArgs); }; });

    std::string persona;
    auto* demoCmd = app.add_subcommand("demo", "Scripted walkthroughs of the Bob, Alice and Charlie scenarios");
    demoCmd->add_option("persona", persona, "bob, alice or charlie")->required()->check(CLI::IsMember({"bob", "alice", "charlie"}));
    demoCmd->callback([&] { action = [&] { return demo_command(ctx, persona); }; });

    CommandOutput result;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (!configPath.empty()) {
            ctx.config_path = configPath;
        }
        result.exit_code = action ? action() : 0;
    } catch (const CLI::ParseError& e) {
        out.str({});
        const int code = app.exit(e, out, err);
        result.exit_code = code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        out.str({});
        err << "error: " << e.what() << '\n';
        result.exit_code = 2;
    } catch (const std::exception& e) {
        out.str({});
        err << "error: " << e.what() << '\n';
        result.exit_code = 1;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

}// namespace agora::cli
