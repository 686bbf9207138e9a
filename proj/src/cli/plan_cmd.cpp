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

#include <agora/execution/database.hpp>
#include <agora/execution/executor.hpp>
#include <agora/metering/usage.hpp>
#include <agora/planner/compliance.hpp>
#include <agora/planner/optimizer.hpp>
#include <agora/query/lowering.hpp>
#include <agora/query/parser.hpp>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace agora::cli {

namespace {

struct CompiledProgram {
    query::Program program;
    query::TableRegistry registry;
    std::vector<query::LogicalPlan> plans;
};

CompiledProgram compile(const std::string& path) {
    CompiledProgram c;
    c.program = query::split_program(query::parse_program(read_file(path)));
    if (c.program.queries.empty()) {
        throw UsageError("NoQuery", path + " contains no SELECT statement");
    }
    c.registry = query::TableRegistry(c.program.tables);
    for (const auto& q : c.program.queries) {
        c.plans.push_back(query::to_logical_plan(q, c.registry));
    }
    return c;
}

std::string firstLine(const std::string& text) { return text.substr(0, text.find('\n')); }

planner::CostModel costModel(Context& ctx) {
    return ctx.has_config() ? ctx.config().cost_model : planner::CostModel{};
}

/// Clears the data stream and reports the verdict the way scripts expect it.
int noCompliantPlan(Context& ctx, std::ostringstream& buffer, std::size_t query) {
    buffer.str({});
    ctx.out << "compliant=NC-impossible\n";
    ctx.err << fmt::format("error: NoCompliantPlan: query {} has no plan satisfying the compliance policies\n", query);
    return 1;
}

}// namespace

int plan_command(Context& ctx, const PlanArgs& args) {
    auto compiled = compile(args.sql);
    auto cm = costModel(ctx);
    const auto& policies = compiled.program.policies;
    std::ostringstream buffer;
    for (std::size_t i = 0; i < compiled.plans.size(); ++i) {
        const auto& lp = compiled.plans[i];
        if (compiled.plans.size() > 1) {
            buffer << fmt::format("-- query {}\n", i + 1);
        }
        std::span<const planner::CompliancePolicy> active;
        if (!args.ignore_policies) {
            active = policies;
        }
        auto best = planner::optimize(lp, compiled.registry, active, cm);
        if (!best) {
            return noCompliantPlan(ctx, buffer, i + 1);
        }
        buffer << planner::to_string(*best->root, args.explain);
        buffer << fmt::format("ships={}\n", planner::count_ships(*best->root));
        auto report = planner::check_plan(best->root, policies);
        for (const auto& v : report.violations) {
            buffer << fmt::format("violation {} breaks {}\n", firstLine(planner::to_string(*v.ship)),
                                  planner::to_string(v.policy));
        }
        buffer << fmt::format("cost={:.4f} compliant={}\n", best->cost, report.compliant() ? "C" : "NC");
    }
    ctx.out << buffer.str();
    return 0;
}

int run_query(Context& ctx, const RunArgs& args) {
    auto compiled = compile(args.sql);
    if (compiled.plans.size() != 1) {
        throw UsageError("InvalidArgument", "run expects exactly one SELECT statement");
    }
    const Config* config = ctx.has_config() ? &ctx.config() : nullptr;
    auto cm = config ? config->cost_model : planner::CostModel{};
    auto best = planner::optimize(compiled.plans.front(), compiled.registry, compiled.program.policies, cm);
    std::ostringstream buffer;
    if (!best) {
        return noCompliantPlan(ctx, buffer, 1);
    }
    auto nodes = config ? load_nodes(*config) : std::vector<execution::NodeExecutorInfo>{};
    add_builtin_nodes(nodes);
    auto classes = config ? load_variants(*config) : execution::builtin_relational_variants();
    auto authorities = config ? load_authorities(*config) : execution::AuthorityRegistry{};
    std::optional<Money> budget;
    if (!args.budget.empty()) {
        budget = parse_money_option(args.budget, "--budget");
    }
    auto plan = execution::select_variants(best->root, classes, nodes, budget, authorities, args.at);
    auto database = execution::generate_database(compiled.registry, ctx.seed, args.max_rows);
    auto result = execution::execute_plan(plan, database, args.at);

    buffer << "plan:\n" << planner::to_string(*plan.plan);
    buffer << "bindings:\n";
    for (const auto& b : plan.bindings) {
        buffer << fmt::format("  {:<34} {:<26} {:<14} runtime={:.6f}s price={}\n", b.slot.label, b.variant.asset, b.node_id,
                              b.runtime, b.price.to_string());
    }
    buffer << fmt::format("estimated_runtime={:.6f}s estimated_price={}\n", plan.estimated_runtime,
                          plan.estimated_price.to_string());
    const auto& rel = result.result;
    buffer << fmt::format("result: {} column(s), {} row(s)\n", rel.columns.size(), rel.rows.size());
    std::string header;
    for (const auto& c : rel.columns) {
        header += (header.empty() ? "" : " | ") + c.name;
    }
    buffer << header << '\n';
    for (std::size_t r = 0; r < rel.rows.size() && r < args.limit; ++r) {
        std::string line;
        for (std::size_t c = 0; c < rel.rows[r].size(); ++c) {
            line += (c == 0 ? "" : " | ") + query::format_value(rel.rows[r][c]);
        }
        buffer << line << '\n';
    }
    if (rel.rows.size() > args.limit) {
        buffer << fmt::format("... {} more row(s)\n", rel.rows.size() - args.limit);
    }
    buffer << fmt::format("usage_events={}\n", result.events.size());
    if (!args.usage_out.empty()) {
        std::ofstream file(args.usage_out, std::ios::binary);
        if (!file) {
            throw AgoraError("WriteFailed", args.usage_out);
        }
        file << metering::serialize_usage_log(result.events);
    }
    ctx.out << buffer.str();
    return 0;
}

}// namespace agora::cli
