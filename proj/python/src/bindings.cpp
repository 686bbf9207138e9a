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

#include <agora/cli/app.hpp>
#include <agora/common/error.hpp>
#include <agora/escrow/crypto.hpp>
#include <agora/escrow/session.hpp>
#include <agora/metering/revenue_share.hpp>
#include <agora/planner/compliance.hpp>
#include <agora/planner/optimizer.hpp>
#include <agora/query/lowering.hpp>
#include <agora/query/parser.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace agora;

namespace {

Region regionArg(const std::string& text) {
    auto region = parse_region(text);
    if (!region) {
        throw UsageError("InvalidRegion", "unknown region " + text);
    }
    return *region;
}

metering::RevenueShareTree treeArg(const py::dict& node) {
    metering::RevenueShareTree tree;
    tree.beneficiary = node["beneficiary"].cast<std::string>();
    if (node.contains("share")) {
        tree.share = Rational::parse(node["share"].cast<std::string>());
    }
    if (node.contains("children")) {
        for (const auto& child : node["children"]) {
            tree.children.push_back(treeArg(child.cast<py::dict>()));
        }
    }
    return tree;
}

py::object planQuery(const std::string& sql, const std::map<std::pair<std::string, std::string>, double>& shipCosts,
                     std::optional<double> defaultShipCost, bool ignorePolicies) {
    auto program = query::split_program(query::parse_program(sql));
    if (program.queries.size() != 1) {
        throw UsageError("InvalidQuery", "expected exactly one SELECT statement");
    }
    query::TableRegistry registry(program.tables);
    auto logical = query::to_logical_plan(program.queries.front(), registry);
    planner::CostModel costs;
    for (const auto& [pair, rate] : shipCosts) {
        costs.ship_cost_per_byte[{regionArg(pair.first), regionArg(pair.second)}] = rate;
    }
    if (defaultShipCost) {
        costs.default_ship_cost_per_byte = *defaultShipCost;
    }
    costs.validate();
    std::vector<planner::CompliancePolicy> policies;
    if (!ignorePolicies) {
        policies = program.policies;
    }
    auto best = planner::optimize(logical, registry, policies, costs);
    if (!best) {
        return py::none();
    }
    py::dict result;
    result["plan"] = planner::to_string(*best->root);
    result["cost"] = best->cost;
    result["compliant"] = planner::check_plan(best->root, program.policies).compliant();
    return result;
}

py::dict escrowSession(const py::bytes& payload, std::uint64_t seed, double dropRate, double dupRate, int maxRetries,
                       std::size_t chunkBytes, std::optional<std::size_t> tamperChunk) {
    const std::string raw = payload;
    escrow::SimNetConfig net{seed, dropRate, dupRate, 3, maxRetries};
    escrow::validate(net);
    escrow::SessionOptions options;
    options.chunk_bytes = chunkBytes;
    options.tamper_chunk = tamperChunk;
    metering::InMemoryBackend backend;
    auto transcript = escrow::run_session(
        std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()), net, backend, options);
    py::dict result;
    result["completed"] = transcript.outcome == escrow::SessionOutcome::Completed;
    result["abort_reason"] = transcript.abort_reason;
    result["chunks"] = transcript.chunks;
    result["received"] = py::bytes(reinterpret_cast<const char*>(transcript.received.data()), transcript.received.size());
    result["transcript"] = transcript.text();
    return result;
}

}// namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Data marketplace planning, metering and escrow primitives";
    py::register_exception<AgoraError>(m, "AgoraError");

    m.def(
        "run_command",
        [](const std::vector<std::string>& args) {
            auto result = cli::run_command(args);
            return py::make_tuple(result.exit_code, result.out, result.err);
        },
        py::arg("args"), "Runs one agora command line and returns (exit_code, stdout, stderr).");

    m.def("plan_query", &planQuery, py::arg("sql"), py::arg("ship_costs") = std::map<std::pair<std::string, std::string>, double>{},
          py::arg("default_ship_cost") = py::none(), py::arg("ignore_policies") = false,
          "Optimizes the single SELECT in an extended-SQL program. Returns None when no compliant plan exists.");

    m.def(
        "split_payment",
        [](std::int64_t grossMicros, const py::dict& tree) {
            auto parsed = treeArg(tree);
            if (auto problems = metering::check_revenue_share(parsed); !problems.empty()) {
                throw AgoraError("InvalidRevenueShare", problems.front());
            }
            std::vector<std::pair<std::string, std::int64_t>> out;
            for (const auto& [who, amount] : metering::split_payment(Money::micros(grossMicros), parsed)) {
                out.emplace_back(who, amount.micro_units);
            }
            return out;
        },
        py::arg("gross_micros"), py::arg("tree"), "Splits a payment in micro-units over a revenue-share tree.");

    m.def("escrow_session", &escrowSession, py::arg("data"), py::arg("seed") = 0, py::arg("drop_rate") = 0.0,
          py::arg("dup_rate") = 0.0, py::arg("max_retries") = 10, py::arg("chunk_bytes") = 4096,
          py::arg("tamper_chunk") = py::none(), "Simulates one escrowed transfer over a lossy network.");

    m.def(
        "sha256_hex",
        [](const py::bytes& payload) {
            const std::string raw = payload;
            auto d = escrow::digest(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
            return escrow::to_hex(d);
        },
        py::arg("data"));
}
