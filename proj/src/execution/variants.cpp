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

#include <agora/asset/descriptor_io.hpp>
#include <agora/asset/signature.hpp>
#include <agora/execution/variants.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <nlohmann/json.hpp>

namespace agora::execution {

namespace {

using asset::UsageUnit;

std::string goalOf(const planner::SiteNode& node) {
    return std::visit(
        [](const auto& op) -> std::string {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, planner::ScanOp>) {
                return "scan";
            } else if constexpr (std::is_same_v<T, planner::FilterOp>) {
                return "filter";
            } else if constexpr (std::is_same_v<T, planner::JoinOp>) {
                return "join";
            } else if constexpr (std::is_same_v<T, planner::AggregateOp>) {
                return "aggregate";
            } else if constexpr (std::is_same_v<T, planner::ProjectOp>) {
                return "project";
            } else {
                return "transfer";
            }
        },
        node.op);
}

void collectSlots(const planner::SiteNode& node, std::vector<Slot>& out) {
    for (const auto& child : node.children) {
        collectSlots(*child, out);
    }
    if (node.is_ship()) {
        return;
    }
    Slot slot;
    std::string goal = goalOf(node);
    slot.label = fmt::format("{}:{}@{}", out.size(), goal, to_string(node.exec_region));
    if (const auto* scan = std::get_if<planner::ScanOp>(&node.op)) {
        slot.label += "(" + scan->table + ")";
        slot.bytes = node.bytes();
    }
    for (const auto& child : node.children) {
        slot.bytes += child->bytes();
    }
    slot.class_key = asset::canonical_signature(operator_signature(node));
    slot.rows = planner::rows_in(node);
    slot.region = node.exec_region;
    slot.node = &node;
    out.push_back(std::move(slot));
}

std::int64_t usageCharge(const asset::PricingModel& pricing, const Slot& slot, double runtime) {
    if (const auto* once = std::get_if<asset::PayOnce>(&pricing)) {
        return once->price.micro_units;
    }
    if (const auto* sub = std::get_if<asset::Subscription>(&pricing)) {
        return sub->price.micro_units;
    }
    const auto& perUse = std::get<asset::PayPerUse>(pricing);
    double rate = static_cast<double>(perUse.rate.micro_units);
    switch (perUse.unit) {
        case UsageUnit::PerCall: return std::llround(rate * slot.rows);
        case UsageUnit::PerThousandCalls: return std::llround(rate * slot.rows / 1000.0);
        case UsageUnit::PerMegabyte: return std::llround(rate * slot.bytes / 1e6);
        case UsageUnit::PerHour: return std::llround(rate * runtime / 3600.0);
    }
    return 0;
}

struct Option {
    Assignment assignment;
    double runtime = 0;
    std::int64_t price = 0;
};

}// namespace

void add_variant(VariantClasses& classes, ImplementationVariant variant) {
    auto key = asset::canonical_signature(variant.implements);
    classes[key].push_back(std::move(variant));
}

asset::LogicalSignature operator_signature(const planner::SiteNode& node) {
    asset::LogicalSignature sig;
    sig.goal = goalOf(node);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        sig.inputs.emplace_back(asset::Category{"relation"});
    }
    sig.output = asset::Category{"relation"};
    return sig;
}

VariantClasses builtin_relational_variants() {
    VariantClasses classes;
    for (const auto& [goal, arity] : std::vector<std::pair<std::string, int>>{
             {"scan", 0}, {"filter", 1}, {"join", 2}, {"aggregate", 1}, {"project", 1}}) {
        ImplementationVariant v;
        v.asset = "builtin/" + goal;
        v.implements.goal = goal;
        for (int i = 0; i < arity; ++i) {
            v.implements.inputs.emplace_back(asset::Category{"relation"});
        }
        v.implements.output = asset::Category{"relation"};
        v.runtime_factor = 1e-6;
        v.price = asset::PayPerUse{Money{}, UsageUnit::PerCall};
        add_variant(classes, std::move(v));
    }
    return classes;
}

std::vector<Slot> build_slots(const planner::SiteNode& root) {
    std::vector<Slot> slots;
    collectSlots(root, slots);
    return slots;
}

double slot_runtime(const Slot& slot, const ImplementationVariant& variant, const NodeExecutorInfo& node) {
    return slot.rows * variant.runtime_factor / node.speed_factor;
}

Money slot_price(const Slot& slot, const ImplementationVariant& variant, const NodeExecutorInfo& node) {
    double runtime = slot_runtime(slot, variant, node);
    return Money::micros(usageCharge(variant.price, slot, runtime)) + Money::micros(usageCharge(node.price, slot, runtime));
}

std::vector<Assignment> select_assignment(const SelectionInput& input) {
    const std::size_t count = input.slots.size();
    std::vector<std::vector<Option>> options(count);
    for (std::size_t s = 0; s < count; ++s) {
        const auto& slot = input.slots[s];
        auto cls = input.classes.find(slot.class_key);
        if (cls == input.classes.end() || cls->second.empty()) {
            throw MissingVariant(slot.class_key);
        }
        for (std::size_t v = 0; v < cls->second.size(); ++v) {
            const auto& variant = cls->second[v];
            for (std::size_t n = 0; n < input.nodes.size(); ++n) {
                const auto& node = input.nodes[n];
                if (node.region != slot.region || !node.capabilities.contains(slot.capability)
                    || !verify_certificates(node, variant.required_certificates, input.now, input.authorities)) {
                    continue;
                }
                Option option{{v, n}, slot_runtime(slot, variant, node), slot_price(slot, variant, node).micro_units};
                bool dominated = std::any_of(options[s].begin(), options[s].end(), [&](const Option& o) {
                    return o.runtime <= option.runtime && o.price <= option.price;
                });
                if (!dominated) {
                    options[s].push_back(option);
                }
            }
        }
        if (options[s].empty()) {
            throw NoEligibleNode(slot.label);
        }
    }

    std::vector<double> minRuntime(count + 1, 0.0);
    std::vector<std::int64_t> minPrice(count + 1, 0);
    for (std::size_t s = count; s-- > 0;) {
        double r = std::numeric_limits<double>::infinity();
        std::int64_t p = std::numeric_limits<std::int64_t>::max();
        for (const auto& o : options[s]) {
            r = std::min(r, o.runtime);
            p = std::min(p, o.price);
        }
        minRuntime[s] = minRuntime[s + 1] + r;
        minPrice[s] = minPrice[s + 1] + p;
    }
    if (input.budget && minPrice[0] > input.budget->micro_units) {
        throw BudgetInfeasible(Money::micros(minPrice[0]));
    }

    std::vector<Assignment> current(count);
    std::vector<Assignment> best;
    double bestRuntime = std::numeric_limits<double>::infinity();
    std::int64_t bestPrice = std::numeric_limits<std::int64_t>::max();
    const std::int64_t budget = input.budget ? input.budget->micro_units : std::numeric_limits<std::int64_t>::max();

    auto search = [&](auto&& self, std::size_t s, double runtime, std::int64_t price) -> void {
        if (s == count) {
            if (runtime < bestRuntime || (runtime == bestRuntime && price < bestPrice)) {
                bestRuntime = runtime;
                bestPrice = price;
                best = current;
            }
            return;
        }
        for (const auto& o : options[s]) {
            std::int64_t nextPrice = price + o.price;
            if (nextPrice > budget - minPrice[s + 1]) {
                continue;
            }
            double nextRuntime = runtime + o.runtime;
            double bound = nextRuntime + minRuntime[s + 1];
            if (bound > bestRuntime + 1e-9 * std::max(1.0, std::abs(bestRuntime))) {
                continue;
            }
            current[s] = o.assignment;
            self(self, s + 1, nextRuntime, nextPrice);
        }
    };
    search(search, 0, 0.0, 0);
    return best;
}

ExecutionPlan bind_slots(std::span<const Slot> slots, const VariantClasses& classes,
                         std::span<const NodeExecutorInfo> nodes, std::optional<Money> budget,
                         const AuthorityRegistry& authorities, Timestamp now) {
    auto assignment = select_assignment({slots, classes, nodes, budget, authorities, now});
    ExecutionPlan plan;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        const auto& variant = classes.at(slots[s].class_key).at(assignment[s].variant);
        const auto& node = nodes[assignment[s].node];
        OperatorBinding binding{slots[s], variant, node.node_id, slot_runtime(slots[s], variant, node),
                                slot_price(slots[s], variant, node)};
        plan.estimated_runtime += binding.runtime;
        plan.estimated_price += binding.price;
        plan.bindings.push_back(std::move(binding));
    }
    return plan;
}

ExecutionPlan select_variants(const planner::SitePtr& plan, const VariantClasses& classes,
                              std::span<const NodeExecutorInfo> nodes, std::optional<Money> budget,
                              const AuthorityRegistry& authorities, Timestamp now) {
    auto slots = build_slots(*plan);
    auto bound = bind_slots(slots, classes, nodes, budget, authorities, now);
    bound.plan = plan;
    return bound;
}

nlohmann::json to_json(const ImplementationVariant& v) {
    return {{"asset", v.asset},
            {"implements", asset::to_json(v.implements)},
            {"runtime_factor", v.runtime_factor},
            {"price", asset::to_json(v.price)},
            {"required_certificates", asset::to_json(v.required_certificates)}};
}

ImplementationVariant variant_from_json(const nlohmann::json& doc) {
    ImplementationVariant v;
    try {
        v.asset = doc.at("asset").get<std::string>();
        v.implements = asset::signature_from_json(doc.at("implements"), "implements");
        if (doc.contains("runtime_factor")) {
            v.runtime_factor = doc.at("runtime_factor").get<double>();
        }
        v.price = asset::pricing_from_json(doc.at("price"), "price");
        if (doc.contains("required_certificates")) {
            v.required_certificates = asset::requirements_from_json(doc.at("required_certificates"), "required_certificates");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("InvalidVariant", e.what());
    }
    if (!std::isfinite(v.runtime_factor) || v.runtime_factor <= 0) {
        throw UsageError("InvalidVariant", v.asset + ": runtime_factor must be positive");
    }
    return v;
}

std::vector<ImplementationVariant> parse_variants(std::string_view text) {
    std::vector<ImplementationVariant> out;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(begin, end - begin);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                out.push_back(variant_from_json(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::parse_error& e) {
                throw UsageError("InvalidVariant", e.what());
            }
        }
        begin = end + 1;
    }
    return out;
}

}// namespace agora::execution
