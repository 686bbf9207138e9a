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

#ifndef AGORA_EXECUTION_VARIANTS_HPP_
#define AGORA_EXECUTION_VARIANTS_HPP_

#include <agora/execution/node.hpp>
#include <agora/planner/site_plan.hpp>
#include <map>
#include <optional>

namespace agora::execution {

/// One implementation of a logical operator.
struct ImplementationVariant {
    asset::AssetId asset;
    asset::LogicalSignature implements;
    /// Work units per input row.
    double runtime_factor = 1.0;
    asset::PricingModel price = asset::PayPerUse{};
    std::vector<asset::CertificateRequirement> required_certificates;
    friend bool operator==(const ImplementationVariant&, const ImplementationVariant&) = default;
};

/// Equivalent variants grouped by the canonical form of the signature they implement.
using VariantClasses = std::map<std::string, std::vector<ImplementationVariant>>;

void add_variant(VariantClasses& classes, ImplementationVariant variant);

/// Goal "scan", "filter", "join", "aggregate" or "project" over "relation" categories. Ship nodes have no signature.
asset::LogicalSignature operator_signature(const planner::SiteNode& node);

/// Built-in zero-price variants, one per relational operator, used when a class has no published implementation.
VariantClasses builtin_relational_variants();

/// An operator awaiting a (variant, node) assignment.
struct Slot {
    std::string label;
    std::string class_key;
    /// Input rows and bytes; they drive runtime and usage-based prices.
    double rows = 0;
    double bytes = 0;
    Region region = Region::EU;
    std::string capability = "relational";
    /// Plan node this slot stands for; null for slots outside a plan.
    const planner::SiteNode* node = nullptr;
};

/// Slots for every non-Ship operator in post-order.
std::vector<Slot> build_slots(const planner::SiteNode& root);

struct OperatorBinding {
    Slot slot;
    ImplementationVariant variant;
    std::string node_id;
    double runtime = 0;
    Money price;
};

struct ExecutionPlan {
    planner::SitePtr plan;
    std::vector<OperatorBinding> bindings;
    double estimated_runtime = 0;
    Money estimated_price;
};

class BudgetInfeasible : public AgoraError {
  public:
    explicit BudgetInfeasible(Money minimum)
        : AgoraError("BudgetInfeasible", "cheapest feasible assignment costs " + minimum.to_string()), cheapest(minimum) {}
    [[nodiscard]] Money minimum_price() const { return cheapest; }

  private:
    Money cheapest;
};

class NoEligibleNode : public AgoraError {
  public:
    explicit NoEligibleNode(const std::string& slot) : AgoraError("NoEligibleNode", slot) {}
};

class MissingVariant : public AgoraError {
  public:
    explicit MissingVariant(const std::string& classKey) : AgoraError("MissingVariant", classKey) {}
};

/// rows · runtime_factor / speed_factor seconds.
double slot_runtime(const Slot& slot, const ImplementationVariant& variant, const NodeExecutorInfo& node);

/**
 * @brief Estimated price of running the slot: the variant's charge plus the node's charge, each rounded to the
 * nearest micro-unit. Per-call units charge per input row, per-megabyte units per input byte and per-hour units per
 * second of runtime; pay-once and subscription prices are charged in full.
 */
Money slot_price(const Slot& slot, const ImplementationVariant& variant, const NodeExecutorInfo& node);

struct SelectionInput {
    std::span<const Slot> slots;
    const VariantClasses& classes;
    std::span<const NodeExecutorInfo> nodes;
    std::optional<Money> budget;
    const AuthorityRegistry& authorities;
    Timestamp now = 0;
};

/// Chosen (variant index within its class, node index) per slot.
struct Assignment {
    std::size_t variant = 0;
    std::size_t node = 0;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/**
 * @brief Exact budget-constrained assignment by branch and bound.
 *
 * A (variant, node) option is eligible for a slot when the node is in the slot's region, offers its capability and
 * satisfies the variant's certificate requirements. The chosen assignment minimizes total runtime (summed in slot
 * order), then total price, then the assignment vector, subject to total price <= budget.
 * Throws MissingVariant, NoEligibleNode, or BudgetInfeasible carrying the cheapest achievable price.
 */
std::vector<Assignment> select_assignment(const SelectionInput& input);

/// Assigns every operator of a site plan and returns the bound execution plan.
ExecutionPlan select_variants(const planner::SitePtr& plan, const VariantClasses& classes,
                              std::span<const NodeExecutorInfo> nodes, std::optional<Money> budget,
                              const AuthorityRegistry& authorities, Timestamp now);

/// Binds pre-built slots; used for stages outside a relational plan.
ExecutionPlan bind_slots(std::span<const Slot> slots, const VariantClasses& classes,
                         std::span<const NodeExecutorInfo> nodes, std::optional<Money> budget,
                         const AuthorityRegistry& authorities, Timestamp now);

nlohmann::json to_json(const ImplementationVariant& variant);
ImplementationVariant variant_from_json(const nlohmann::json& document);
/// Newline-delimited variant documents.
std::vector<ImplementationVariant> parse_variants(std::string_view text);

}// namespace agora::execution

#endif// AGORA_EXECUTION_VARIANTS_HPP_
