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

#include <agora/planner/optimizer.hpp>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace agora::planner {

namespace {

struct Entry {
    SitePtr plan;
    double cost = 0;
    std::size_t ships = 0;
    std::string text;
};

int compareCost(double a, double b) {
    double tolerance = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    if (a < b - tolerance) {
        return -1;
    }
    return a > b + tolerance ? 1 : 0;
}

/// Keeps the better of the slot and the candidate, building the candidate only when it may win.
template <typename Build>
void offer(Entry& slot, double cost, std::size_t ships, Build&& build) {
    if (slot.plan) {
        int order = compareCost(cost, slot.cost);
        if (order > 0 || (order == 0 && ships > slot.ships)) {
            return;
        }
        if (order == 0 && ships == slot.ships) {
            SitePtr plan = build();
            std::string text = to_string(*plan);
            if (slot.text.empty()) {
                slot.text = to_string(*slot.plan);
            }
            if (text < slot.text) {
                slot = Entry{std::move(plan), cost, ships, std::move(text)};
            }
            return;
        }
    }
    slot = Entry{build(), cost, ships, {}};
}

void collect(const query::LogicalPtr& node, QueryShape& shape) {
    if (const auto* scan = std::get_if<ScanOp>(&node->op)) {
        shape.leaves.push_back({*scan, std::nullopt});
    } else if (const auto* filter = std::get_if<FilterOp>(&node->op)) {
        const auto& child = node->children.at(0);
        const auto* scan = std::get_if<ScanOp>(&child->op);
        if (scan == nullptr) {
            throw UnsupportedPlan("filters must sit directly on scans");
        }
        shape.leaves.push_back({*scan, *filter});
    } else if (const auto* join = std::get_if<JoinOp>(&node->op)) {
        collect(node->children.at(0), shape);
        collect(node->children.at(1), shape);
        for (const auto& key : join->keys) {
            shape.join_keys.push_back(key);
        }
    } else {
        throw UnsupportedPlan("unexpected operator below the join tree");
    }
}

std::string tableOf(const std::string& qualified) { return qualified.substr(0, qualified.find('.')); }

}// namespace

QueryShape decompose(const query::LogicalPlan& plan) {
    QueryShape shape;
    shape.target = plan.target_region;
    if (!plan.root) {
        throw UnsupportedPlan("empty plan");
    }
    const auto* project = std::get_if<ProjectOp>(&plan.root->op);
    if (project == nullptr) {
        throw UnsupportedPlan("plan root must be a projection");
    }
    shape.project = *project;
    auto below = plan.root->children.at(0);
    if (const auto* aggregate = std::get_if<AggregateOp>(&below->op)) {
        shape.aggregate = *aggregate;
        below = below->children.at(0);
    }
    collect(below, shape);
    return shape;
}

std::vector<Region> region_universe(const QueryShape& shape, const query::TableRegistry& registry) {
    std::set<Region> regions;
    for (const auto& leaf : shape.leaves) {
        const auto* stats = registry.find(leaf.scan.table);
        if (stats == nullptr) {
            throw MissingStats(leaf.scan.table);
        }
        regions.insert(stats->region);
    }
    if (shape.target) {
        regions.insert(*shape.target);
    }
    return {regions.begin(), regions.end()};
}

std::optional<BestPlan> optimize(const query::LogicalPlan& plan, const query::TableRegistry& registry,
                                 std::span<const CompliancePolicy> policies, const CostModel& costModel) {
    QueryShape shape = decompose(plan);
    const std::size_t n = shape.leaves.size();
    if (n > kMaxOptimizerTables) {
        throw EnumerationLimitExceeded(n);
    }
    PlanFactory factory(registry, costModel);
    std::vector<Region> universe = region_universe(shape, registry);
    const std::size_t regions = universe.size();
    const double cpu = costModel.cpu_cost_per_row;

    std::map<std::string, std::size_t> tableIndex;
    for (std::size_t i = 0; i < n; ++i) {
        tableIndex[shape.leaves[i].scan.table] = i;
    }
    struct Key {
        std::string left;
        std::string right;
        std::uint32_t leftBit;
        std::uint32_t rightBit;
    };
    std::vector<Key> keys;
    std::vector<std::uint32_t> adjacent(n, 0);
    for (const auto& [a, b] : shape.join_keys) {
        auto ia = tableIndex.at(tableOf(a));
        auto ib = tableIndex.at(tableOf(b));
        keys.push_back({a, b, 1u << ia, 1u << ib});
        adjacent[ia] |= 1u << ib;
        adjacent[ib] |= 1u << ia;
    }

    const std::uint32_t full = (1u << n) - 1;
    std::vector<bool> connected(full + 1, false);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t reached = mask & (~mask + 1);
        std::uint32_t frontier = reached;
        while (frontier != 0) {
            std::uint32_t next = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (frontier & (1u << i)) {
                    next |= adjacent[i];
                }
            }
            next &= mask & ~reached;
            reached |= next;
            frontier = next;
        }
        connected[mask] = reached == mask;
    }

    using Slots = std::array<Entry, 4>;
    std::vector<Slots> best(full + 1);
    std::vector<Slots> avail(full + 1);
    auto regionIndex = [&](Region r) {
        return static_cast<std::size_t>(std::find(universe.begin(), universe.end(), r) - universe.begin());
    };

    auto fillAvail = [&](std::uint32_t mask) {
        for (std::size_t r = 0; r < regions; ++r) {
            if (best[mask][r].plan) {
                avail[mask][r] = best[mask][r];
            }
        }
        for (std::size_t from = 0; from < regions; ++from) {
            const Entry& source = best[mask][from];
            if (!source.plan) {
                continue;
            }
            for (std::size_t to = 0; to < regions; ++to) {
                if (to == from || !ship_allowed(source.plan->lineage, universe[to], policies)) {
                    continue;
                }
                double cost = source.cost + source.plan->bytes() * costModel.ship_rate(universe[from], universe[to]);
                offer(avail[mask][to], cost, source.ships + 1, [&] { return factory.ship(source.plan, universe[to]); });
            }
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto& leaf = shape.leaves[i];
        SitePtr node = factory.scan(leaf.scan);
        double cost = node->rows * cpu;
        if (leaf.filter) {
            cost += node->rows * cpu;
            node = factory.filter(*leaf.filter, node);
        }
        std::uint32_t mask = 1u << i;
        best[mask][regionIndex(node->exec_region)] = Entry{node, cost, 0, {}};
        fillAvail(mask);
    }

    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (std::popcount(mask) < 2 || !connected[mask]) {
            continue;
        }
        const std::uint32_t lowest = mask & (~mask + 1);
        for (std::uint32_t left = (mask - 1) & mask; left != 0; left = (left - 1) & mask) {
            const std::uint32_t right = mask ^ left;
            if (!(left & lowest) || !connected[left] || !connected[right]) {
                continue;
            }
            for (std::size_t r = 0; r < regions; ++r) {
                const Entry& l = avail[left][r];
                const Entry& rr = avail[right][r];
                if (!l.plan || !rr.plan) {
                    continue;
                }
                double cost = l.cost + rr.cost + (l.plan->rows + rr.plan->rows) * cpu;
                offer(best[mask][r], cost, l.ships + rr.ships, [&] {
                    JoinOp join;
                    for (const auto& key : keys) {
                        if ((key.leftBit & left) && (key.rightBit & right)) {
                            join.keys.emplace_back(key.left, key.right);
                        } else if ((key.rightBit & left) && (key.leftBit & right)) {
                            join.keys.emplace_back(key.right, key.left);
                        }
                    }
                    return factory.join(std::move(join), l.plan, rr.plan);
                });
            }
        }
        fillAvail(mask);
    }

    Entry result;
    auto deliver = [&](const Entry& top) {
        if (!shape.target || top.plan->exec_region == *shape.target) {
            offer(result, top.cost, top.ships, [&] { return top.plan; });
            return;
        }
        if (!ship_allowed(top.plan->lineage, *shape.target, policies)) {
            return;
        }
        double cost = top.cost + top.plan->bytes() * costModel.ship_rate(top.plan->exec_region, *shape.target);
        offer(result, cost, top.ships + 1, [&] { return factory.ship(top.plan, *shape.target); });
    };
    for (std::size_t r = 0; r < regions; ++r) {
        const Entry& input = shape.aggregate ? avail[full][r] : best[full][r];
        if (!input.plan) {
            continue;
        }
        Entry top = input;
        if (shape.aggregate) {
            top.cost += input.plan->rows * cpu;
            top.plan = factory.aggregate(*shape.aggregate, input.plan);
        }
        top.cost += top.plan->rows * cpu;
        top.plan = factory.project(shape.project, top.plan);
        top.text.clear();
        deliver(top);
    }
    if (!result.plan) {
        return std::nullopt;
    }
    return BestPlan{result.plan, estimate_cost(*result.plan, costModel)};
}

BestPlan optimize_or_throw(const query::LogicalPlan& plan, const query::TableRegistry& registry,
                           std::span<const CompliancePolicy> policies, const CostModel& costModel) {
    auto best = optimize(plan, registry, policies, costModel);
    if (!best) {
        throw NoCompliantPlan();
    }
    return *best;
}

}// namespace agora::planner
