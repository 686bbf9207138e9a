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

#include <agora/planner/site_plan.hpp>
#include <algorithm>
#include <fmt/format.h>

namespace agora::planner {

namespace {

SitePtr finish(SiteNode node) { return std::make_shared<const SiteNode>(std::move(node)); }

std::string joinNames(const std::vector<OutputColumn>& columns) {
    std::string out;
    for (const auto& c : columns) {
        out += (out.empty() ? "" : ", ") + c.name;
    }
    return out;
}

std::string describe(const SiteNode& n) {
    auto at = std::string("@") + std::string(to_string(n.exec_region));
    return std::visit(
        [&](const auto& op) -> std::string {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, ScanOp>) {
                return "SCAN" + at + " " + op.table;
            } else if constexpr (std::is_same_v<T, FilterOp>) {
                std::string text;
                for (const auto& p : op.predicates) {
                    text += (text.empty() ? "" : " AND ") + query::to_string(p);
                }
                return "FILTER" + at + " (" + text + ")";
            } else if constexpr (std::is_same_v<T, JoinOp>) {
                std::string text;
                for (const auto& [a, b] : op.keys) {
                    text += (text.empty() ? "" : " AND ") + a + " = " + b;
                }
                return "JOIN" + at + " (" + text + ")";
            } else if constexpr (std::is_same_v<T, AggregateOp>) {
                std::string aggs;
                for (const auto& a : op.aggregates) {
                    aggs += (aggs.empty() ? "" : ", ") + a.output_name;
                }
                return "AGGREGATE" + at + " group=(" + joinNames(op.group_by) + ") aggs=(" + aggs + ")";
            } else if constexpr (std::is_same_v<T, ProjectOp>) {
                return "PROJECT" + at + " (" + joinNames(op.columns) + ")";
            } else {
                return fmt::format("SHIP {}->{}", to_string(op.from), to_string(op.to));
            }
        },
        n.op);
}

void render(const SiteNode& n, int depth, bool explain, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += describe(n);
    if (explain) {
        out += fmt::format("  [rows={:.2f} bytes={:.2f}]", n.rows, n.bytes());
    }
    out += '\n';
    for (const auto& c : n.children) {
        render(*c, depth + 1, explain, out);
    }
}

}// namespace

PlanFactory::PlanFactory(const query::TableRegistry& registry, const CostModel& costModel)
    : tables(registry), costs(costModel) {}

std::int64_t PlanFactory::column_width(const std::string& column) const {
    if (const auto* stats = tables.column(column)) {
        return stats->width;
    }
    if (column.find('(') != std::string::npos) {
        return 8;
    }
    throw MissingStats(column);
}

double PlanFactory::distinct(const std::string& column) const {
    if (const auto* stats = tables.column(column)) {
        return static_cast<double>(stats->distinct);
    }
    throw MissingStats(column);
}

SitePtr PlanFactory::scan(const std::string& table, std::vector<OutputColumn> columns) const {
    const auto* stats = tables.find(table);
    if (stats == nullptr) {
        throw MissingStats(table);
    }
    if (columns.empty()) {
        for (const auto& c : stats->columns) {
            columns.push_back({table + "." + c.name, c.type});
        }
    }
    return scan(ScanOp{table, std::move(columns)});
}

SitePtr PlanFactory::scan(ScanOp op) const {
    const auto* stats = tables.find(op.table);
    if (stats == nullptr) {
        throw MissingStats(op.table);
    }
    SiteNode n;
    n.exec_region = stats->region;
    n.lineage = {LineageTag{op.table, stats->region, false}};
    n.columns = op.columns;
    n.rows = static_cast<double>(stats->row_count);
    for (const auto& c : n.columns) {
        n.row_bytes += column_width(c.name);
    }
    n.op = std::move(op);
    return finish(std::move(n));
}

SitePtr PlanFactory::filter(FilterOp op, SitePtr child) const {
    double selectivity = 1.0;
    for (const auto& p : op.predicates) {
        if (p.op == query::CompareOp::Eq && std::holds_alternative<query::Value>(p.right)) {
            selectivity /= distinct(p.column);
        } else {
            selectivity *= costs.filter_selectivity_default;
        }
    }
    SiteNode n;
    n.exec_region = child->exec_region;
    n.lineage = child->lineage;
    n.columns = child->columns;
    n.rows = child->rows * selectivity;
    n.row_bytes = child->row_bytes;
    n.op = std::move(op);
    n.children = {std::move(child)};
    return finish(std::move(n));
}

SitePtr PlanFactory::join(JoinOp op, SitePtr left, SitePtr right) const {
    if (left->exec_region != right->exec_region) {
        throw MalformedPlan("join inputs run in different regions");
    }
    double rows = left->rows * right->rows;
    for (const auto& [a, b] : op.keys) {
        rows /= std::max(distinct(a), distinct(b));
    }
    SiteNode n;
    n.exec_region = left->exec_region;
    n.lineage = left->lineage;
    n.lineage.insert(right->lineage.begin(), right->lineage.end());
    n.columns = left->columns;
    n.columns.insert(n.columns.end(), right->columns.begin(), right->columns.end());
    n.rows = rows;
    n.row_bytes = left->row_bytes + right->row_bytes;
    n.op = std::move(op);
    n.children = {std::move(left), std::move(right)};
    return finish(std::move(n));
}

SitePtr PlanFactory::aggregate(AggregateOp op, SitePtr child) const {
    double groups = 1.0;
    SiteNode n;
    for (const auto& g : op.group_by) {
        groups *= distinct(g.name);
        n.columns.push_back(g);
        n.row_bytes += column_width(g.name);
    }
    for (const auto& a : op.aggregates) {
        n.columns.push_back({a.output_name, a.output_type});
        n.row_bytes += 8;
    }
    n.exec_region = child->exec_region;
    for (auto tag : child->lineage) {
        tag.aggregated = true;
        n.lineage.insert(tag);
    }
    n.rows = std::min(child->rows, groups);
    n.op = std::move(op);
    n.children = {std::move(child)};
    return finish(std::move(n));
}

SitePtr PlanFactory::project(ProjectOp op, SitePtr child) const {
    SiteNode n;
    n.exec_region = child->exec_region;
    n.lineage = child->lineage;
    n.columns = op.columns;
    for (const auto& c : n.columns) {
        n.row_bytes += column_width(c.name);
    }
    n.rows = child->rows;
    n.op = std::move(op);
    n.children = {std::move(child)};
    return finish(std::move(n));
}

SitePtr PlanFactory::ship(SitePtr child, Region to) const {
    if (child->exec_region == to) {
        throw MalformedPlan(fmt::format("ship from {} to itself", to_string(to)));
    }
    SiteNode n;
    n.op = ShipOp{child->exec_region, to};
    n.exec_region = to;
    n.lineage = child->lineage;
    n.columns = child->columns;
    n.rows = child->rows;
    n.row_bytes = child->row_bytes;
    n.children = {std::move(child)};
    return finish(std::move(n));
}

SitePtr PlanFactory::place(SitePtr child, Region region) const {
    return child->exec_region == region ? child : ship(std::move(child), region);
}

std::set<LineageTag> lineage_tags(const SiteNode& node) {
    if (const auto* scan = std::get_if<ScanOp>(&node.op)) {
        return {LineageTag{scan->table, node.exec_region, false}};
    }
    std::set<LineageTag> tags;
    for (const auto& c : node.children) {
        auto sub = lineage_tags(*c);
        tags.insert(sub.begin(), sub.end());
    }
    if (std::holds_alternative<AggregateOp>(node.op)) {
        std::set<LineageTag> marked;
        for (auto tag : tags) {
            tag.aggregated = true;
            marked.insert(tag);
        }
        return marked;
    }
    return tags;
}

double estimate_cardinality(const SiteNode& node) { return node.rows; }

double rows_in(const SiteNode& node) {
    if (node.is_ship()) {
        return 0.0;
    }
    if (node.children.empty()) {
        return node.rows;
    }
    double total = 0.0;
    for (const auto& c : node.children) {
        total += c->rows;
    }
    return total;
}

double estimate_cost(const SiteNode& root, const CostModel& costModel) {
    double cost = 0.0;
    if (const auto* ship = std::get_if<ShipOp>(&root.op)) {
        cost += root.children.at(0)->bytes() * costModel.ship_rate(ship->from, ship->to);
    } else {
        cost += rows_in(root) * costModel.cpu_cost_per_row;
    }
    for (const auto& c : root.children) {
        cost += estimate_cost(*c, costModel);
    }
    return cost;
}

std::size_t count_ships(const SiteNode& root) {
    std::size_t ships = root.is_ship() ? 1 : 0;
    for (const auto& c : root.children) {
        ships += count_ships(*c);
    }
    return ships;
}

void check_well_formed(const SiteNode& root) {
    if (const auto* ship = std::get_if<ShipOp>(&root.op)) {
        if (ship->from == ship->to) {
            throw MalformedPlan("ship from a region to itself");
        }
        if (root.children.size() != 1 || root.children[0]->exec_region != ship->from || root.exec_region != ship->to) {
            throw MalformedPlan(fmt::format("ship {}->{} does not connect its endpoints", to_string(ship->from),
                                            to_string(ship->to)));
        }
    } else {
        for (const auto& c : root.children) {
            if (c->exec_region != root.exec_region) {
                throw MalformedPlan("region change without a ship below " + describe(root));
            }
        }
    }
    for (const auto& c : root.children) {
        check_well_formed(*c);
    }
}

std::string to_string(const SiteNode& root, bool explain) {
    std::string out;
    render(root, 0, explain, out);
    return out;
}

}// namespace agora::planner
