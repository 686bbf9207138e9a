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

#include <agora/asset/pipeline.hpp>
#include <agora/asset/signature.hpp>
#include <map>
#include <set>

namespace agora::asset {

namespace {

/// Kahn's algorithm; returns the order and the first node left on a cycle, if any.
std::pair<std::vector<std::string>, std::optional<std::string>> kahn(const PipelineGraph& graph) {
    std::map<std::string, int> indegree;
    std::map<std::string, std::vector<std::string>> successors;
    for (const auto& n : graph.nodes) {
        indegree.emplace(n.node_id, 0);
    }
    for (const auto& e : graph.edges) {
        if (indegree.contains(e.from_node) && indegree.contains(e.to_node)) {
            successors[e.from_node].push_back(e.to_node);
            ++indegree[e.to_node];
        }
    }
    std::vector<std::string> order;
    std::vector<std::string> ready;
    // Visit in declaration order so the result is deterministic.
    for (const auto& n : graph.nodes) {
        if (indegree[n.node_id] == 0) {
            ready.push_back(n.node_id);
        }
    }
    std::size_t head = 0;
    while (head < ready.size()) {
        auto current = ready[head++];
        order.push_back(current);
        for (const auto& next : successors[current]) {
            if (--indegree[next] == 0) {
                ready.push_back(next);
            }
        }
    }
    if (order.size() != indegree.size()) {
        for (const auto& n : graph.nodes) {
            if (indegree[n.node_id] > 0) {
                return {order, n.node_id};
            }
        }
    }
    return {order, std::nullopt};
}

std::string describe(const IOType& type) {
    if (const auto* c = std::get_if<Category>(&type)) {
        return "category " + c->name;
    }
    std::string text = "(";
    for (const auto& col : std::get<Schema>(type).columns) {
        text += (text.size() > 1 ? ", " : "") + col.name + " " + std::string(to_string(col.type));
    }
    return text + ")";
}

}// namespace

std::vector<std::string> check_graph_structure(const PipelineGraph& graph) {
    std::vector<std::string> problems;
    std::set<std::string> ids;
    for (const auto& n : graph.nodes) {
        if (!ids.insert(n.node_id).second) {
            problems.push_back("duplicate node id '" + n.node_id + "'");
        }
    }
    for (const auto& e : graph.edges) {
        if (!ids.contains(e.from_node)) {
            problems.push_back("edge from unknown node '" + e.from_node + "'");
        }
        if (!ids.contains(e.to_node)) {
            problems.push_back("edge to unknown node '" + e.to_node + "'");
        }
    }
    if (auto [order, cycle] = kahn(graph); cycle) {
        problems.push_back("cycle through node '" + *cycle + "'");
    }
    return problems;
}

std::vector<std::string> topological_order(const PipelineGraph& graph) {
    auto [order, cycle] = kahn(graph);
    if (cycle) {
        throw CycleDetected(*cycle);
    }
    return order;
}

PipelineGraph compose_pipeline(std::span<const AssetDescriptor> nodes, std::span<const PipelineEdge> edges,
                               const std::optional<std::string>& consumer) {
    std::map<std::string, const AssetDescriptor*> byId;
    PipelineGraph graph;
    for (const auto& d : nodes) {
        if (!byId.emplace(d.id, &d).second) {
            throw CompositionError("DuplicateNode", "asset " + d.id + " appears twice");
        }
        graph.nodes.push_back({d.id, d.id, d.signature.goal});
    }

    std::map<std::pair<std::string, std::size_t>, const PipelineEdge*> bound;
    for (const auto& e : edges) {
        auto from = byId.find(e.from_node);
        auto to = byId.find(e.to_node);
        if (from == byId.end() || to == byId.end()) {
            throw CompositionError("UnknownNode", "edge references unknown node");
        }
        if (e.from_output != 0) {
            throw TypeMismatch(e, "assets have a single output port 0");
        }
        const auto& inputs = to->second->signature.inputs;
        if (e.to_input >= inputs.size()) {
            throw TypeMismatch(e, "target has no input " + std::to_string(e.to_input));
        }
        const auto& produced = from->second->signature.output;
        const auto& expected = inputs[e.to_input];
        if (canonical_io_type(produced) != canonical_io_type(expected)) {
            throw TypeMismatch(e, describe(produced) + " does not match " + describe(expected));
        }
        if (!bound.emplace(std::pair{e.to_node, e.to_input}, &e).second) {
            throw CompositionError("InputBoundTwice", e.to_node + " input " + std::to_string(e.to_input));
        }
        graph.edges.push_back(e);
    }
    for (const auto& d : nodes) {
        for (std::size_t i = 0; i < d.signature.inputs.size(); ++i) {
            if (!bound.contains({d.id, i})) {
                throw CompositionError("UnboundInput", d.id + " input " + std::to_string(i) + " is not connected");
            }
        }
    }
    auto order = topological_order(graph);

    // Upstream sets, computed in topological order, drive the overlay rule.
    std::map<std::string, std::set<std::string>> upstream;
    for (const auto& id : order) {
        upstream[id];
        for (const auto& e : graph.edges) {
            if (e.to_node == id) {
                upstream[id].insert(e.from_node);
                upstream[id].insert(upstream[e.from_node].begin(), upstream[e.from_node].end());
            }
        }
    }
    for (const auto& d : nodes) {
        for (const auto& constraint : d.usage_constraints) {
            if (const auto* deny = std::get_if<planner::VendorDeny>(&constraint)) {
                if (consumer && deny->consumers.contains(*consumer)) {
                    throw ConstraintViolation(d.id, "VendorDeny(" + *consumer + ")");
                }
                continue;
            }
            for (const auto& target : nodes) {
                bool joins = target.signature.goal == "join" || target.signature.inputs.size() > 1;
                if (joins && upstream[target.id].contains(d.id)) {
                    throw ConstraintViolation(d.id, "NoOverlay (joined at " + target.id + ")");
                }
            }
        }
    }
    return graph;
}

}// namespace agora::asset
