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

#ifndef AGORA_ASSET_PIPELINE_HPP_
#define AGORA_ASSET_PIPELINE_HPP_

#include <agora/asset/types.hpp>
#include <agora/common/error.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agora::asset {

class CompositionError : public AgoraError {
  public:
    using AgoraError::AgoraError;
};

class CycleDetected : public CompositionError {
  public:
    explicit CycleDetected(const std::string& node) : CompositionError("CycleDetected", "cycle through node " + node) {}
};

class TypeMismatch : public CompositionError {
  public:
    TypeMismatch(PipelineEdge e, const std::string& detail)
        : CompositionError("TypeMismatch", e.from_node + "[" + std::to_string(e.from_output) + "] -> " + e.to_node + "["
                                               + std::to_string(e.to_input) + "]: " + detail),
          offending(std::move(e)) {}
    [[nodiscard]] const PipelineEdge& edge() const { return offending; }

  private:
    PipelineEdge offending;
};

class ConstraintViolation : public CompositionError {
  public:
    ConstraintViolation(AssetId assetId, std::string ruleName)
        : CompositionError("ConstraintViolation", assetId + " violates " + ruleName), asset(std::move(assetId)),
          ruleText(std::move(ruleName)) {}
    [[nodiscard]] const AssetId& asset_id() const { return asset; }
    [[nodiscard]] const std::string& rule() const { return ruleText; }

  private:
    AssetId asset;
    std::string ruleText;
};

/**
 * @brief Wires descriptors into a pipeline graph. Each descriptor becomes one node whose id is the asset id.
 * Every declared input of every node must be bound exactly once; assets without inputs are sources.
 * @param consumer party that will use the composition, checked against VendorDeny constraints
 */
PipelineGraph compose_pipeline(std::span<const AssetDescriptor> nodes, std::span<const PipelineEdge> edges,
                               const std::optional<std::string>& consumer = std::nullopt);

/// Structural problems of a graph on its own: unknown node references, duplicate ids, cycles.
std::vector<std::string> check_graph_structure(const PipelineGraph& graph);

/// Node ids in a topological order; throws CycleDetected.
std::vector<std::string> topological_order(const PipelineGraph& graph);

}// namespace agora::asset

#endif// AGORA_ASSET_PIPELINE_HPP_
