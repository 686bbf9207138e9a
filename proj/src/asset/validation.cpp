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
#include <agora/asset/taxonomy.hpp>
#include <agora/asset/validation.hpp>
#include <cmath>
#include <set>

namespace agora::asset {

namespace {

void checkSchema(const IOType& type, const std::string& field, std::vector<Violation>& out) {
    const auto* schema = std::get_if<Schema>(&type);
    if (schema == nullptr) {
        if (std::get<Category>(type).name.empty()) {
            out.push_back({field, "empty category"});
        }
        return;
    }
    std::set<std::string> seen;
    for (const auto& column : schema->columns) {
        if (column.name.empty()) {
            out.push_back({field, "empty column name"});
        } else if (!seen.insert(column.name).second) {
            out.push_back({field, "duplicate column '" + column.name + "'"});
        }
    }
}

bool requiresRegion(AssetKind kind) {
    return kind == AssetKind::DataSource || kind == AssetKind::ComputeNode || kind == AssetKind::StorageNode;
}

}// namespace

bool ValidationReport::has(std::string_view rule) const {
    for (const auto& v : violations) {
        if (v.rule.find(rule) != std::string::npos) {
            return true;
        }
    }
    return false;
}

std::string ValidationReport::to_string() const {
    if (ok()) {
        return "ok";
    }
    std::string text;
    for (const auto& v : violations) {
        if (!text.empty()) {
            text += "; ";
        }
        text += v.field + ": " + v.rule;
    }
    return text;
}

bool is_valid_asset_id(std::string_view id) {
    if (id.empty() || id.size() > 128) {
        return false;
    }
    for (char c : id) {
        bool unreserved = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-'
            || c == '_' || c == '.' || c == '~';
        if (!unreserved) {
            return false;
        }
    }
    return true;
}

ValidationReport validate_descriptor(const AssetDescriptor& d) {
    std::vector<Violation> out;
    if (!is_valid_asset_id(d.id)) {
        out.push_back({"id", "must be 1-128 URL-safe characters"});
    }
    if (d.name.empty()) {
        out.push_back({"name", "must not be empty"});
    }
    if (d.kind == AssetKind::Pipeline && (!d.graph || d.graph->nodes.empty())) {
        out.push_back({"graph", "pipeline requires graph"});
    }
    if (d.kind != AssetKind::Pipeline && d.graph) {
        out.push_back({"graph", "graph only allowed for pipelines"});
    }
    if (requiresRegion(d.kind) && !d.region) {
        out.push_back({"region", "region required for " + std::string(to_string(d.kind))});
    }

    if (!is_known_goal(d.signature.goal)) {
        out.push_back({"signature.goal", "unknown goal '" + d.signature.goal + "'"});
    }
    for (std::size_t i = 0; i < d.signature.inputs.size(); ++i) {
        checkSchema(d.signature.inputs[i], "signature.inputs[" + std::to_string(i) + "]", out);
    }
    checkSchema(d.signature.output, "signature.output", out);
    if (d.kind == AssetKind::DataSource) {
        const auto* schema = std::get_if<Schema>(&d.signature.output);
        if (schema != nullptr && schema->columns.empty()) {
            out.push_back({"signature.output", "relational data source requires columns"});
        }
    }

    for (std::size_t i = 0; i < d.quality.size(); ++i) {
        const auto& q = d.quality[i];
        auto field = "quality[" + std::to_string(i) + "]";
        if (q.name.empty()) {
            out.push_back({field, "metric name must not be empty"});
        }
        if (!std::isfinite(q.value) || q.value < 0.0) {
            out.push_back({field, "metric value must be finite and non-negative"});
        }
    }

    std::visit(
        [&](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, PayPerUse>) {
                if (model.rate.micro_units < 0) {
                    out.push_back({"pricing", "negative rate"});
                }
            } else {
                if (model.price.micro_units < 0) {
                    out.push_back({"pricing", "negative price"});
                }
            }
            if constexpr (std::is_same_v<T, Subscription>) {
                if (model.period_s <= 0) {
                    out.push_back({"pricing", "subscription period must be positive"});
                }
            }
        },
        d.pricing);

    for (std::size_t i = 0; i < d.required_certificates.size(); ++i) {
        const auto& req = d.required_certificates[i];
        auto field = "required_certificates[" + std::to_string(i) + "]";
        if (req.property.empty()) {
            out.push_back({field, "property must not be empty"});
        }
        if (req.trusted_authorities.empty()) {
            out.push_back({field, "at least one trusted authority required"});
        }
    }

    if (d.revenue_share) {
        for (auto& problem : metering::check_revenue_share(*d.revenue_share)) {
            out.push_back({"revenue_share", std::move(problem)});
        }
    }
    if (d.graph) {
        for (auto& problem : check_graph_structure(*d.graph)) {
            out.push_back({"graph", std::move(problem)});
        }
    }
    return ValidationReport{std::move(out)};
}

}// namespace agora::asset
