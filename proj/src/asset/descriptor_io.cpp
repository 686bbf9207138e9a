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
#include <nlohmann/json.hpp>

namespace agora::asset {

using nlohmann::json;

namespace {

std::string join(const std::string& parent, const std::string& key) { return parent.empty() ? key : parent + "." + key; }

const json& require(const json& object, const std::string& key, const std::string& parent) {
    if (!object.is_object()) {
        throw DescriptorSchemaError(parent.empty() ? "<root>" : parent, "expected an object");
    }
    auto it = object.find(key);
    if (it == object.end()) {
        throw DescriptorSchemaError(join(parent, key), "required field missing");
    }
    return *it;
}

const json* optional(const json& object, const std::string& key) {
    auto it = object.find(key);
    return it == object.end() || it->is_null() ? nullptr : &*it;
}

std::string asString(const json& value, const std::string& field) {
    if (!value.is_string()) {
        throw DescriptorSchemaError(field, "expected a string");
    }
    return value.get<std::string>();
}

std::int64_t asInt(const json& value, const std::string& field) {
    if (!value.is_number_integer()) {
        throw DescriptorSchemaError(field, "expected an integer");
    }
    return value.get<std::int64_t>();
}

const json& asArray(const json& value, const std::string& field) {
    if (!value.is_array()) {
        throw DescriptorSchemaError(field, "expected an array");
    }
    return value;
}

Money asMoney(const json& value, const std::string& field) {
    if (value.is_number_integer()) {
        return Money::micros(value.get<std::int64_t>());
    }
    if (value.is_string()) {
        try {
            return Money::parse(value.get<std::string>());
        } catch (const AgoraError&) {
            throw DescriptorSchemaError(field, "expected an amount like \"$2.50\"");
        }
    }
    throw DescriptorSchemaError(field, "expected integer micro-units or an amount string");
}

std::string indexed(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

Region regionFrom(const json& value, const std::string& field) {
    auto region = parse_region(asString(value, field));
    if (!region) {
        throw DescriptorSchemaError(field, "unknown region code");
    }
    return *region;
}

json toJson(const planner::UsageConstraint& constraint) {
    if (std::holds_alternative<planner::NoOverlay>(constraint)) {
        return json{{"type", "NoOverlay"}};
    }
    const auto& deny = std::get<planner::VendorDeny>(constraint);
    return json{{"type", "VendorDeny"}, {"consumers", deny.consumers}};
}

planner::UsageConstraint constraintFrom(const json& value, const std::string& field) {
    auto type = asString(require(value, "type", field), join(field, "type"));
    if (type == "NoOverlay") {
        return planner::NoOverlay{};
    }
    if (type == "VendorDeny") {
        planner::VendorDeny deny;
        const auto& consumers = asArray(require(value, "consumers", field), join(field, "consumers"));
        for (std::size_t i = 0; i < consumers.size(); ++i) {
            deny.consumers.insert(asString(consumers[i], indexed(join(field, "consumers"), i)));
        }
        return deny;
    }
    throw DescriptorSchemaError(join(field, "type"), "unknown usage constraint '" + type + "'");
}

json toJson(const PipelineGraph& graph) {
    json nodes = json::array();
    for (const auto& n : graph.nodes) {
        nodes.push_back({{"node_id", n.node_id}, {"asset_ref", n.asset_ref}, {"role_category", n.role_category}});
    }
    json edges = json::array();
    for (const auto& e : graph.edges) {
        edges.push_back(
            {{"from_node", e.from_node}, {"from_output", e.from_output}, {"to_node", e.to_node}, {"to_input", e.to_input}});
    }
    return json{{"nodes", nodes}, {"edges", edges}};
}

PipelineGraph graphFrom(const json& value, const std::string& field) {
    PipelineGraph graph;
    const auto& nodes = asArray(require(value, "nodes", field), join(field, "nodes"));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto f = indexed(join(field, "nodes"), i);
        graph.nodes.push_back({asString(require(nodes[i], "node_id", f), join(f, "node_id")),
                               asString(require(nodes[i], "asset_ref", f), join(f, "asset_ref")),
                               asString(require(nodes[i], "role_category", f), join(f, "role_category"))});
    }
    const auto& edges = asArray(require(value, "edges", field), join(field, "edges"));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto f = indexed(join(field, "edges"), i);
        auto fromOutput = asInt(require(edges[i], "from_output", f), join(f, "from_output"));
        auto toInput = asInt(require(edges[i], "to_input", f), join(f, "to_input"));
        if (fromOutput < 0 || toInput < 0) {
            throw DescriptorSchemaError(f, "port indices must be non-negative");
        }
        graph.edges.push_back({asString(require(edges[i], "from_node", f), join(f, "from_node")),
                               static_cast<std::size_t>(fromOutput),
                               asString(require(edges[i], "to_node", f), join(f, "to_node")),
                               static_cast<std::size_t>(toInput)});
    }
    return graph;
}

}// namespace

LogicalSignature signature_from_json(const json& value, const std::string& field) {
    LogicalSignature sig;
    sig.goal = asString(require(value, "goal", field), join(field, "goal"));
    const auto& inputs = asArray(require(value, "inputs", field), join(field, "inputs"));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        sig.inputs.push_back(io_type_from_json(inputs[i], indexed(join(field, "inputs"), i)));
    }
    sig.output = io_type_from_json(require(value, "output", field), join(field, "output"));
    return sig;
}

json to_json(const LogicalSignature& signature) {
    json sig;
    sig["goal"] = signature.goal;
    sig["inputs"] = json::array();
    for (const auto& input : signature.inputs) {
        sig["inputs"].push_back(to_json(input));
    }
    sig["output"] = to_json(signature.output);
    return sig;
}

json to_json(const std::vector<CertificateRequirement>& requirements) {
    json list = json::array();
    for (const auto& r : requirements) {
        list.push_back({{"property", r.property}, {"trusted_authorities", r.trusted_authorities}});
    }
    return list;
}

std::vector<CertificateRequirement> requirements_from_json(const json& value, const std::string& field) {
    std::vector<CertificateRequirement> out;
    const auto& list = asArray(value, field);
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto f = indexed(field, i);
        CertificateRequirement req;
        req.property = asString(require(list[i], "property", f), join(f, "property"));
        const auto& trusted = asArray(require(list[i], "trusted_authorities", f), join(f, "trusted_authorities"));
        for (std::size_t k = 0; k < trusted.size(); ++k) {
            req.trusted_authorities.insert(asString(trusted[k], indexed(join(f, "trusted_authorities"), k)));
        }
        out.push_back(std::move(req));
    }
    return out;
}

json to_json(const IOType& type) {
    if (const auto* category = std::get_if<Category>(&type)) {
        return json{{"category", category->name}};
    }
    json columns = json::array();
    for (const auto& c : std::get<Schema>(type).columns) {
        columns.push_back({{"name", c.name}, {"type", std::string(to_string(c.type))}});
    }
    return json{{"schema", columns}};
}

IOType io_type_from_json(const json& document, const std::string& field) {
    if (!document.is_object()) {
        throw DescriptorSchemaError(field, "expected an object");
    }
    if (const auto* category = optional(document, "category")) {
        return Category{asString(*category, join(field, "category"))};
    }
    const auto& columns = asArray(require(document, "schema", field), join(field, "schema"));
    Schema schema;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        auto f = indexed(join(field, "schema"), i);
        auto typeName = asString(require(columns[i], "type", f), join(f, "type"));
        auto type = parse_column_type(typeName);
        if (!type) {
            throw DescriptorSchemaError(join(f, "type"), "unknown column type '" + typeName + "'");
        }
        schema.columns.push_back({asString(require(columns[i], "name", f), join(f, "name")), *type});
    }
    return schema;
}

json to_json(const PricingModel& pricing) {
    return std::visit(
        [](const auto& model) -> json {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, PayOnce>) {
                return json{{"model", "PayOnce"}, {"price", model.price.micro_units}};
            } else if constexpr (std::is_same_v<T, Subscription>) {
                return json{{"model", "Subscription"}, {"price", model.price.micro_units}, {"period_s", model.period_s}};
            } else {
                return json{{"model", "PayPerUse"}, {"rate", model.rate.micro_units}, {"unit", std::string(to_string(model.unit))}};
            }
        },
        pricing);
}

PricingModel pricing_from_json(const json& document, const std::string& field) {
    auto model = asString(require(document, "model", field), join(field, "model"));
    if (model == "PayOnce") {
        return PayOnce{asMoney(require(document, "price", field), join(field, "price"))};
    }
    if (model == "Subscription") {
        return Subscription{asMoney(require(document, "price", field), join(field, "price")),
                            asInt(require(document, "period_s", field), join(field, "period_s"))};
    }
    if (model == "PayPerUse") {
        auto unitName = asString(require(document, "unit", field), join(field, "unit"));
        auto unit = parse_usage_unit(unitName);
        if (!unit) {
            throw DescriptorSchemaError(join(field, "unit"), "unknown usage unit '" + unitName + "'");
        }
        return PayPerUse{asMoney(require(document, "rate", field), join(field, "rate")), *unit};
    }
    throw DescriptorSchemaError(join(field, "model"), "unknown pricing model '" + model + "'");
}

json to_json(const metering::RevenueShareTree& tree) {
    json doc{{"beneficiary", tree.beneficiary}, {"share", tree.share.to_string()}};
    json children = json::array();
    for (const auto& child : tree.children) {
        children.push_back(to_json(child));
    }
    doc["children"] = children;
    return doc;
}

metering::RevenueShareTree revenue_share_from_json(const json& document, const std::string& field) {
    metering::RevenueShareTree tree;
    tree.beneficiary = asString(require(document, "beneficiary", field), join(field, "beneficiary"));
    auto shareText = asString(require(document, "share", field), join(field, "share"));
    try {
        tree.share = Rational::parse(shareText);
    } catch (const UsageError&) {
        throw DescriptorSchemaError(join(field, "share"), "expected a fraction like \"1/3\"");
    }
    if (const auto* children = optional(document, "children")) {
        const auto& list = asArray(*children, join(field, "children"));
        for (std::size_t i = 0; i < list.size(); ++i) {
            tree.children.push_back(revenue_share_from_json(list[i], indexed(join(field, "children"), i)));
        }
    }
    return tree;
}

json to_json(const AssetDescriptor& d) {
    json doc;
    doc["id"] = d.id;
    doc["kind"] = std::string(to_string(d.kind));
    doc["name"] = d.name;
    doc["provider"] = d.provider;
    doc["version"] = d.version;
    doc["signature"] = to_json(d.signature);
    doc["quality"] = json::array();
    for (const auto& q : d.quality) {
        doc["quality"].push_back({{"name", q.name}, {"value", q.value}, {"unit", q.unit}});
    }
    doc["pricing"] = to_json(d.pricing);
    doc["usage_constraints"] = json::array();
    for (const auto& c : d.usage_constraints) {
        doc["usage_constraints"].push_back(toJson(c));
    }
    doc["required_certificates"] = to_json(d.required_certificates);
    if (d.region) {
        doc["region"] = std::string(to_string(*d.region));
    }
    if (d.revenue_share) {
        doc["revenue_share"] = to_json(*d.revenue_share);
    }
    if (d.graph) {
        doc["graph"] = toJson(*d.graph);
    }
    return doc;
}

AssetDescriptor descriptor_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw DescriptorSchemaError("<root>", "expected a JSON object");
    }
    AssetDescriptor d;
    d.id = asString(require(doc, "id", ""), "id");
    auto kindName = asString(require(doc, "kind", ""), "kind");
    auto kind = parse_asset_kind(kindName);
    if (!kind) {
        throw DescriptorSchemaError("kind", "unknown asset kind '" + kindName + "'");
    }
    d.kind = *kind;
    d.name = asString(require(doc, "name", ""), "name");
    d.provider = asString(require(doc, "provider", ""), "provider");
    d.version = asString(require(doc, "version", ""), "version");
    d.signature = signature_from_json(require(doc, "signature", ""), "signature");
    if (const auto* quality = optional(doc, "quality")) {
        const auto& list = asArray(*quality, "quality");
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto f = indexed("quality", i);
            const auto& value = require(list[i], "value", f);
            if (!value.is_number()) {
                throw DescriptorSchemaError(join(f, "value"), "expected a number");
            }
            QualityMetric metric{asString(require(list[i], "name", f), join(f, "name")), value.get<double>(), ""};
            if (const auto* unit = optional(list[i], "unit")) {
                metric.unit = asString(*unit, join(f, "unit"));
            }
            d.quality.push_back(std::move(metric));
        }
    }
    d.pricing = pricing_from_json(require(doc, "pricing", ""), "pricing");
    if (const auto* constraints = optional(doc, "usage_constraints")) {
        const auto& list = asArray(*constraints, "usage_constraints");
        for (std::size_t i = 0; i < list.size(); ++i) {
            d.usage_constraints.push_back(constraintFrom(list[i], indexed("usage_constraints", i)));
        }
    }
    if (const auto* certs = optional(doc, "required_certificates")) {
        d.required_certificates = requirements_from_json(*certs, "required_certificates");
    }
    if (const auto* region = optional(doc, "region")) {
        d.region = regionFrom(*region, "region");
    }
    if (const auto* share = optional(doc, "revenue_share")) {
        d.revenue_share = revenue_share_from_json(*share, "revenue_share");
    }
    if (const auto* graph = optional(doc, "graph")) {
        d.graph = graphFrom(*graph, "graph");
    }
    return d;
}

AssetDescriptor parse_descriptor(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw DescriptorSyntaxError(e.byte, e.what());
    }
    return descriptor_from_json(doc);
}

std::string serialize_descriptor(const AssetDescriptor& descriptor) { return to_json(descriptor).dump(); }

std::vector<AssetDescriptor> parse_descriptor_lines(std::string_view text) {
    std::vector<AssetDescriptor> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(start, end - start);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            out.push_back(parse_descriptor(line));
        }
        start = end + 1;
    }
    return out;
}

}// namespace agora::asset
