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

#include <agora/metering/usage.hpp>
#include <array>
#include <nlohmann/json.hpp>

namespace agora::metering {

namespace {

constexpr std::array<std::string_view, 4> kMetricNames{"Calls", "Rows", "Bytes", "Seconds"};

}// namespace

std::string_view to_string(Metric metric) { return kMetricNames.at(static_cast<std::size_t>(metric)); }

std::optional<Metric> parse_metric(std::string_view text) {
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
        if (kMetricNames[i] == text) {
            return static_cast<Metric>(i);
        }
    }
    return std::nullopt;
}

nlohmann::json to_json(const UsageEvent& event) {
    nlohmann::json doc{{"asset", event.asset},
                       {"metric", std::string(to_string(event.metric))},
                       {"amount", event.amount},
                       {"at", event.at},
                       {"node", event.node}};
    if (event.event_id) {
        doc["event_id"] = *event.event_id;
    }
    return doc;
}

UsageEvent usage_event_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw AgoraError("InvalidEvent", "usage event must be an object");
    }
    auto need = [&](const char* field) -> const nlohmann::json& {
        if (!doc.contains(field)) {
            throw AgoraError("InvalidEvent", std::string("missing field '") + field + "'");
        }
        return doc.at(field);
    };
    UsageEvent event;
    const auto& asset = need("asset");
    const auto& metric = need("metric");
    const auto& amount = need("amount");
    const auto& at = need("at");
    if (!asset.is_string() || !metric.is_string() || !amount.is_number_integer() || !at.is_number_integer()) {
        throw AgoraError("InvalidEvent", "asset and metric must be strings, amount and at integers");
    }
    event.asset = asset.get<std::string>();
    auto parsed = parse_metric(metric.get<std::string>());
    if (!parsed) {
        throw AgoraError("InvalidEvent", "unknown metric '" + metric.get<std::string>() + "'");
    }
    event.metric = *parsed;
    event.amount = amount.get<std::int64_t>();
    event.at = at.get<std::int64_t>();
    if (event.amount < 0) {
        throw AgoraError("InvalidEvent", "amount must be non-negative");
    }
    if (doc.contains("node")) {
        event.node = doc.at("node").get<std::string>();
    }
    if (doc.contains("event_id")) {
        event.event_id = doc.at("event_id").get<std::string>();
    }
    return event;
}

std::vector<UsageEvent> parse_usage_log(std::string_view text) {
    std::vector<UsageEvent> events;
    std::size_t lineNo = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++lineNo;
        auto line = text.substr(begin, end - begin);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            try {
                events.push_back(usage_event_from_json(nlohmann::json::parse(line)));
            } catch (const nlohmann::json::exception& e) {
                throw InvalidUsageLog(lineNo, e.what());
            } catch (const AgoraError& e) {
                throw InvalidUsageLog(lineNo, e.what());
            }
        }
        begin = end + 1;
    }
    return events;
}

std::string serialize_usage_log(const std::vector<UsageEvent>& events) {
    std::string out;
    for (const auto& e : events) {
        out += to_json(e).dump() + "\n";
    }
    return out;
}

}// namespace agora::metering
