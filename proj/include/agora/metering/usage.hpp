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

#ifndef AGORA_METERING_USAGE_HPP_
#define AGORA_METERING_USAGE_HPP_

#include <agora/common/error.hpp>
#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agora::metering {

/// Seconds since the Unix epoch.
using Timestamp = std::int64_t;

enum class Metric { Calls, Rows, Bytes, Seconds };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

struct UsageEvent {
    std::string asset;
    Metric metric = Metric::Calls;
    std::int64_t amount = 0;
    Timestamp at = 0;
    std::string node;
    /// Re-deliveries carrying the same id are counted once.
    std::optional<std::string> event_id;
    friend bool operator==(const UsageEvent&, const UsageEvent&) = default;
};

class InvalidUsageLog : public UsageError {
  public:
    InvalidUsageLog(std::size_t line, const std::string& message)
        : UsageError("InvalidUsageLog", "line " + std::to_string(line) + ": " + message) {}
};

/// {"asset":..,"metric":"Calls","amount":..,"at":..,"node":..[,"event_id":..]}
nlohmann::json to_json(const UsageEvent& event);
UsageEvent usage_event_from_json(const nlohmann::json& document);

/// Newline-delimited usage events; blank lines are skipped.
std::vector<UsageEvent> parse_usage_log(std::string_view text);
std::string serialize_usage_log(const std::vector<UsageEvent>& events);

}// namespace agora::metering

#endif// AGORA_METERING_USAGE_HPP_
