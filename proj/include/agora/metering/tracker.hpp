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

#ifndef AGORA_METERING_TRACKER_HPP_
#define AGORA_METERING_TRACKER_HPP_

#include <agora/metering/usage.hpp>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace agora::metering {

/// Total of one (asset, metric) over the tumbling window [window_start, window_end).
struct AggregatedCounter {
    Timestamp window_start = 0;
    Timestamp window_end = 0;
    std::string asset;
    Metric metric = Metric::Calls;
    std::int64_t total = 0;
    friend bool operator==(const AggregatedCounter&, const AggregatedCounter&) = default;
};

class LateEvent : public AgoraError {
  public:
    explicit LateEvent(Timestamp at) : AgoraError("LateEvent", "event at " + std::to_string(at) + " falls in a closed window") {}
};

class UntrustedNode : public AgoraError {
  public:
    explicit UntrustedNode(const std::string& node)
        : AgoraError("UntrustedNode", node + " holds no valid usage-tracking certificate") {}
};

enum class TrackResult { Accepted, Duplicate };

/**
 * @brief Pre-aggregates usage events into tumbling-window counters.
 *
 * Thread-safe: track may be called from many threads while another flushes. A window is emitted exactly once, by
 * the first flush whose now is at or past its end; events for windows that have been flushed are rejected as late.
 */
class Tracker {
  public:
    using NodeTrust = std::function<bool(const std::string& node)>;

    explicit Tracker(std::int64_t windowSeconds = 60, NodeTrust nodeTrusted = {});

    /// Throws LateEvent, UntrustedNode, or AgoraError("InvalidEvent") for a negative amount or empty asset.
    TrackResult track(const UsageEvent& event);

    /// Counters of every open window with end <= now, sorted by (window_start, asset, metric).
    std::vector<AggregatedCounter> flush_window(Timestamp now);

    [[nodiscard]] std::int64_t window_seconds() const { return windowLength; }
    [[nodiscard]] std::size_t late_events() const;
    [[nodiscard]] Timestamp window_start(Timestamp at) const;

  private:
    std::int64_t windowLength;
    NodeTrust trusted;
    mutable std::mutex mutex;
    std::map<std::tuple<Timestamp, std::string, Metric>, std::int64_t> open;
    std::set<std::string> seenIds;
    Timestamp closedBefore = std::numeric_limits<Timestamp>::min();
    std::size_t lateCount = 0;
};

}// namespace agora::metering

#endif// AGORA_METERING_TRACKER_HPP_
