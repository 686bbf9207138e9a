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

#include <agora/metering/tracker.hpp>

namespace agora::metering {

Tracker::Tracker(std::int64_t windowSeconds, NodeTrust nodeTrusted)
    : windowLength(windowSeconds), trusted(std::move(nodeTrusted)) {
    if (windowLength <= 0) {
        throw AgoraError("InvalidWindow", "window length must be positive");
    }
}

Timestamp Tracker::window_start(Timestamp at) const {
    Timestamp q = at / windowLength;
    if (at % windowLength != 0 && at < 0) {
        --q;
    }
    return q * windowLength;
}

TrackResult Tracker::track(const UsageEvent& event) {
    if (event.amount < 0 || event.asset.empty()) {
        throw AgoraError("InvalidEvent", "usage events need an asset and a non-negative amount");
    }
    if (trusted && !trusted(event.node)) {
        throw UntrustedNode(event.node);
    }
    std::lock_guard lock(mutex);
    if (event.event_id && seenIds.contains(*event.event_id)) {
        return TrackResult::Duplicate;
    }
    if (event.at < closedBefore) {
        ++lateCount;
        throw LateEvent(event.at);
    }
    auto& total = open[{window_start(event.at), event.asset, event.metric}];
    if (__builtin_add_overflow(total, event.amount, &total)) {
        throw AgoraError("ArithmeticOverflow", "usage counter for " + event.asset + " overflows");
    }
    if (event.event_id) {
        seenIds.insert(*event.event_id);
    }
    return TrackResult::Accepted;
}

std::vector<AggregatedCounter> Tracker::flush_window(Timestamp now) {
    std::lock_guard lock(mutex);
    std::vector<AggregatedCounter> out;
    for (auto it = open.begin(); it != open.end();) {
        const auto& [start, asset, metric] = it->first;
        if (start + windowLength > now) {
            break;
        }
        out.push_back({start, start + windowLength, asset, metric, it->second});
        it = open.erase(it);
    }
    Timestamp boundary = window_start(now);
    if (boundary > closedBefore) {
        closedBefore = boundary;
    }
    return out;
}

std::size_t Tracker::late_events() const {
    std::lock_guard lock(mutex);
    return lateCount;
}

}// namespace agora::metering
