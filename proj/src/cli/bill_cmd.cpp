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

#include "commands.hpp"

#include <agora/escrow/session.hpp>
#include <agora/metering/invoice.hpp>
#include <agora/metering/tracker.hpp>
#include <agora/metering/usage.hpp>
#include <algorithm>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <sstream>

namespace agora::cli {

int bill_command(Context& ctx, const BillArgs& args) {
    auto events = metering::parse_usage_log(read_file(args.usage));
    if (events.empty()) {
        throw UsageError("InvalidUsageLog", args.usage + " holds no events");
    }
    std::string pricingPath = args.pricing;
    std::int64_t window = 60;
    if (ctx.has_config()) {
        const Config& config = ctx.config();
        window = config.window_seconds;
        if (pricingPath.empty() && config.pricing) {
            pricingPath = config.pricing->string();
        }
    }
    if (pricingPath.empty()) {
        throw UsageError("MissingArgument", "--pricing or a configured pricing table is required");
    }
    auto pricing = metering::parse_pricing_table(read_file(pricingPath));

    std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.at < b.at; });
    metering::Tracker tracker(window);
    std::size_t duplicates = 0;
    for (const auto& e : events) {
        if (tracker.track(e) == metering::TrackResult::Duplicate) {
            ++duplicates;
        }
    }
    const metering::Timestamp start = args.start.value_or(tracker.window_start(events.front().at));
    const metering::Timestamp end = args.end.value_or(tracker.window_start(events.back().at) + window);
    if (end <= start) {
        throw UsageError("InvalidArgument", "--end must be after --start");
    }
    auto counters = tracker.flush_window(std::max(end, tracker.window_start(events.back().at) + window));
    auto invoice = metering::make_invoice(counters, pricing, start, end);

    if (args.json) {
        auto doc = invoice.to_json();
        doc["events"] = events.size();
        doc["duplicates"] = duplicates;
        doc["window_seconds"] = window;
        ctx.out << doc.dump(2) << '\n';
    } else {
        ctx.out << fmt::format("events={} duplicates={} window={}s counters={}\n", events.size(), duplicates, window,
                               counters.size());
        ctx.out << invoice.to_text();
    }
    return 0;
}

int escrow_simulate(Context& ctx, const EscrowArgs& args) {
    if (args.bytes == 0) {
        throw UsageError("InvalidArgument", "--bytes must be positive");
    }
    if (args.chunk == 0) {
        throw UsageError("InvalidArgument", "--chunk must be positive");
    }
    escrow::SimNetConfig net;
    net.seed = ctx.seed;
    net.drop_rate = args.drop;
    net.dup_rate = args.dup;
    net.max_delay_steps = args.max_delay;
    net.max_retries = args.retries;
    escrow::SessionOptions options;
    options.chunk_bytes = args.chunk;
    options.price_per_chunk = parse_money_option(args.price, "--price");
    options.tamper_chunk = args.tamper;

    escrow::SeededBytes source(ctx.seed);
    auto data = source.bytes(args.bytes);
    metering::InMemoryBackend backend;
    auto transcript = escrow::run_session(data, net, backend, options);

    std::ostringstream buffer;
    if (!args.summary_only) {
        buffer << transcript.text();
    }
    Money paid;
    std::size_t confirmed = 0;
    for (const auto& p : transcript.payments) {
        if (p.status == metering::TxnStatus::Confirmed) {
            paid += p.amount;
            ++confirmed;
        }
    }
    const bool completed = transcript.outcome == escrow::SessionOutcome::Completed;
    buffer << fmt::format("outcome={} chunks={} steps={} payments={} paid={} delivered={}/{} intact={}\n",
                          completed ? "Completed" : "Aborted(" + transcript.abort_reason + ")", transcript.chunks,
                          transcript.steps, confirmed, paid.to_string(), transcript.received.size(), data.size(),
                          transcript.received == data ? "yes" : "no");
    ctx.out << buffer.str();
    return 0;
}

}// namespace agora::cli
