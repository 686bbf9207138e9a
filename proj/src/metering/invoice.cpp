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
#include <agora/metering/invoice.hpp>
#include <algorithm>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <numeric>

namespace agora::metering {

namespace {

using asset::UsageUnit;

constexpr std::int64_t kCommonDenominator = 9'000'000;

std::int64_t divisor(UsageUnit unit) {
    switch (unit) {
        case UsageUnit::PerCall: return 1;
        case UsageUnit::PerThousandCalls: return 1000;
        case UsageUnit::PerMegabyte: return 1'000'000;
        case UsageUnit::PerHour: return 3600;
    }
    return 1;
}

std::string rateText(const asset::PayPerUse& p) {
    switch (p.unit) {
        case UsageUnit::PerCall: return p.rate.to_string() + " per call";
        case UsageUnit::PerThousandCalls: return p.rate.to_string() + " per 1000 calls";
        case UsageUnit::PerMegabyte: return p.rate.to_string() + " per MB";
        case UsageUnit::PerHour: return p.rate.to_string() + " per hour";
    }
    return p.rate.to_string();
}

std::int64_t narrow(__int128 v, const std::string& what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw AgoraError("ArithmeticOverflow", what + " does not fit 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

}// namespace

bool unit_bills(UsageUnit unit, Metric metric) {
    switch (unit) {
        case UsageUnit::PerCall:
        case UsageUnit::PerThousandCalls: return metric == Metric::Calls || metric == Metric::Rows;
        case UsageUnit::PerMegabyte: return metric == Metric::Bytes;
        case UsageUnit::PerHour: return metric == Metric::Seconds;
    }
    return false;
}

Invoice make_invoice(std::span<const AggregatedCounter> counters, const std::map<std::string, asset::PricingModel>& pricing,
                     Timestamp start, Timestamp end) {
    if (end < start) {
        throw AgoraError("InvalidPeriod", "period end precedes its start");
    }
    std::map<std::pair<std::string, Metric>, std::int64_t> quantities;
    for (const auto& c : counters) {
        if (!pricing.contains(c.asset)) {
            throw MissingPricing(c.asset);
        }
        if (c.window_start < start || c.window_end > end) {
            continue;
        }
        auto& q = quantities[{c.asset, c.metric}];
        if (__builtin_add_overflow(q, c.total, &q)) {
            throw AgoraError("ArithmeticOverflow", "usage quantity for " + c.asset + " overflows");
        }
    }

    Invoice invoice;
    invoice.period_start = start;
    invoice.period_end = end;

    std::vector<__int128> numerators;
    for (const auto& [key, quantity] : quantities) {
        const auto* perUse = std::get_if<asset::PayPerUse>(&pricing.at(key.first));
        if (perUse == nullptr || !unit_bills(perUse->unit, key.second) || quantity == 0) {
            continue;
        }
        if (perUse->rate.micro_units < 0) {
            throw AgoraError("InvalidPricing", key.first + " has a negative rate");
        }
        numerators.push_back(static_cast<__int128>(quantity) * perUse->rate.micro_units
                             * (kCommonDenominator / divisor(perUse->unit)));
        invoice.lines.push_back({key.first, std::string(to_string(key.second)), quantity, rateText(*perUse), {}});
    }
    __int128 exactSum = 0;
    __int128 flooredSum = 0;
    std::vector<std::size_t> order(numerators.size());
    for (std::size_t i = 0; i < numerators.size(); ++i) {
        exactSum += numerators[i];
        __int128 floored = numerators[i] / kCommonDenominator;
        flooredSum += floored;
        invoice.lines[i].amount = Money::micros(narrow(floored, "line amount"));
        order[i] = i;
    }
    __int128 leftover = exactSum / kCommonDenominator - flooredSum;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return numerators[a] % kCommonDenominator > numerators[b] % kCommonDenominator;
    });
    for (std::size_t k = 0; k < order.size() && leftover > 0; ++k, --leftover) {
        invoice.lines[order[k]].amount += Money::micros(1);
    }

    for (const auto& [assetId, model] : pricing) {
        if (const auto* once = std::get_if<asset::PayOnce>(&model)) {
            invoice.lines.push_back({assetId, "once", 1, once->price.to_string() + " once", once->price});
        } else if (const auto* sub = std::get_if<asset::Subscription>(&model)) {
            if (sub->period_s <= 0) {
                throw AgoraError("InvalidPricing", assetId + " has a non-positive subscription period");
            }
            std::int64_t periods = (end - start + sub->period_s - 1) / sub->period_s;
            if (periods == 0) {
                continue;
            }
            auto amount = static_cast<__int128>(periods) * sub->price.micro_units;
            invoice.lines.push_back({assetId, "subscription", periods,
                                     fmt::format("{} per {} s", sub->price.to_string(), sub->period_s),
                                     Money::micros(narrow(amount, "subscription amount"))});
        }
    }
    for (const auto& line : invoice.lines) {
        invoice.total += line.amount;
    }
    return invoice;
}

std::string Invoice::to_text() const {
    std::string out = fmt::format("invoice period {}..{}\n", period_start, period_end);
    out += fmt::format("{:<32} {:<12} {:>14} {:<28} {:>14}\n", "asset", "metric", "quantity", "rate", "amount");
    for (const auto& l : lines) {
        out += fmt::format("{:<32} {:<12} {:>14} {:<28} {:>14}\n", l.asset, l.metric, l.quantity, l.rate,
                           l.amount.to_string());
    }
    out += fmt::format("{:<32} {:<12} {:>14} {:<28} {:>14}\n", "total", "", "", "", total.to_string());
    return out;
}

nlohmann::json Invoice::to_json() const {
    nlohmann::json doc;
    doc["period"] = {{"start", period_start}, {"end", period_end}};
    doc["lines"] = nlohmann::json::array();
    for (const auto& l : lines) {
        doc["lines"].push_back({{"asset", l.asset},
                                {"metric", l.metric},
                                {"quantity", l.quantity},
                                {"rate", l.rate},
                                {"amount", l.amount.to_string()},
                                {"amount_micros", l.amount.micro_units}});
    }
    doc["total"] = total.to_string();
    doc["total_micros"] = total.micro_units;
    return doc;
}

std::map<std::string, asset::PricingModel> parse_pricing_table(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw asset::DescriptorSyntaxError(e.byte, e.what());
    }
    if (!doc.is_object()) {
        throw asset::DescriptorSchemaError("pricing", "expected an object mapping asset id to pricing");
    }
    std::map<std::string, asset::PricingModel> table;
    for (const auto& [assetId, model] : doc.items()) {
        table.emplace(assetId, asset::pricing_from_json(model, assetId));
    }
    return table;
}

}// namespace agora::metering
