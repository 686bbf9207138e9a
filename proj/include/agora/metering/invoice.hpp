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

#ifndef AGORA_METERING_INVOICE_HPP_
#define AGORA_METERING_INVOICE_HPP_

#include <agora/asset/types.hpp>
#include <agora/metering/tracker.hpp>
#include <map>
#include <nlohmann/json_fwd.hpp>
#include <span>

namespace agora::metering {

struct InvoiceLine {
    std::string asset;
    /// Metric name for pay-per-use lines, "once" or "subscription" otherwise.
    std::string metric;
    std::int64_t quantity = 0;
    std::string rate;
    Money amount;
    friend bool operator==(const InvoiceLine&, const InvoiceLine&) = default;
};

struct Invoice {
    Timestamp period_start = 0;
    Timestamp period_end = 0;
    std::vector<InvoiceLine> lines;
    Money total;

    /// Plain-text table.
    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

class MissingPricing : public AgoraError {
  public:
    explicit MissingPricing(const std::string& asset) : AgoraError("MissingPricing", asset) {}
};

/// Which metric a pay-per-use unit bills: calls and rows for per-call units, bytes per megabyte, seconds per hour.
bool unit_bills(asset::UsageUnit unit, Metric metric);

/**
 * @brief Bills the counters whose windows lie inside [start, end).
 *
 * Pay-per-use lines carry the exact amount quantity·rate/divisor, floored to micro-units; the micro-units lost to
 * flooring (the floor of the exact total minus the floored sum) go to the lines with the largest remainders, lower
 * line first on ties. Pay-once entries add one line each; subscriptions add ceil(period / period_s) periods.
 * Counters of metrics the asset's unit does not bill are ignored. Throws MissingPricing for an unpriced asset.
 */
Invoice make_invoice(std::span<const AggregatedCounter> counters,
                     const std::map<std::string, asset::PricingModel>& pricing, Timestamp start, Timestamp end);

/// JSON object mapping asset id to a pricing document.
std::map<std::string, asset::PricingModel> parse_pricing_table(std::string_view text);

}// namespace agora::metering

#endif// AGORA_METERING_INVOICE_HPP_
