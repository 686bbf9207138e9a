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

#ifndef AGORA_METERING_REVENUE_SHARE_HPP_
#define AGORA_METERING_REVENUE_SHARE_HPP_

#include <agora/common/money.hpp>
#include <agora/common/rational.hpp>
#include <string>
#include <utility>
#include <vector>

namespace agora::metering {

/**
 * @brief Hierarchical split of a payment across the providers of a composite asset.
 *
 * A node with children forwards its whole amount to them according to their shares; leaves are the beneficiaries
 * that end up holding money. A provider that keeps part of its income lists itself as one of its own children.
 * The root's share is 1.
 */
struct RevenueShareTree {
    static constexpr int kMaxDepth = 8;

    std::string beneficiary;
    Rational share{1};
    std::vector<RevenueShareTree> children;

    friend bool operator==(const RevenueShareTree&, const RevenueShareTree&) = default;
};

/// Human-readable problems with the tree, e.g. "shares sum 5/6 ≠ 1". Empty when the tree is valid.
std::vector<std::string> check_revenue_share(const RevenueShareTree& tree);

/**
 * @brief Splits gross top-down using largest-remainder apportionment at each sibling group.
 * Returns one entry per leaf in depth-first order; the amounts sum to gross exactly.
 * Throws AgoraError("InvalidShareTree") when check_revenue_share reports problems.
 */
std::vector<std::pair<std::string, Money>> split_payment(Money gross, const RevenueShareTree& tree);

}// namespace agora::metering

#endif// AGORA_METERING_REVENUE_SHARE_HPP_
