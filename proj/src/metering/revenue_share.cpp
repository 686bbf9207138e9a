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

#include <agora/common/apportion.hpp>
#include <agora/common/error.hpp>
#include <agora/metering/revenue_share.hpp>

namespace agora::metering {

namespace {

void checkNode(const RevenueShareTree& node, int depth, const std::string& path, std::vector<std::string>& problems) {
    if (depth > RevenueShareTree::kMaxDepth) {
        problems.push_back(path + ": depth exceeds " + std::to_string(RevenueShareTree::kMaxDepth));
        return;
    }
    if (node.beneficiary.empty()) {
        problems.push_back(path + ": empty beneficiary");
    }
    if (node.children.empty()) {
        return;
    }
    Rational sum{0};
    for (const auto& child : node.children) {
        if (child.share <= Rational{0} || child.share > Rational{1}) {
            problems.push_back(path + "/" + child.beneficiary + ": share " + child.share.to_string() + " outside (0, 1]");
        }
        sum = sum + child.share;
    }
    if (sum != Rational{1}) {
        problems.push_back(path + ": shares sum " + sum.to_string() + " ≠ 1");
    }
    for (const auto& child : node.children) {
        checkNode(child, depth + 1, path + "/" + child.beneficiary, problems);
    }
}

void splitNode(std::int64_t amount, const RevenueShareTree& node, std::vector<std::pair<std::string, Money>>& out) {
    if (node.children.empty()) {
        out.emplace_back(node.beneficiary, Money::micros(amount));
        return;
    }
    std::vector<Rational> shares;
    shares.reserve(node.children.size());
    for (const auto& child : node.children) {
        shares.push_back(child.share);
    }
    auto parts = apportion(amount, shares);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        splitNode(parts[i], node.children[i], out);
    }
}

}// namespace

std::vector<std::string> check_revenue_share(const RevenueShareTree& tree) {
    std::vector<std::string> problems;
    if (tree.share != Rational{1}) {
        problems.push_back(tree.beneficiary + ": root share must be 1");
    }
    checkNode(tree, 1, tree.beneficiary, problems);
    return problems;
}

std::vector<std::pair<std::string, Money>> split_payment(Money gross, const RevenueShareTree& tree) {
    auto problems = check_revenue_share(tree);
    if (!problems.empty()) {
        throw AgoraError("InvalidShareTree", problems.front());
    }
    if (gross.micro_units < 0) {
        throw AgoraError("InvalidAmount", "cannot split a negative amount");
    }
    std::vector<std::pair<std::string, Money>> out;
    splitNode(gross.micro_units, tree, out);
    return out;
}

}// namespace agora::metering
