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
#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace agora {

std::vector<std::int64_t> apportion(std::int64_t total, std::span<const Rational> weights) {
    using Wide = __int128;
    if (total < 0) {
        throw std::invalid_argument("apportion: negative total");
    }
    if (weights.empty()) {
        throw std::invalid_argument("apportion: no weights");
    }
    // Weights on a common denominator.
    auto wideGcd = [](Wide a, Wide b) {
        while (b != 0) {
            Wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    Wide lcm = 1;
    for (const auto& w : weights) {
        if (w.numerator() < 0) {
            throw std::invalid_argument("apportion: negative weight");
        }
        Wide d = w.denominator();
        lcm = lcm / wideGcd(lcm, d) * d;
        if (lcm > (Wide(1) << 62)) {
            throw std::overflow_error("apportion: denominators too large");
        }
    }
    std::vector<Wide> scaled;
    scaled.reserve(weights.size());
    Wide sum = 0;
    for (const auto& w : weights) {
        Wide v = Wide(w.numerator()) * (lcm / w.denominator());
        scaled.push_back(v);
        sum += v;
    }
    if (sum <= 0) {
        throw std::invalid_argument("apportion: weights sum to zero");
    }

    std::vector<std::int64_t> parts(weights.size());
    std::vector<Wide> remainders(weights.size());
    Wide assigned = 0;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        Wide exact = Wide(total) * scaled[i];
        parts[i] = static_cast<std::int64_t>(exact / sum);
        remainders[i] = exact % sum;
        assigned += parts[i];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    auto leftover = static_cast<std::int64_t>(Wide(total) - assigned);
    for (std::size_t k = 0; k < static_cast<std::size_t>(leftover); ++k) {
        ++parts[order[k]];
    }
    return parts;
}

}// namespace agora
