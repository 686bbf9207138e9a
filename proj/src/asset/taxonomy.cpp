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

#include <agora/asset/taxonomy.hpp>
#include <algorithm>
#include <array>

namespace agora::asset {

namespace {
constexpr std::array<std::string_view, 22> kGoals{
    "aggregate",      "anomaly-detection", "augmentation",     "classification", "clustering",
    "compute",        "data-source",       "dimensionality-reduction", "feature-encoding", "feature-engineering",
    "filter",         "forecasting",       "imputation",       "join",           "normalization",
    "project",        "recommendation",    "regression",       "scan",           "sort",
    "storage",        "visualization",
};
}// namespace

std::span<const std::string_view> goal_taxonomy() { return kGoals; }

bool is_known_goal(std::string_view goal) { return std::binary_search(kGoals.begin(), kGoals.end(), goal); }

}// namespace agora::asset
