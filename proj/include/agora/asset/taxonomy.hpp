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

#ifndef AGORA_ASSET_TAXONOMY_HPP_
#define AGORA_ASSET_TAXONOMY_HPP_

#include <span>
#include <string_view>

namespace agora::asset {

/// Controlled vocabulary of asset goals.
std::span<const std::string_view> goal_taxonomy();

bool is_known_goal(std::string_view goal);

}// namespace agora::asset

#endif// AGORA_ASSET_TAXONOMY_HPP_
