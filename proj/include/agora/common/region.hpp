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

#ifndef AGORA_COMMON_REGION_HPP_
#define AGORA_COMMON_REGION_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace agora {

/// Geographic site codes. The enumerator order is the canonical order used for tie-breaking.
enum class Region { EU, NA, ME, AS };

inline constexpr std::array<Region, 4> kAllRegions{Region::EU, Region::NA, Region::ME, Region::AS};

std::string_view to_string(Region region);

/// Case-sensitive match against "EU", "NA", "ME", "AS".
std::optional<Region> parse_region(std::string_view text);

}// namespace agora

#endif// AGORA_COMMON_REGION_HPP_
