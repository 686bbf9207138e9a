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

#include <agora/common/region.hpp>

namespace agora {

std::string_view to_string(Region region) {
    switch (region) {
        case Region::EU: return "EU";
        case Region::NA: return "NA";
        case Region::ME: return "ME";
        case Region::AS: return "AS";
    }
    return "??";
}

std::optional<Region> parse_region(std::string_view text) {
    for (Region r : kAllRegions) {
        if (to_string(r) == text) {
            return r;
        }
    }
    return std::nullopt;
}

}// namespace agora
