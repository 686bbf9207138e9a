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

#ifndef AGORA_CLI_APP_HPP_
#define AGORA_CLI_APP_HPP_

#include <span>
#include <string>

namespace agora::cli {

struct CommandOutput {
    int exit_code = 0;
    /// Data stream. Empty whenever exit_code is non-zero, except for the plan verdict "compliant=NC-impossible".
    std::string out;
    /// Diagnostics.
    std::string err;
};

/**
 * @brief Parses and runs one agora command line (without the program name).
 * Exit codes: 0 success, 1 domain error, 2 usage, parse or configuration error. Never throws.
 */
CommandOutput run_command(std::span<const std::string> args);

}// namespace agora::cli

#endif// AGORA_CLI_APP_HPP_
