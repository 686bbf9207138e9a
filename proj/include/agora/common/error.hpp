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

#ifndef AGORA_COMMON_ERROR_HPP_
#define AGORA_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace agora {

/**
 * @brief Base class of every domain error raised by the library.
 * The kind is a stable identifier (e.g. "DuplicateId") that callers and the CLI
 * can switch on without parsing the message.
 */
class AgoraError : public std::runtime_error {
  public:
    AgoraError(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), errorKind(std::move(kind)) {}

    [[nodiscard]] const std::string& kind() const noexcept { return errorKind; }

  private:
    std::string errorKind;
};

/// Input that could not be parsed or was used incorrectly; the CLI maps it to exit code 2.
class UsageError : public AgoraError {
  public:
    using AgoraError::AgoraError;
};

}// namespace agora

#endif// AGORA_COMMON_ERROR_HPP_
