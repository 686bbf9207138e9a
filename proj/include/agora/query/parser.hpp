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

#ifndef AGORA_QUERY_PARSER_HPP_
#define AGORA_QUERY_PARSER_HPP_

#include <agora/common/error.hpp>
#include <agora/query/ast.hpp>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace agora::query {

class SqlSyntaxError : public UsageError {
  public:
    SqlSyntaxError(std::size_t line, std::size_t column, std::string found, std::set<std::string> expected);

    [[nodiscard]] std::size_t line() const { return atLine; }
    [[nodiscard]] std::size_t column() const { return atColumn; }
    /// Text of the offending token, or "<end of input>".
    [[nodiscard]] const std::string& found() const { return foundToken; }
    [[nodiscard]] const std::set<std::string>& expected() const { return expectedSet; }

  private:
    std::size_t atLine;
    std::size_t atColumn;
    std::string foundToken;
    std::set<std::string> expectedSet;
};

/// A statement that parses but breaks a registration or policy invariant.
class InvalidStatement : public UsageError {
  public:
    InvalidStatement(std::size_t line, std::size_t column, const std::string& message)
        : UsageError("InvalidStatement", std::to_string(line) + ":" + std::to_string(column) + ": " + message) {}
};

/**
 * @brief Parses a program of REGISTER TABLE, CONSTRAINT and SELECT statements.
 * Keywords (including region codes) are case-insensitive; identifiers keep their spelling. "--" starts a
 * comment running to the end of the line.
 */
std::vector<Statement> parse_program(std::string_view text);

/// Statements in a program grouped by kind, in source order.
struct Program {
    std::vector<RegisterTable> tables;
    std::vector<planner::CompliancePolicy> policies;
    std::vector<SelectSpec> queries;
};

Program split_program(const std::vector<Statement>& statements);

}// namespace agora::query

#endif// AGORA_QUERY_PARSER_HPP_
