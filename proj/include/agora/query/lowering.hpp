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

#ifndef AGORA_QUERY_LOWERING_HPP_
#define AGORA_QUERY_LOWERING_HPP_

#include <agora/query/catalog.hpp>
#include <agora/query/logical_plan.hpp>

namespace agora::query {

class UnknownColumn : public AgoraError {
  public:
    explicit UnknownColumn(const std::string& name) : AgoraError("UnknownColumn", name) {}
};

class AmbiguousColumn : public AgoraError {
  public:
    explicit AmbiguousColumn(const std::string& name) : AgoraError("AmbiguousColumn", name) {}
};

/// Semantically invalid query (disconnected join graph, ungrouped column, type error, ...).
class InvalidQuery : public AgoraError {
  public:
    explicit InvalidQuery(const std::string& message) : AgoraError("InvalidQuery", message) {}
};

/// Qualifies a column reference against the FROM list. Throws UnknownColumn or AmbiguousColumn.
std::string resolve_column(const ColumnRef& ref, const std::vector<std::string>& tables, const TableRegistry& registry);

/**
 * @brief Lowers a select into the canonical left-deep plan.
 * Scans read only referenced columns, filters sit directly on their scans, joins follow FROM order (the next
 * table is the first one connected to what has been joined so far), then the optional aggregate and the final
 * projection.
 */
LogicalPlan to_logical_plan(const SelectSpec& query, const TableRegistry& registry);

}// namespace agora::query

#endif// AGORA_QUERY_LOWERING_HPP_
