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

#ifndef AGORA_EXECUTION_EXECUTOR_HPP_
#define AGORA_EXECUTION_EXECUTOR_HPP_

#include <agora/execution/database.hpp>
#include <agora/execution/variants.hpp>
#include <agora/metering/usage.hpp>

namespace agora::execution {

class MissingTable : public AgoraError {
  public:
    explicit MissingTable(const std::string& name) : AgoraError("MissingTable", name) {}
};

class ArithmeticOverflow : public AgoraError {
  public:
    explicit ArithmeticOverflow(const std::string& message) : AgoraError("ArithmeticOverflow", message) {}
};

struct ExecutionResult {
    Relation result;
    /// One Rows event per operator and one Bytes event per Ship, in post-order.
    std::vector<metering::UsageEvent> events;
};

/**
 * @brief Runs a bound plan over in-memory tables.
 *
 * Equi-joins are hash joins and aggregation is hash-based. The inputs of a join are evaluated concurrently; the
 * result and the event order do not depend on scheduling. A global aggregate over no rows yields one row with
 * COUNT 0 and NULL for the other aggregates. Ship events are charged to "transfer/<from>-<to>" on the sending node.
 */
ExecutionResult execute_plan(const ExecutionPlan& plan, const Database& database, Timestamp at = 0);

/// Runs a site plan without bindings; operator events use "builtin/<goal>" assets and the region as node.
ExecutionResult execute_site_plan(const planner::SitePtr& plan, const Database& database, Timestamp at = 0);

}// namespace agora::execution

#endif// AGORA_EXECUTION_EXECUTOR_HPP_
