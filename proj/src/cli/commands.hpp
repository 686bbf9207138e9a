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

#ifndef AGORA_CLI_COMMANDS_HPP_
#define AGORA_CLI_COMMANDS_HPP_

#include "support.hpp"

#include <optional>
#include <string>
#include <vector>

namespace agora::cli {

struct PublishArgs {
    std::string file;
    std::string market;
    bool dry_run = false;
};

struct SearchArgs {
    std::vector<std::string> keywords;
    std::string goal;
    std::string kind;
};

struct MatchArgs {
    std::string goal;
    std::vector<std::string> bounds;
    std::vector<std::string> keywords;
    std::string budget;
    std::string output_category;
    std::size_t limit = 20;
};

struct PlanArgs {
    std::string sql;
    bool explain = false;
    bool ignore_policies = false;
};

struct RunArgs {
    std::string sql;
    std::string budget;
    std::int64_t at = 0;
    std::string usage_out;
    std::int64_t max_rows = 200;
    std::size_t limit = 20;
};

struct BillArgs {
    std::string usage;
    std::string pricing;
    std::optional<std::int64_t> start;
    std::optional<std::int64_t> end;
    bool json = false;
};

struct EscrowArgs {
    std::size_t bytes = 10240;
    std::size_t chunk = 4096;
    double drop = 0.0;
    double dup = 0.0;
    int retries = 10;
    int max_delay = 3;
    std::optional<std::size_t> tamper;
    std::string price = "$0.10";
    bool summary_only = false;
};

int catalog_publish(Context& ctx, const PublishArgs& args);
int catalog_search(Context& ctx, const SearchArgs& args);
int catalog_match(Context& ctx, const MatchArgs& args);
int plan_command(Context& ctx, const PlanArgs& args);
int run_query(Context& ctx, const RunArgs& args);
int bill_command(Context& ctx, const BillArgs& args);
int escrow_simulate(Context& ctx, const EscrowArgs& args);
int demo_command(Context& ctx, const std::string& persona);

/// "mae<=5000" or "accuracy>=0.9".
catalog::QualityBound parse_bound(const std::string& text);

}// namespace agora::cli

#endif// AGORA_CLI_COMMANDS_HPP_
