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

#ifndef AGORA_EXECUTION_DATABASE_HPP_
#define AGORA_EXECUTION_DATABASE_HPP_

#include <agora/query/catalog.hpp>
#include <agora/query/logical_plan.hpp>
#include <cstdint>
#include <map>

namespace agora::execution {

/// Materialized rows with qualified column names ("table.column").
struct Relation {
    std::vector<query::OutputColumn> columns;
    std::vector<query::Row> rows;
};

using Database = std::map<std::string, Relation>;

/**
 * @brief Deterministic synthetic data for the registered tables.
 *
 * Each table gets min(row_count, max_rows) rows. A column with d declared distinct values draws from
 * min(d, rows) evenly spaced values spanning its declared range, so key columns of related tables overlap; a
 * column whose domain covers every row holds each value once. Floats are multiples of 0.25, texts are upper-case
 * letter codes and dates count days from 1992-01-01.
 */
Database generate_database(const query::TableRegistry& registry, std::uint64_t seed, std::int64_t maxRows = 200);

/// ISO-8601 date for a day offset from 1970-01-01.
std::string date_from_days(std::int64_t days);

/// Letter code for an index: 0 -> "A", 25 -> "Z", 26 -> "BA".
std::string text_code(std::int64_t index);

}// namespace agora::execution

#endif// AGORA_EXECUTION_DATABASE_HPP_
