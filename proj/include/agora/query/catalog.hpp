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

#ifndef AGORA_QUERY_CATALOG_HPP_
#define AGORA_QUERY_CATALOG_HPP_

#include <agora/common/error.hpp>
#include <agora/query/ast.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace agora::query {

struct ColumnStats {
    std::string name;
    ColumnType type = ColumnType::Int64;
    /// Number of distinct values; defaults to max(row_count, 1) when not declared.
    std::int64_t distinct = 1;
    /// Share of the table's row width in bytes. Widths of a table sum to its row_bytes.
    std::int64_t width = 0;
};

struct TableStats {
    std::string name;
    Region region = Region::EU;
    std::int64_t row_count = 0;
    std::int64_t row_bytes = 1;
    std::vector<ColumnStats> columns;

    [[nodiscard]] const ColumnStats* column(const std::string& columnName) const;
};

class UnknownTable : public AgoraError {
  public:
    explicit UnknownTable(const std::string& name) : AgoraError("UnknownTable", name) {}
};

/// Registered tables and their statistics.
class TableRegistry {
  public:
    TableRegistry() = default;
    explicit TableRegistry(const std::vector<RegisterTable>& statements);

    /// Throws AgoraError("DuplicateTable") on re-registration.
    void add(const RegisterTable& statement);

    [[nodiscard]] const TableStats& table(const std::string& name) const;
    [[nodiscard]] const TableStats* find(const std::string& name) const;
    [[nodiscard]] const std::map<std::string, TableStats>& tables() const { return byName; }

    /// Stats of a "table.column" name.
    [[nodiscard]] const ColumnStats* column(const std::string& qualified) const;

  private:
    std::map<std::string, TableStats> byName;
};

/// Nominal width of a column type, used to split a table's declared row_bytes across its columns.
std::int64_t nominal_width(ColumnType type);

}// namespace agora::query

#endif// AGORA_QUERY_CATALOG_HPP_
