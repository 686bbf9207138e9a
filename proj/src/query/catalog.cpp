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

#include <agora/common/apportion.hpp>
#include <agora/query/catalog.hpp>
#include <algorithm>

namespace agora::query {

std::int64_t nominal_width(ColumnType type) {
    switch (type) {
        case ColumnType::Int64:
        case ColumnType::Float64:
        case ColumnType::Date: return 8;
        case ColumnType::Bool: return 1;
        case ColumnType::Text: return 16;
    }
    return 8;
}

const ColumnStats* TableStats::column(const std::string& columnName) const {
    for (const auto& c : columns) {
        if (c.name == columnName) {
            return &c;
        }
    }
    return nullptr;
}

TableRegistry::TableRegistry(const std::vector<RegisterTable>& statements) {
    for (const auto& s : statements) {
        add(s);
    }
}

void TableRegistry::add(const RegisterTable& s) {
    if (byName.contains(s.name)) {
        throw AgoraError("DuplicateTable", s.name);
    }
    TableStats stats{s.name, s.region, s.row_count, s.row_bytes, {}};
    std::vector<Rational> weights;
    for (const auto& c : s.columns) {
        weights.emplace_back(nominal_width(c.type));
    }
    std::vector<std::int64_t> widths = weights.empty() ? std::vector<std::int64_t>{} : apportion(s.row_bytes, weights);
    for (std::size_t i = 0; i < s.columns.size(); ++i) {
        const auto& c = s.columns[i];
        std::int64_t distinct = c.distinct.value_or(std::max<std::int64_t>(s.row_count, 1));
        stats.columns.push_back({c.name, c.type, std::max<std::int64_t>(distinct, 1), widths[i]});
    }
    byName.emplace(s.name, std::move(stats));
}

const TableStats& TableRegistry::table(const std::string& name) const {
    auto it = byName.find(name);
    if (it == byName.end()) {
        throw UnknownTable(name);
    }
    return it->second;
}

const TableStats* TableRegistry::find(const std::string& name) const {
    auto it = byName.find(name);
    return it == byName.end() ? nullptr : &it->second;
}

const ColumnStats* TableRegistry::column(const std::string& qualified) const {
    auto dot = qualified.find('.');
    if (dot == std::string::npos) {
        return nullptr;
    }
    const auto* t = find(qualified.substr(0, dot));
    return t == nullptr ? nullptr : t->column(qualified.substr(dot + 1));
}

}// namespace agora::query
