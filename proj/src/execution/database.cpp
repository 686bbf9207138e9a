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

#include <agora/execution/database.hpp>
#include <algorithm>
#include <fmt/format.h>
#include <numeric>
#include <random>

namespace agora::execution {

namespace {

constexpr std::int64_t kBaseDay = 8035;// 1992-01-01

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h = (h ^ c) * 1099511628211ULL;
    }
    return h;
}

query::Value valueFor(query::ColumnType type, std::int64_t k) {
    switch (type) {
        case query::ColumnType::Int64: return k;
        case query::ColumnType::Float64: return static_cast<double>(k) * 0.25;
        case query::ColumnType::Text: return text_code(k);
        case query::ColumnType::Date: return date_from_days(kBaseDay + k);
        case query::ColumnType::Bool: return k % 2 == 1;
    }
    return k;
}

}// namespace

std::string date_from_days(std::int64_t days) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const std::int64_t doe = days - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t day = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t month = mp < 10 ? mp + 3 : mp - 9;
    const std::int64_t year = yoe + era * 400 + (month <= 2 ? 1 : 0);
    return fmt::format("{:04}-{:02}-{:02}", year, month, day);
}

std::string text_code(std::int64_t index) {
    std::string code;
    do {
        code.insert(code.begin(), static_cast<char>('A' + index % 26));
        index /= 26;
    } while (index > 0);
    return code;
}

Database generate_database(const query::TableRegistry& registry, std::uint64_t seed, std::int64_t maxRows) {
    Database db;
    for (const auto& [name, stats] : registry.tables()) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(fnv1a(name)), static_cast<std::uint32_t>(fnv1a(name) >> 32)};
        std::mt19937_64 rng(seq);
        const std::int64_t rows = std::min(stats.row_count, maxRows);
        Relation table;
        table.rows.assign(static_cast<std::size_t>(rows), query::Row(stats.columns.size()));
        for (std::size_t c = 0; c < stats.columns.size(); ++c) {
            const auto& col = stats.columns[c];
            table.columns.push_back({name + "." + col.name, col.type});
            const std::int64_t domain = std::max<std::int64_t>(1, std::min(col.distinct, rows));
            const std::int64_t step = std::max<std::int64_t>(1, col.distinct / domain);
            std::vector<std::int64_t> picks(static_cast<std::size_t>(rows));
            if (domain == rows) {
                std::iota(picks.begin(), picks.end(), 0);
                std::shuffle(picks.begin(), picks.end(), rng);
            } else {
                std::uniform_int_distribution<std::int64_t> pick(0, domain - 1);
                for (auto& p : picks) {
                    p = pick(rng);
                }
            }
            for (std::int64_t r = 0; r < rows; ++r) {
                table.rows[static_cast<std::size_t>(r)][c] = valueFor(col.type, picks[static_cast<std::size_t>(r)] * step);
            }
        }
        db.emplace(name, std::move(table));
    }
    return db;
}

}// namespace agora::execution
