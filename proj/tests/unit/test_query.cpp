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

#include "oracles.hpp"

#include <agora/execution/executor.hpp>
#include <agora/planner/site_plan.hpp>
#include <agora/query/lowering.hpp>
#include <agora/query/parser.hpp>
#include <catch_amalgamated.hpp>

using namespace agora;
using namespace agora::query;

namespace {

const char* kTables = R"(
REGISTER TABLE customer AT NA CARD 1000 ROWBYTES 64 COLS (custkey INT DISTINCT 1000, name TEXT, segment TEXT DISTINCT 5);
REGISTER TABLE orders AT EU CARD 5000 ROWBYTES 40 COLS (orderkey INT DISTINCT 5000, custkey INT DISTINCT 1000, price FLOAT);
)";

Program program(const std::string& text) {
    return split_program(parse_program(text));
}

SqlSyntaxError syntaxError(const std::string& text) {
    try {
        parse_program(text);
    } catch (const SqlSyntaxError& e) {
        return e;
    }
    FAIL("no syntax error for: " << text);
    throw std::logic_error("unreachable");
}

/// Direct translation of a logical plan: scans at home, every other operator where its first child runs.
planner::SitePtr placeNaively(const LogicalPtr& node, const planner::PlanFactory& factory) {
    std::vector<planner::SitePtr> kids;
    for (const auto& child : node->children) {
        kids.push_back(placeNaively(child, factory));
    }
    return std::visit(
        [&](const auto& op) -> planner::SitePtr {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, ScanOp>) {
                return factory.scan(op);
            } else if constexpr (std::is_same_v<T, FilterOp>) {
                return factory.filter(op, kids[0]);
            } else if constexpr (std::is_same_v<T, JoinOp>) {
                return factory.join(op, kids[0], factory.place(kids[1], kids[0]->exec_region));
            } else if constexpr (std::is_same_v<T, AggregateOp>) {
                return factory.aggregate(op, kids[0]);
            } else {
                return factory.project(op, kids[0]);
            }
        },
        node->op);
}

}// namespace

TEST_CASE("registration statements carry their statistics", "[parser]") {
    auto p = program(kTables);
    REQUIRE(p.tables.size() == 2);
    CHECK(p.tables[0].name == "customer");
    CHECK(p.tables[0].region == Region::NA);
    CHECK(p.tables[0].row_count == 1000);
    CHECK(p.tables[0].row_bytes == 64);
    CHECK(p.tables[0].columns[2] == ColumnDef{"segment", ColumnType::Text, 5});
    CHECK_FALSE(p.tables[0].columns[1].distinct);
}

TEST_CASE("policy statements", "[parser]") {
    auto p = program("CONSTRAINT DENY SHIP FROM eu TO na; CONSTRAINT deny ship from ME to ANY;"
                     "CONSTRAINT ALLOW ONLY AGGREGATED FROM AS;");
    REQUIRE(p.policies.size() == 3);
    CHECK(p.policies[0] == planner::CompliancePolicy{planner::DenyShip{Region::EU, Region::NA}});
    CHECK(p.policies[1] == planner::CompliancePolicy{planner::DenyShip{Region::ME, std::nullopt}});
    CHECK(p.policies[2] == planner::CompliancePolicy{planner::AggregatedOnly{Region::AS}});
    CHECK_THROWS_AS(parse_program("CONSTRAINT DENY SHIP FROM EU TO EU;"), InvalidStatement);
}

TEST_CASE("select statements", "[parser]") {
    auto p = program("SELECT c.segment, COUNT(*), SUM(price) FROM customer, orders "
                     "WHERE customer.custkey = orders.custkey AND price >= -2.5 AND segment <> 'it''s' "
                     "GROUP BY c.segment AT eu; -- trailing comment");
    REQUIRE(p.queries.size() == 1);
    const auto& q = p.queries[0];
    CHECK_FALSE(q.star);
    REQUIRE(q.items.size() == 3);
    CHECK(std::get<ColumnRef>(q.items[0]) == ColumnRef{"c", "segment"});
    CHECK(std::get<AggregateCall>(q.items[1]) == AggregateCall{AggFunc::Count, std::nullopt});
    CHECK(std::get<AggregateCall>(q.items[2]) == AggregateCall{AggFunc::Sum, ColumnRef{"", "price"}});
    CHECK(q.tables == std::vector<std::string>{"customer", "orders"});
    REQUIRE(q.predicates.size() == 3);
    CHECK(q.predicates[0].is_column_pair());
    CHECK(std::get<Value>(q.predicates[1].right) == Value{-2.5});
    CHECK(q.predicates[2].op == CompareOp::Ne);
    CHECK(std::get<Value>(q.predicates[2].right) == Value{std::string("it's")});
    CHECK(q.target_region == Region::EU);
    CHECK(program("SELECT * FROM orders;").queries[0].star);
}

TEST_CASE("syntax errors report position, offending token and expectations", "[parser]") {
    auto e = syntaxError("SELECT FROM orders;");
    CHECK(e.line() == 1);
    CHECK(e.column() == 8);
    CHECK(e.found() == "FROM");
    CHECK(e.expected().contains("identifier"));

    e = syntaxError("SELECT *\nFROM orders\nWHERE price > ;");
    CHECK(e.line() == 3);
    CHECK(e.column() == 15);
    CHECK(e.found() == ";");

    e = syntaxError("SELECT * FROM orders");
    CHECK(e.found() == "<end of input>");
    CHECK(e.expected().contains("';'"));

    e = syntaxError("DROP TABLE orders;");
    CHECK(e.expected() == std::set<std::string>{"REGISTER", "CONSTRAINT", "SELECT"});

    e = syntaxError("SELECT * FROM t WHERE name = 'open");
    CHECK(e.column() == 30);
    CHECK(e.expected().contains("closing quote"));

    CHECK_THROWS_AS(parse_program("SELECT * FROM orders AT MARS;"), SqlSyntaxError);
    CHECK_THROWS_AS(parse_program("REGISTER TABLE t AT EU CARD 10 ROWBYTES 0 COLS (a INT);"), InvalidStatement);
    CHECK_THROWS_AS(parse_program("REGISTER TABLE t AT EU CARD 10 ROWBYTES 8 COLS (a INT DISTINCT 11);"),
                    InvalidStatement);
    CHECK_THROWS_AS(parse_program("REGISTER TABLE t AT EU CARD 10 ROWBYTES 8 COLS (a INT, a TEXT);"), InvalidStatement);
}

TEST_CASE("column resolution", "[lowering]") {
    TableRegistry registry(program(kTables).tables);
    std::vector<std::string> from{"customer", "orders"};
    CHECK(resolve_column({"", "price"}, from, registry) == "orders.price");
    CHECK(resolve_column({"customer", "custkey"}, from, registry) == "customer.custkey");
    CHECK_THROWS_AS(resolve_column({"", "custkey"}, from, registry), AmbiguousColumn);
    CHECK_THROWS_AS(resolve_column({"", "nope"}, from, registry), UnknownColumn);
    CHECK_THROWS_AS(resolve_column({"lineitem", "custkey"}, from, registry), AgoraError);
}

TEST_CASE("canonical plan shape", "[lowering]") {
    auto p = program(std::string(kTables) + "SELECT segment, SUM(price) FROM orders, customer "
                                            "WHERE orders.custkey = customer.custkey AND segment = 'AUTO' "
                                            "GROUP BY segment;");
    TableRegistry registry(p.tables);
    auto plan = to_logical_plan(p.queries[0], registry);
    CHECK(to_string(plan) == "PROJECT [customer.segment, sum(orders.price)]\n"
                             "  AGGREGATE [customer.segment] sum(orders.price)\n"
                             "    JOIN (orders.custkey = customer.custkey)\n"
                             "      SCAN orders [orders.custkey, orders.price]\n"
                             "      FILTER (customer.segment = 'AUTO')\n"
                             "        SCAN customer [customer.custkey, customer.segment]\n");
}

TEST_CASE("semantic errors", "[lowering]") {
    TableRegistry registry(program(kTables).tables);
    auto lower = [&](const std::string& sql) { return to_logical_plan(program(sql).queries[0], registry); };
    CHECK_THROWS_AS(lower("SELECT * FROM customer, orders;"), InvalidQuery);
    CHECK_THROWS_AS(lower("SELECT name, COUNT(*) FROM customer GROUP BY segment;"), InvalidQuery);
    CHECK_THROWS_AS(lower("SELECT SUM(name) FROM customer;"), InvalidQuery);
    CHECK_THROWS_AS(lower("SELECT * FROM lineitem;"), UnknownTable);
    CHECK_THROWS_AS(lower("SELECT custkey FROM customer, orders WHERE customer.custkey = orders.custkey;"),
                    AmbiguousColumn);
}

TEST_CASE("lowered plans compute the reference semantics", "[lowering][property]") {
    std::mt19937_64 rng(2024);
    testing::RandomProgramOptions options;
    planner::CostModel costs;
    int compared = 0;
    for (int i = 0; i < 150; ++i) {
        auto text = testing::random_program(rng, options);
        INFO(text);
        auto p = program(text);
        TableRegistry registry(p.tables);
        auto db = execution::generate_database(registry, static_cast<std::uint64_t>(i), 60);
        auto plan = to_logical_plan(p.queries[0], registry);
        planner::PlanFactory factory(registry, costs);
        auto site = placeNaively(plan.root, factory);
        auto got = execution::execute_site_plan(site, db).result.rows;
        auto expected = testing::reference_evaluate(p.queries[0], registry, db);
        CHECK(testing::same_rows(got, expected));
        ++compared;
    }
    CHECK(compared == 150);
}
