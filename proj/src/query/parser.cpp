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

#include <agora/query/parser.hpp>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace agora::query {

namespace {

enum class Tok { Word, Int, Float, String, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::string upper;
    std::size_t line = 1;
    std::size_t column = 1;
};

const std::set<std::string>& keywords() {
    static const std::set<std::string> words{
        "REGISTER", "TABLE", "AT",  "CARD",   "ROWBYTES", "COLS",   "DISTINCT", "INT",   "FLOAT", "TEXT",
        "BOOL",     "DATE",  "CONSTRAINT", "DENY", "SHIP", "FROM",   "TO",       "ANY",   "ALLOW", "ONLY",
        "AGGREGATED", "SELECT", "WHERE", "AND", "GROUP", "BY",      "COUNT",    "SUM",   "AVG",   "MIN",
        "MAX",      "TRUE",  "FALSE", "EU",   "NA",       "ME",     "AS",
    };
    return words;
}

std::string upperCase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t lineStart = 0;
    auto column = [&](std::size_t pos) { return pos - lineStart + 1; };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            lineStart = ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = column(i);
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                ++i;
            }
            tok.kind = Tok::Word;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            tok.kind = Tok::Int;
            if (i + 1 < text.size() && text[i] == '.' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                ++i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    ++i;
                }
                tok.kind = Tok::Float;
            }
        } else if (c == '\'') {
            ++i;
            std::string value;
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\'') {
                    if (i + 1 < text.size() && text[i + 1] == '\'') {
                        value.push_back('\'');
                        i += 2;
                        continue;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                if (text[i] == '\n') {
                    break;
                }
                value.push_back(text[i++]);
            }
            if (!closed) {
                throw SqlSyntaxError(tok.line, tok.column, "'" + value, {"closing quote"});
            }
            tok.kind = Tok::String;
            tok.text = value;
            tok.upper = value;
            tokens.push_back(std::move(tok));
            continue;
        } else {
            static const std::string_view twoChar[] = {"<=", ">=", "<>", "!="};
            tok.kind = Tok::Symbol;
            ++i;
            for (auto sym : twoChar) {
                if (text.substr(start, 2) == sym) {
                    i = start + 2;
                }
            }
            static const std::string_view allowed = "(),;.*=<>-";
            if (i == start + 1 && allowed.find(c) == std::string_view::npos) {
                throw SqlSyntaxError(tok.line, tok.column, std::string(1, c), {"valid token"});
            }
        }
        tok.text = std::string(text.substr(start, i - start));
        tok.upper = upperCase(tok.text);
        tokens.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.column = column(text.size());
    tokens.push_back(end);
    return tokens;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : toks(std::move(tokens)) {}

    std::vector<Statement> program() {
        std::vector<Statement> out;
        while (peek().kind != Tok::End) {
            out.push_back(statement());
        }
        return out;
    }

  private:
    std::vector<Token> toks;
    std::size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    const Token& advance() { return toks[pos++]; }

    bool isKeyword(const Token& t, std::string_view kw) const { return t.kind == Tok::Word && t.upper == kw; }
    bool atKeyword(std::string_view kw) const { return isKeyword(peek(), kw); }
    bool atSymbol(std::string_view sym) const { return peek().kind == Tok::Symbol && peek().text == sym; }

    [[noreturn]] void fail(std::set<std::string> expected) const {
        const auto& t = peek();
        std::string found = t.kind == Tok::End ? "<end of input>" : (t.kind == Tok::String ? "'" + t.text + "'" : t.text);
        throw SqlSyntaxError(t.line, t.column, found, std::move(expected));
    }

    void keyword(std::string_view kw) {
        if (!atKeyword(kw)) {
            fail({std::string(kw)});
        }
        advance();
    }

    bool acceptKeyword(std::string_view kw) {
        if (atKeyword(kw)) {
            advance();
            return true;
        }
        return false;
    }

    void symbol(std::string_view sym) {
        if (!atSymbol(sym)) {
            fail({"'" + std::string(sym) + "'"});
        }
        advance();
    }

    bool acceptSymbol(std::string_view sym) {
        if (atSymbol(sym)) {
            advance();
            return true;
        }
        return false;
    }

    std::string identifier() {
        const auto& t = peek();
        if (t.kind != Tok::Word || keywords().contains(t.upper)) {
            fail({"identifier"});
        }
        return advance().text;
    }

    std::int64_t integer() {
        const auto& t = peek();
        if (t.kind != Tok::Int) {
            fail({"integer"});
        }
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{}) {
            throw InvalidStatement(t.line, t.column, "integer out of range: " + t.text);
        }
        advance();
        return value;
    }

    Region region() {
        const auto& t = peek();
        if (t.kind == Tok::Word) {
            if (auto r = parse_region(t.upper)) {
                advance();
                return *r;
            }
        }
        fail({"EU", "NA", "ME", "AS"});
    }

    Statement statement() {
        if (atKeyword("REGISTER")) {
            return registerTable();
        }
        if (atKeyword("CONSTRAINT")) {
            return policy();
        }
        if (atKeyword("SELECT")) {
            return select();
        }
        fail({"REGISTER", "CONSTRAINT", "SELECT"});
    }

    RegisterTable registerTable() {
        keyword("REGISTER");
        keyword("TABLE");
        RegisterTable reg;
        reg.name = identifier();
        keyword("AT");
        reg.region = region();
        keyword("CARD");
        reg.row_count = integer();
        keyword("ROWBYTES");
        const Token bytesTok = peek();
        reg.row_bytes = integer();
        if (reg.row_bytes <= 0) {
            throw InvalidStatement(bytesTok.line, bytesTok.column, "ROWBYTES must be positive");
        }
        keyword("COLS");
        symbol("(");
        std::set<std::string> names;
        do {
            const Token nameTok = peek();
            ColumnDef col;
            col.name = identifier();
            if (!names.insert(col.name).second) {
                throw InvalidStatement(nameTok.line, nameTok.column, "duplicate column " + col.name);
            }
            col.type = columnType();
            if (acceptKeyword("DISTINCT")) {
                const Token distinctTok = peek();
                auto distinct = integer();
                if (reg.row_count > 0 && (distinct < 1 || distinct > reg.row_count)) {
                    throw InvalidStatement(distinctTok.line, distinctTok.column,
                                           "DISTINCT must lie in [1, " + std::to_string(reg.row_count) + "]");
                }
                col.distinct = std::max<std::int64_t>(distinct, 1);
            }
            reg.columns.push_back(std::move(col));
        } while (acceptSymbol(","));
        symbol(")");
        symbol(";");
        return reg;
    }

    ColumnType columnType() {
        static const std::pair<std::string_view, ColumnType> types[] = {
            {"INT", ColumnType::Int64}, {"FLOAT", ColumnType::Float64}, {"TEXT", ColumnType::Text},
            {"BOOL", ColumnType::Bool}, {"DATE", ColumnType::Date},
        };
        for (const auto& [name, type] : types) {
            if (acceptKeyword(name)) {
                return type;
            }
        }
        fail({"INT", "FLOAT", "TEXT", "BOOL", "DATE"});
    }

    PolicyStatement policy() {
        const Token start = peek();
        keyword("CONSTRAINT");
        if (acceptKeyword("DENY")) {
            keyword("SHIP");
            keyword("FROM");
            Region from = region();
            keyword("TO");
            std::optional<Region> to;
            if (!acceptKeyword("ANY")) {
                if (peek().kind != Tok::Word || !parse_region(peek().upper)) {
                    fail({"EU", "NA", "ME", "AS", "ANY"});
                }
                to = region();
            }
            symbol(";");
            if (to && *to == from) {
                throw InvalidStatement(start.line, start.column, "DENY SHIP from a region to itself");
            }
            return {planner::DenyShip{from, to}};
        }
        if (acceptKeyword("ALLOW")) {
            keyword("ONLY");
            keyword("AGGREGATED");
            keyword("FROM");
            Region from = region();
            symbol(";");
            return {planner::AggregatedOnly{from}};
        }
        fail({"DENY", "ALLOW"});
    }

    ColumnRef columnRef() {
        ColumnRef ref;
        ref.column = identifier();
        if (acceptSymbol(".")) {
            ref.table = ref.column;
            ref.column = identifier();
        }
        return ref;
    }

    std::optional<AggFunc> aggregateFunction() {
        static const std::pair<std::string_view, AggFunc> funcs[] = {
            {"COUNT", AggFunc::Count}, {"SUM", AggFunc::Sum}, {"AVG", AggFunc::Avg},
            {"MIN", AggFunc::Min},     {"MAX", AggFunc::Max},
        };
        for (const auto& [name, func] : funcs) {
            if (acceptKeyword(name)) {
                return func;
            }
        }
        return std::nullopt;
    }

    SelectItem selectItem() {
        if (auto func = aggregateFunction()) {
            symbol("(");
            AggregateCall call{*func, std::nullopt};
            if (*func == AggFunc::Count && acceptSymbol("*")) {
                // COUNT(*)
            } else {
                call.argument = columnRef();
            }
            symbol(")");
            return call;
        }
        if (peek().kind == Tok::Word && !keywords().contains(peek().upper)) {
            return columnRef();
        }
        fail({"*", "identifier", "COUNT", "SUM", "AVG", "MIN", "MAX"});
    }

    CompareOp compareOp() {
        static const std::pair<std::string_view, CompareOp> ops[] = {
            {"=", CompareOp::Eq},  {"<>", CompareOp::Ne}, {"!=", CompareOp::Ne}, {"<", CompareOp::Lt},
            {"<=", CompareOp::Le}, {">", CompareOp::Gt},  {">=", CompareOp::Ge},
        };
        for (const auto& [sym, op] : ops) {
            if (acceptSymbol(sym)) {
                return op;
            }
        }
        fail({"=", "<>", "<", "<=", ">", ">="});
    }

    Value literal() {
        bool negative = acceptSymbol("-");
        const auto& t = peek();
        if (t.kind == Tok::Int) {
            auto v = integer();
            return negative ? -v : v;
        }
        if (t.kind == Tok::Float) {
            double v = std::stod(advance().text);
            return negative ? -v : v;
        }
        if (negative) {
            fail({"number"});
        }
        if (t.kind == Tok::String) {
            return advance().text;
        }
        if (acceptKeyword("TRUE")) {
            return true;
        }
        if (acceptKeyword("FALSE")) {
            return false;
        }
        if (acceptKeyword("DATE")) {
            if (peek().kind != Tok::String) {
                fail({"date string"});
            }
            return advance().text;
        }
        fail({"identifier", "number", "string", "TRUE", "FALSE", "DATE"});
    }

    Predicate predicate() {
        Predicate p;
        p.left = columnRef();
        p.op = compareOp();
        if (peek().kind == Tok::Word && !keywords().contains(peek().upper)) {
            p.right = columnRef();
        } else {
            p.right = literal();
        }
        return p;
    }

    SelectSpec select() {
        keyword("SELECT");
        SelectSpec spec;
        if (acceptSymbol("*")) {
            spec.star = true;
        } else {
            do {
                spec.items.push_back(selectItem());
            } while (acceptSymbol(","));
        }
        keyword("FROM");
        do {
            spec.tables.push_back(identifier());
        } while (acceptSymbol(","));
        if (acceptKeyword("WHERE")) {
            do {
                spec.predicates.push_back(predicate());
            } while (acceptKeyword("AND"));
        }
        if (acceptKeyword("GROUP")) {
            keyword("BY");
            do {
                spec.group_by.push_back(columnRef());
            } while (acceptSymbol(","));
        }
        if (acceptKeyword("AT")) {
            spec.target_region = region();
        }
        if (!atSymbol(";")) {
            std::set<std::string> expected{"';'"};
            if (spec.predicates.empty() && spec.group_by.empty() && !spec.target_region) {
                expected.insert({"WHERE", "GROUP", "AT", "','"});
            }
            fail(expected);
        }
        advance();
        return spec;
    }
};

std::string joinExpected(const std::set<std::string>& expected) {
    std::string out;
    for (const auto& e : expected) {
        out += (out.empty() ? "" : ", ") + e;
    }
    return out;
}

}// namespace

SqlSyntaxError::SqlSyntaxError(std::size_t line, std::size_t column, std::string found, std::set<std::string> expected)
    : UsageError("SyntaxError",
                 std::to_string(line) + ":" + std::to_string(column) + ": unexpected " + found + ", expected one of {"
                     + joinExpected(expected) + "}"),
      atLine(line), atColumn(column), foundToken(std::move(found)), expectedSet(std::move(expected)) {}

std::vector<Statement> parse_program(std::string_view text) { return Parser(lex(text)).program(); }

Program split_program(const std::vector<Statement>& statements) {
    Program program;
    for (const auto& s : statements) {
        if (const auto* reg = std::get_if<RegisterTable>(&s)) {
            program.tables.push_back(*reg);
        } else if (const auto* pol = std::get_if<PolicyStatement>(&s)) {
            program.policies.push_back(pol->policy);
        } else {
            program.queries.push_back(std::get<SelectSpec>(s));
        }
    }
    return program;
}

}// namespace agora::query
