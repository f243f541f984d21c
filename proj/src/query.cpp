// Copyright 2026 The polyalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polyalg/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace polyalg {

ParseError::ParseError(std::size_t pos, const std::string& msg)
    : std::runtime_error("parse error at offset " + std::to_string(pos) + ": " + msg), position(pos) {}

namespace {

struct Token {
    enum class Kind { LParen, RParen, LBracket, RBracket, String, Atom, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(' || c == ')' || c == '[' || c == ']') {
            const auto k = c == '(' ? Token::Kind::LParen
                         : c == ')' ? Token::Kind::RParen
                         : c == '[' ? Token::Kind::LBracket
                                    : Token::Kind::RBracket;
            out.push_back({k, std::string(1, c), i++});
        } else if (c == '"') {
            const std::size_t start = i++;
            std::string text;
            for (;;) {
                if (i >= s.size()) throw ParseError(start, "unterminated string");
                if (s[i] == '"') break;
                if (s[i] == '\\') {
                    if (++i >= s.size()) throw ParseError(start, "unterminated string");
                }
                text += s[i++];
            }
            ++i;
            out.push_back({Token::Kind::String, std::move(text), start});
        } else {
            const std::size_t start = i;
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' &&
                   s[i] != '[' && s[i] != ']' && s[i] != '"')
                ++i;
            out.push_back({Token::Kind::Atom, std::string(s.substr(start, i - start)), start});
        }
    }
    out.push_back({Token::Kind::End, "", s.size()});
    return out;
}

std::optional<std::int64_t> as_int(const std::string& t) {
    std::int64_t v = 0;
    const char* end = t.data() + t.size();
    auto [p, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc() || p != end || t.empty()) return std::nullopt;
    return v;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    QueryExpr parse_all() {
        QueryExpr q = expr();
        if (peek().kind != Token::Kind::End) throw ParseError(peek().pos, "unexpected text after the query");
        return q;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }

    [[noreturn]] void fail_expected(const Token& t, const std::string& what) const {
        if (t.kind == Token::Kind::End) throw ParseError(t.pos, "unexpected end of query, expected " + what);
        throw ParseError(t.pos, "expected " + what);
    }

    const Token& expect(Token::Kind k, const char* what) {
        if (peek().kind != k) fail_expected(peek(), what);
        return next();
    }

    std::string atom(const char* what) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Atom) fail_expected(t, what);
        return next().text;
    }

    std::vector<std::string> name_list() {
        expect(Token::Kind::LBracket, "'['");
        std::vector<std::string> out;
        while (peek().kind != Token::Kind::RBracket) out.push_back(atom("an attribute name or ']'"));
        next();
        return out;
    }

    QueryExpr expr() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Atom) {
            if (as_int(t.text) || t.text == "true" || t.text == "false")
                throw ParseError(t.pos, "expected a relation name, got a literal");
            QueryExpr q;
            q.op = QueryExpr::Op::Load;
            q.name = next().text;
            return q;
        }
        if (t.kind != Token::Kind::LParen) fail_expected(t, "a relation name or '('");
        next();
        const std::size_t head_pos = peek().pos;
        const std::string head = atom("an operator");
        QueryExpr q;
        using Op = QueryExpr::Op;
        if (head == "join") {
            q.op = Op::Join;
            while (peek().kind != Token::Kind::RParen) q.args.push_back(expr());
            if (q.args.empty()) throw ParseError(peek().pos, "join needs at least one input");
        } else if (head == "select") {
            q.op = Op::Select;
            q.pred = predicate();
            q.args.push_back(expr());
        } else if (head == "project" || head == "rename" || head == "relabel") {
            q.op = head == "project" ? Op::Project : head == "rename" ? Op::Rename : Op::Relabel;
            q.attrs = name_list();
            q.args.push_back(expr());
        } else if (head == "union" || head == "diff" || head == "intersect" || head == "product") {
            q.op = head == "union" ? Op::Union : head == "diff" ? Op::Diff : head == "intersect" ? Op::Intersect : Op::Product;
            q.args.push_back(expr());
            q.args.push_back(expr());
        } else if (head == "outer") {
            q.op = Op::Outer;
            const std::size_t p = peek().pos;
            const std::string k = atom("left, right or full");
            if (k == "left")
                q.outer = OuterKind::Left;
            else if (k == "right")
                q.outer = OuterKind::Right;
            else if (k == "full")
                q.outer = OuterKind::Full;
            else
                throw ParseError(p, "expected left, right or full");
            q.args.push_back(expr());
            q.args.push_back(expr());
        } else if (head == "agg") {
            q.op = Op::Agg;
            const std::size_t p = peek().pos;
            const std::string k = atom("sum, min, max or count");
            if (k == "sum")
                q.agg = AggKind::Sum;
            else if (k == "min")
                q.agg = AggKind::Min;
            else if (k == "max")
                q.agg = AggKind::Max;
            else if (k == "count")
                q.agg = AggKind::Count;
            else
                throw ParseError(p, "expected sum, min, max or count");
            q.attrs = name_list();
            std::vector<QueryExpr> items;
            std::vector<std::size_t> pos;
            while (peek().kind != Token::Kind::RParen && peek().kind != Token::Kind::End) {
                pos.push_back(peek().pos);
                items.push_back(expr());
            }
            const std::size_t want = q.agg == AggKind::Count && items.size() == 1 ? 1 : 2;
            if (items.size() != want)
                throw ParseError(peek().pos, q.agg == AggKind::Count ? "expected [group] [target] input"
                                                                     : "expected [group] target input");
            if (want == 2) {
                if (items[0].op != Op::Load) throw ParseError(pos[0], "expected a target attribute name");
                q.column = items[0].name;
            }
            q.args.push_back(std::move(items.back()));
        } else if (head == "map") {
            q.op = Op::Map;
            q.name = atom("a function name");
            q.column = atom("an attribute name");
            q.args.push_back(expr());
        } else if (head == "clamp") {
            q.op = Op::Clamp;
            q.args.push_back(expr());
        } else {
            throw ParseError(head_pos, "unknown operator '" + head + "'");
        }
        expect(Token::Kind::RParen, "')'");
        return q;
    }

    Literal literal() {
        const Token& t = peek();
        if (t.kind == Token::Kind::String) return next().text;
        if (t.kind != Token::Kind::Atom) throw ParseError(t.pos, "expected a literal");
        const std::string text = next().text;
        if (auto v = as_int(text)) return *v;
        if (text == "true") return true;
        if (text == "false") return false;
        return text; // bare words are strings
    }

    Predicate predicate() {
        expect(Token::Kind::LParen, "'(' starting a predicate");
        const std::size_t p = peek().pos;
        const std::string op = atom("a comparison, and, or, not");
        Predicate out;
        using Op = Predicate::Op;
        static const std::pair<const char*, Op> kCmp[] = {{"=", Op::Eq}, {"!=", Op::Ne}, {"<", Op::Lt},
                                                          {"<=", Op::Le}, {">", Op::Gt}, {">=", Op::Ge}};
        bool done = false;
        for (auto& [name, o] : kCmp)
            if (op == name) {
                out.op = o;
                out.attr = atom("an attribute name");
                out.literal = literal();
                done = true;
            }
        if (!done) {
            if (op == "and" || op == "or") {
                out.op = op == "and" ? Op::And : Op::Or;
                while (peek().kind == Token::Kind::LParen) out.args.push_back(predicate());
                if (out.args.empty()) throw ParseError(peek().pos, "expected a predicate");
            } else if (op == "not") {
                out.op = Op::Not;
                out.args.push_back(predicate());
            } else {
                throw ParseError(p, "unknown predicate '" + op + "'");
            }
        }
        expect(Token::Kind::RParen, "')'");
        return out;
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string literal_sexpr(const Literal& l) {
    if (auto* i = std::get_if<std::int64_t>(&l)) return std::to_string(*i);
    if (auto* b = std::get_if<bool>(&l)) return *b ? "true" : "false";
    return quote(std::get<std::string>(l));
}

std::string pred_sexpr(const Predicate& p) {
    using Op = Predicate::Op;
    switch (p.op) {
    case Op::And:
    case Op::Or: {
        std::string out = p.op == Op::And ? "(and" : "(or";
        for (auto& a : p.args) out += " " + pred_sexpr(a);
        return out + ")";
    }
    case Op::Not: return "(not " + pred_sexpr(p.args.front()) + ")";
    default: break;
    }
    static const char* kNames[] = {"=", "!=", "<", "<=", ">", ">="};
    return std::string("(") + kNames[static_cast<int>(p.op)] + " " + p.attr + " " + literal_sexpr(p.literal) + ")";
}

std::string list_sexpr(const std::vector<std::string>& names) {
    std::string out = "[";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
    return out + "]";
}

} // namespace

QueryExpr parse_query(std::string_view text) { return Parser(text).parse_all(); }

std::string to_sexpr(const QueryExpr& q) {
    using Op = QueryExpr::Op;
    auto args = [&]() {
        std::string out;
        for (auto& a : q.args) out += " " + to_sexpr(a);
        return out;
    };
    switch (q.op) {
    case Op::Load: return q.name;
    case Op::Select: return "(select " + pred_sexpr(q.pred) + args() + ")";
    case Op::Project: return "(project " + list_sexpr(q.attrs) + args() + ")";
    case Op::Rename: return "(rename " + list_sexpr(q.attrs) + args() + ")";
    case Op::Relabel: return "(relabel " + list_sexpr(q.attrs) + args() + ")";
    case Op::Union: return "(union" + args() + ")";
    case Op::Diff: return "(diff" + args() + ")";
    case Op::Intersect: return "(intersect" + args() + ")";
    case Op::Product: return "(product" + args() + ")";
    case Op::Join: return "(join" + args() + ")";
    case Op::Outer: {
        const char* k = q.outer == OuterKind::Left ? "left" : q.outer == OuterKind::Right ? "right" : "full";
        return std::string("(outer ") + k + args() + ")";
    }
    case Op::Agg: {
        static const char* kNames[] = {"sum", "min", "max", "count"};
        std::string out = std::string("(agg ") + kNames[static_cast<int>(q.agg)] + " " + list_sexpr(q.attrs);
        if (!q.column.empty()) out += " " + q.column;
        return out + args() + ")";
    }
    case Op::Map: return "(map " + q.name + " " + q.column + args() + ")";
    case Op::Clamp: return "(clamp" + args() + ")";
    }
    return "";
}

std::vector<std::string> referenced_relations(const QueryExpr& q) {
    std::vector<std::string> out;
    std::function<void(const QueryExpr&)> walk = [&](const QueryExpr& e) {
        if (e.op == QueryExpr::Op::Load) {
            if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
            return;
        }
        for (auto& a : e.args) walk(a);
    };
    walk(q);
    return out;
}

TuplePredicate compile_predicate(const Predicate& p, const Schema& s) {
    using Op = Predicate::Op;
    switch (p.op) {
    case Op::And:
    case Op::Or: {
        std::vector<TuplePredicate> parts;
        for (auto& a : p.args) parts.push_back(compile_predicate(a, s));
        const bool is_and = p.op == Op::And;
        return [parts, is_and](const std::vector<Value>& row) {
            for (auto& f : parts)
                if (f(row) != is_and) return !is_and;
            return is_and;
        };
    }
    case Op::Not: {
        TuplePredicate inner = compile_predicate(p.args.front(), s);
        return [inner](const std::vector<Value>& row) { return !inner(row); };
    }
    default: break;
    }
    const std::size_t idx = s.index_of(p.attr);
    const PrimSet::Kind k = s[idx].type->kind();
    Value lit;
    if (auto* i = std::get_if<std::int64_t>(&p.literal); i && k == PrimSet::Kind::Int64)
        lit = Value::integer(*i);
    else if (auto* b = std::get_if<bool>(&p.literal); b && k == PrimSet::Kind::Bool)
        lit = Value::boolean(*b);
    else if (auto* str = std::get_if<std::string>(&p.literal); str && k == PrimSet::Kind::Str)
        lit = Value::string(*str);
    else
        throw QueryError("select: attribute " + p.attr + " has type " + s[idx].type->to_string() +
                         " but is compared with " + literal_sexpr(p.literal));
    const Op op = p.op;
    return [idx, lit, op](const std::vector<Value>& row) {
        const auto c = row[idx] <=> lit;
        switch (op) {
        case Op::Eq: return c == 0;
        case Op::Ne: return c != 0;
        case Op::Lt: return c < 0;
        case Op::Le: return c <= 0;
        case Op::Gt: return c > 0;
        case Op::Ge: return c >= 0;
        default: return false;
        }
    };
}

Relation evaluate(const QueryExpr& q, const RelationResolver& resolve, Metrics* m) {
    using Op = QueryExpr::Op;
    auto arg = [&](std::size_t i) { return evaluate(q.args[i], resolve, m); };
    auto positions = [](const Schema& s, const std::vector<std::string>& names) {
        std::vector<std::size_t> out;
        for (auto& n : names) out.push_back(s.index_of(n));
        return out;
    };
    switch (q.op) {
    case Op::Load: return resolve(q.name);
    case Op::Select: {
        Relation r = arg(0);
        return select(compile_predicate(q.pred, r.schema), r);
    }
    case Op::Project: {
        Relation r = arg(0);
        return project(positions(r.schema, q.attrs), r);
    }
    case Op::Rename: {
        Relation r = arg(0);
        return rename(positions(r.schema, q.attrs), r);
    }
    case Op::Relabel: return relabel(q.attrs, arg(0));
    case Op::Union: return union_of(arg(0), arg(1));
    case Op::Diff: return diff(arg(0), arg(1));
    case Op::Intersect: return intersect(arg(0), arg(1), m);
    case Op::Product: return cartesian(arg(0), arg(1));
    case Op::Join: {
        std::vector<Relation> rs;
        for (std::size_t i = 0; i < q.args.size(); ++i) rs.push_back(arg(i));
        return natural_join(rs, m);
    }
    case Op::Outer: return outer_join(q.outer, arg(0), arg(1), m);
    case Op::Agg: {
        Relation r = arg(0);
        std::optional<std::size_t> target;
        if (!q.column.empty()) target = r.schema.index_of(q.column);
        return aggregate(q.agg, positions(r.schema, q.attrs), target, r);
    }
    case Op::Map: {
        Relation r = arg(0);
        return map_col(r.schema.index_of(q.column), column_function(q.name), r);
    }
    case Op::Clamp: return clamp_nonneg(arg(0));
    }
    throw QueryError("unknown query operator");
}

} // namespace polyalg
