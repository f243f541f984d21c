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

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polyalg/relation.hpp"

namespace polyalg {

/// Malformed query text. `position` is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& msg);
    std::size_t position;
};

using Literal = std::variant<std::int64_t, std::string, bool>;

struct Predicate {
    enum class Op { Eq, Ne, Lt, Le, Gt, Ge, And, Or, Not };
    Op op = Op::Eq;
    std::string attr;              // comparisons
    Literal literal;               // comparisons
    std::vector<Predicate> args;   // and / or / not
};

/// Query syntax (see docs/query-language.md):
///
///   NAME
///   (join Q Q ...)            (product Q Q)
///   (select PRED Q)           (union Q Q) (diff Q Q) (intersect Q Q)
///   (project [A ...] Q)       (outer left|right|full Q Q)
///   (rename [B A ...] Q)      (agg sum|min|max [G ...] T Q)   (agg count [G ...] Q)
///   (relabel [X Y ...] Q)     (map FN A Q)   (clamp Q)
///
///   PRED := (= A LIT) | (!= A LIT) | (< A LIT) | (<= A LIT) | (> A LIT)
///         | (>= A LIT) | (and PRED ...) | (or PRED ...) | (not PRED)
///   LIT  := integer | "string" | true | false
struct QueryExpr {
    enum class Op { Load, Select, Project, Rename, Relabel, Union, Diff, Intersect, Product, Join, Outer, Agg, Map, Clamp };
    Op op = Op::Load;
    std::string name;               // Load: relation; Map: function
    std::vector<std::string> attrs; // Project, Rename, Relabel lists; Agg group
    std::string column;             // Agg target (empty for count); Map column
    OuterKind outer = OuterKind::Full;
    AggKind agg = AggKind::Sum;
    Predicate pred;
    std::vector<QueryExpr> args;
};

QueryExpr parse_query(std::string_view text);

/// Canonical s-expression; parse_query(to_sexpr(q)) reproduces q.
std::string to_sexpr(const QueryExpr& q);

/// Names of the relations a query reads, in first-use order.
std::vector<std::string> referenced_relations(const QueryExpr& q);

using RelationResolver = std::function<Relation(const std::string&)>;

/// Evaluates against named relations. Type errors raise QueryError.
Relation evaluate(const QueryExpr& q, const RelationResolver& resolve, Metrics* m = nullptr);

/// Compiles a predicate against a schema (type-checks literals).
TuplePredicate compile_predicate(const Predicate& p, const Schema& s);

} // namespace polyalg
