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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "polyalg/bench.hpp"
#include "polyalg/io.hpp"
#include "polyalg/normal_form.hpp"
#include "polyalg/product.hpp"
#include "polyalg/query.hpp"
#include "support/laws.hpp"

using namespace polyalg;
using testing::LawReport;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }
    void absorb(const LawReport& r) {
        require(r.ok(), r.name + ": " + std::to_string(r.failures) + "/" + std::to_string(r.cases) + " failed, " +
                            r.first_failure);
    }
};

std::string rows_text(const Relation& r) {
    std::ostringstream o;
    for (auto& row : r.rows()) {
        o << "(";
        for (std::size_t i = 0; i < row.cells.size(); ++i) o << (i ? "," : "") << row.cells[i].to_string();
        o << "):" << row.coef.to_string() << " ";
    }
    return o.str();
}

Relation csv(const std::string& text, const std::string& schema) {
    return relation_from_csv(text, Schema::parse(schema), RingKind::Integer);
}

Outcome golden_join() {
    Outcome out;
    const Relation x = csv("A,B\na,1\nb,2\nc,3\n", "A:str,B:int");
    const Relation y = csv("B,C\n2,p\n3,q\n4,r\n", "B:int,C:str");
    const QueryExpr q = parse_query("(join x y)");
    auto resolve = [&](const std::string& n) { return n == "x" ? x : y; };
    const auto t0 = Clock::now();
    const Relation j = evaluate(q, resolve);
    const std::string text = rows_text(j);
    const double ms = ms_since(t0);
    out.require(text == "(b,2,p):1 (c,3,q):1 ", "got " + text);
    out.require(j.schema.to_string() == "A:str,B:int,C:str", "schema " + j.schema.to_string());
    out.require(ms < 10.0, "took " + std::to_string(ms) + " ms");
    out.detail = out.ok ? std::to_string(ms) + " ms" : out.detail;
    return out;
}

Outcome compact_lookups() {
    Outcome out;
    const SpacePtr s = Space::compact_map(PrimSet::str(), Space::scalar(RingKind::Integer));
    auto k = [](std::int64_t v) { return scalar(Scalar::from_int(RingKind::Integer, v)); };
    const Term x = sum_of(s, {wild_maps_to(s, k(2)), maps_to(s, Value::string("a"), k(3)),
                              maps_to(s, Value::string("b"), k(-2))});
    const NormalForm nf = normalize(x);
    auto at = [&](std::optional<Value> key) { return lookup(nf, key).value().to_string(); };
    out.require(at(std::nullopt) == "2", "x(*) = " + at(std::nullopt));
    out.require(at(Value::string("a")) == "5", "x(a) = " + at(Value::string("a")));
    out.require(at(Value::string("b")) == "0", "x(b) = " + at(Value::string("b")));
    out.require(at(Value::string("c")) == "2", "x(c) = " + at(Value::string("c")));
    return out;
}

Term polyset(const std::vector<std::pair<std::string, std::int64_t>>& xs) {
    const SpacePtr s = Space::free(RingKind::Integer, PrimSet::str());
    std::vector<Term> parts;
    for (auto& [k, c] : xs) parts.push_back(scale(Scalar::from_int(RingKind::Integer, c), inject(s, Value::string(k))));
    return sum_of(s, parts);
}

Outcome intersections() {
    Outcome out;
    const NormalForm a = multiply({polyset({{"a", 3}, {"b", 2}, {"c", 5}}), polyset({{"b", 7}, {"c", 4}, {"d", 2}})});
    out.require(equal(a, normalize(polyset({{"b", 14}, {"c", 20}}))), "first product is " + a.to_string());
    const NormalForm b = multiply({polyset({{"a", 2}, {"b", 3}}), polyset({{"b", 5}, {"c", 7}})});
    out.require(equal(b, normalize(polyset({{"b", 15}}))), "second product is " + b.to_string());
    return out;
}

Outcome aggregation() {
    Outcome out;
    const Relation r = csv("A,B\np,2\np,3\nq,4\n", "A:str,B:int");
    const std::string sum = rows_text(aggregate(AggKind::Sum, {0}, 1, r));
    const std::string mn = rows_text(aggregate(AggKind::Min, {0}, 1, r));
    const std::string mx = rows_text(aggregate(AggKind::Max, {0}, 1, r));
    out.require(sum == "(p):5 (q):4 ", "sum gives " + sum);
    out.require(mn == "(p,2):1 (q,4):1 ", "min gives " + mn);
    out.require(mx == "(p,3):1 (q,4):1 ", "max gives " + mx);
    return out;
}

Outcome simplification_render() {
    Outcome out;
    const PrimSetPtr key = PrimSet::prod(PrimSet::str(), PrimSet::sum(PrimSet::str(), PrimSet::int64()));
    const SpacePtr s = Space::fin_map(key, Space::scalar(RingKind::Integer));
    const Term one_k = one(RingKind::Integer);
    auto entry = [&](const char* a, Value tag) { return maps_to(s, Value::pair(Value::string(a), tag), one_k); };
    const Term x = sum_of(s, {entry("a", Value::left(Value::string("p"))), entry("b", Value::right(Value::integer(4))),
                              entry("a", Value::right(Value::integer(3))), entry("a", Value::left(Value::string("p")))});
    const std::string got = normalize(x).to_string();
    const std::string want = "cp×⁻¹((a ↦ cp₊⁻¹(p ↦ 2, 3 ↦ 1)) + (b ↦ cp₊⁻¹(0, 4 ↦ 1)))";
    out.require(got == want, "rendered " + got);
    return out;
}

Outcome oracle_equivalence() {
    Outcome out;
    const auto t0 = Clock::now();
    out.absorb(testing::product_oracle(1000, 20261016));
    const double s = ms_since(t0) / 1000.0;
    out.require(s < 60.0, "took " + std::to_string(s) + " s");
    if (out.ok) out.detail = "1000 cases in " + std::to_string(s) + " s";
    return out;
}

Outcome law_suites() {
    Outcome out;
    const int n = 200;
    std::uint64_t seed = 7;
    int suites = 0;
    for (RingKind r : {RingKind::Integer, RingKind::GF2, RingKind::Real}) {
        out.absorb(testing::ring_axioms(r, n, ++seed));
        ++suites;
    }
    for (RingKind r : {RingKind::Integer, RingKind::GF2}) {
        out.absorb(testing::module_laws(r, n, ++seed));
        out.absorb(testing::tensor_bilinearity(r, n, ++seed));
        out.absorb(testing::fold_linearity(r, n, ++seed));
        out.absorb(testing::algebra_laws(r, n, ++seed));
        suites += 4;
    }
    for (Iso iso : all_isos()) {
        out.absorb(testing::iso_round_trip(iso, RingKind::Integer, n, ++seed));
        ++suites;
    }
    if (out.ok) out.detail = std::to_string(suites) + " suites of " + std::to_string(n) + " cases";
    return out;
}

Outcome triangle_scaling() {
    Outcome out;
    const auto t0 = Clock::now();
    BenchReport r;
    try {
        r = bench_triangle({8, 16, 32, 64}, 1, true, 16);
    } catch (const std::exception& e) {
        out.require(false, e.what());
        return out;
    }
    const double s = ms_since(t0) / 1000.0;
    for (auto& row : r.rows)
        out.require(row.output_rows == row.k * row.k * row.k, "k=" + std::to_string(row.k) + " gave " +
                                                                   std::to_string(row.output_rows) + " rows");
    out.require(r.edge_slope >= 1.3 && r.edge_slope <= 1.7, "edge slope " + std::to_string(r.edge_slope));
    out.require(r.naive.size() == 2 && r.naive_slope && *r.naive_slope >= 1.85,
                "naive slope " + (r.naive_slope ? std::to_string(*r.naive_slope) : std::string("missing")));
    out.require(s < 120.0, "took " + std::to_string(s) + " s");
    if (out.ok)
        out.detail = "edge slope " + std::to_string(r.edge_slope) + ", naive slope " + std::to_string(*r.naive_slope) +
                     ", " + std::to_string(s) + " s";
    return out;
}

Outcome outer_identities() {
    Outcome out;
    out.absorb(testing::outer_join_identities(50, 99));
    return out;
}

Outcome updates() {
    Outcome out;
    const Schema s({{"A", PrimSet::str()}});
    auto rel = [&](const std::vector<std::pair<std::string, std::int64_t>>& xs) {
        std::vector<BasisRow> rows;
        for (auto& [k, c] : xs)
            rows.push_back(BasisRow{{Cell::key_of(Value::string(k))}, Scalar::from_int(RingKind::Integer, c)});
        return Relation::from_rows(s, RingKind::Integer, rows);
    };
    const Relation db = rel({{"a", 1}, {"b", 1}});
    const Relation delta = rel({{"c", 1}, {"b", -1}});
    const Relation after = apply_update(db, delta);
    out.require(rows_text(after) == "(a):1 (c):1 ", "update gave " + rows_text(after));
    out.absorb(testing::update_permutations(100, 1234));
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "golden natural join", golden_join},
        {2, "compact map lookups", compact_lookups},
        {3, "golden intersections", intersections},
        {4, "golden aggregation", aggregation},
        {5, "finite map simplification rendering", simplification_render},
        {6, "multiply matches the naive oracle", oracle_equivalence},
        {7, "law suites", law_suites},
        {8, "triangle worst-case scaling", triangle_scaling},
        {9, "outer join identities", outer_identities},
        {10, "update semantics", updates},
    };
    int failed = 0;
    for (auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("threw: ") + e.what();
        }
        if (!o.ok) ++failed;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
