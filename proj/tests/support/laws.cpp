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

#include "laws.hpp"

#include <algorithm>
#include <map>

#include "gen.hpp"
#include "polyalg/normal_form.hpp"
#include "polyalg/product.hpp"
#include "polyalg/relation.hpp"

namespace polyalg::testing {

namespace {

std::string ring_label(RingKind r) { return std::string(ring_name(r)); }

// Runs body(case) and records exceptions as failures.
template <class F>
void each_case(LawReport& rep, int cases, F&& body) {
    for (int i = 0; i < cases; ++i) {
        ++rep.cases;
        try {
            body(i);
        } catch (const std::exception& e) {
            rep.fail("case " + std::to_string(i) + " threw: " + e.what());
        }
    }
}

void check(LawReport& rep, bool ok, const std::string& law, const Term& x) {
    if (!ok) rep.fail(law + " fails at " + to_string(x));
}

} // namespace

LawReport ring_axioms(RingKind ring, int cases, std::uint64_t seed) {
    LawReport rep{"ring axioms over " + ring_label(ring)};
    Gen g(seed);
    const Scalar zero = Scalar::zero(ring), one = Scalar::one(ring);
    each_case(rep, cases, [&](int) {
        const Scalar a = g.scalar(ring), b = g.scalar(ring), c = g.scalar(ring);
        const std::string at = " at " + a.to_string() + ", " + b.to_string() + ", " + c.to_string();
        if (!(a + (b + c) == (a + b) + c)) rep.fail("additive associativity" + at);
        if (!(a + b == b + a)) rep.fail("additive commutativity" + at);
        if (!(a + zero == a)) rep.fail("additive identity" + at);
        if (!(a + (-a) == zero)) rep.fail("additive inverse" + at);
        if (!(a * (b * c) == (a * b) * c)) rep.fail("multiplicative associativity" + at);
        if (!(a * b == b * a)) rep.fail("multiplicative commutativity" + at);
        if (!(a * one == a)) rep.fail("multiplicative identity" + at);
        if (!(a * (b + c) == a * b + a * c)) rep.fail("left distributivity" + at);
        if (!((a + b) * c == a * c + b * c)) rep.fail("right distributivity" + at);
        if (a.is_zero() != (a == zero)) rep.fail("is_zero agrees with equality to zero" + at);
        if (!(a - b == a + (-b))) rep.fail("subtraction" + at);
    });
    return rep;
}

LawReport module_laws(RingKind ring, int cases, std::uint64_t seed) {
    LawReport rep{"module laws over " + ring_label(ring)};
    Gen g(seed);
    each_case(rep, cases, [&](int) {
        const SpacePtr s = g.space(ring);
        const Term x = g.term(s), y = g.term(s);
        const Scalar r = g.scalar(ring), q = g.scalar(ring);
        check(rep, equal(scale(r, add(x, y)), add(scale(r, x), scale(r, y))), "r(x+y) = rx+ry", x);
        check(rep, equal(scale(r + q, x), add(scale(r, x), scale(q, x))), "(r+s)x = rx+sx", x);
        check(rep, equal(scale(r * q, x), scale(r, scale(q, x))), "(rs)x = r(sx)", x);
        check(rep, equal(scale(Scalar::one(ring), x), x), "1x = x", x);
        check(rep, equal(add(x, zero(s)), x), "x+0 = x", x);
        check(rep, equal(add(x, y), add(y, x)), "x+y = y+x", x);
        check(rep, normalize(sub(x, x)).is_zero(), "x-x = 0", x);
        check(rep, weight(add(x, y)) == weight(x) + weight(y), "#(x+y) = #x+#y", x);
        check(rep, weight(scale(r, x)) == r * weight(x), "#(rx) = r#x", x);
        check(rep, weight(x) == weight(normalize(x)), "# is invariant under normalization", x);
    });
    return rep;
}

LawReport tensor_bilinearity(RingKind ring, int cases, std::uint64_t seed) {
    LawReport rep{"tensor bilinearity over " + ring_label(ring)};
    Gen g(seed);
    each_case(rep, cases, [&](int) {
        const SpacePtr su = g.space(ring, 1), sv = g.space(ring, 1);
        const Term u1 = g.term(su), u2 = g.term(su), v1 = g.term(sv), v2 = g.term(sv);
        const Scalar r = g.scalar(ring);
        check(rep, equal(tensor(add(u1, u2), v1), add(tensor(u1, v1), tensor(u2, v1))), "(u+u')⊗v", u1);
        check(rep, equal(tensor(u1, add(v1, v2)), add(tensor(u1, v1), tensor(u1, v2))), "u⊗(v+v')", v1);
        check(rep, equal(tensor(scale(r, u1), v1), scale(r, tensor(u1, v1))), "(ru)⊗v = r(u⊗v)", u1);
        check(rep, equal(tensor(u1, scale(r, v1)), scale(r, tensor(u1, v1))), "u⊗(rv) = r(u⊗v)", v1);
        check(rep, normalize(tensor(zero(su), v1)).is_zero(), "0⊗v = 0", v1);
        check(rep, weight(tensor(u1, v1)) == weight(u1) * weight(v1), "#(u⊗v) = #u·#v", u1);
        const Term t = tensor(u1, v1);
        check(rep, equal(commutator(commutator(t)), t), "β∘β = id", t);
        const SpacePtr sw = g.space(ring, 1);
        const Term w = g.term(sw);
        const Term t3 = tensor(u1, tensor(v1, w));
        check(rep, equal(associator_inv(associator(t3)), t3), "α⁻¹∘α = id", t3);
        check(rep, weight(associator(t3)) == weight(t3), "α preserves #", t3);
    });
    return rep;
}

LawReport fold_linearity(RingKind ring, int cases, std::uint64_t seed) {
    LawReport rep{"fold linearity over " + ring_label(ring)};
    Gen g(seed);
    each_case(rep, cases, [&](int) {
        const PrimSetPtr a = g.set();
        const bool compact = g.coin();
        const SpacePtr target = g.space(ring, 1);
        std::map<Value, Term> images;
        auto action = [&](const Value& k) -> Term {
            auto it = images.find(k);
            if (it == images.end()) it = images.emplace(k, g.term(target)).first;
            return it->second;
        };
        const Term wild = g.term(target);

        // Free and compact free modules.
        const SpacePtr s = compact ? Space::compact_free(ring, a) : Space::free(ring, a);
        const Term x = g.term(s), y = g.term(s);
        const Scalar r = g.scalar(ring);
        auto f = [&](const Term& t) {
            return fold(t, target, action, compact ? std::optional<Term>(wild) : std::nullopt);
        };
        check(rep, equal(f(add(x, y)), add(f(x), f(y))), "fold(x+y) = fold x + fold y", x);
        check(rep, equal(f(scale(r, x)), scale(r, f(x))), "fold(rx) = r fold x", x);
        check(rep, normalize(f(zero(s))).is_zero(), "fold 0 = 0", x);

        // Maps: (k ↦ u) goes to f(k) ⊗ u, which is linear in u.
        const SpacePtr u = g.space(ring, 1);
        const SpacePtr ms = compact ? Space::compact_map(a, u) : Space::fin_map(a, u);
        const SpacePtr mt = Space::tensor(target, u);
        const Term p = g.term(ms), q = g.term(ms);
        auto fm = [&](const Term& t) {
            return fold_map(
                t, mt, [&](const Value& k, const Term& v) { return tensor(action(k), v); },
                [&](const Term& v) { return tensor(wild, v); });
        };
        check(rep, equal(fm(add(p, q)), add(fm(p), fm(q))), "fold_map(x+y) = fold_map x + fold_map y", p);
        check(rep, equal(fm(scale(r, p)), scale(r, fm(p))), "fold_map(rx) = r fold_map x", p);
    });
    return rep;
}

LawReport algebra_laws(RingKind ring, int cases, std::uint64_t seed) {
    LawReport rep{"algebra laws over " + ring_label(ring)};
    Gen g(seed);
    each_case(rep, cases, [&](int) {
        const SpacePtr s = g.space(ring);
        const Term x = g.term(s), y = g.term(s), z = g.term(s);
        check(rep, equal(mul(x, y), mul(y, x)), "xy = yx", x);
        check(rep, equal(mul(mul(x, y), z), mul(x, mul(y, z))), "(xy)z = x(yz)", x);
        check(rep, equal(mul(x, add(y, z)), add(mul(x, y), mul(x, z))), "x(y+z) = xy+xz", x);
        const Scalar r = g.scalar(ring);
        check(rep, equal(mul(scale(r, x), y), scale(r, mul(x, y))), "(rx)y = r(xy)", x);
        check(rep, normalize(mul(x, zero(s))).is_zero(), "x0 = 0", x);
        if (s->has_unit()) {
            check(rep, equal(mul(unit_one(s), x), x), "1x = x", x);
            check(rep, equal(mul(x, unit_one(s)), x), "x1 = x", x);
        }
        check(rep, equal(normalize(mul(x, y)), naive_multiply(x, y)), "product agrees with full distribution", x);
    });
    return rep;
}

namespace {

SpacePtr iso_domain(Gen& g, Iso iso, RingKind ring) {
    auto u = [&] { return g.space(ring, 1); };
    switch (iso) {
    case Iso::Cp0: return Space::fin_map(PrimSet::empty(), u());
    case Iso::Cp1: return Space::fin_map(PrimSet::unit(), u());
    case Iso::CpSum: return Space::fin_map(PrimSet::sum(g.set(), g.set()), u());
    case Iso::CpProd: return Space::fin_map(PrimSet::prod(g.set(), g.set()), u());
    case Iso::FreeUnit: return Space::free(ring, PrimSet::unit());
    case Iso::FreeSum: return Space::free(ring, PrimSet::sum(g.set(), g.set()));
    case Iso::FreeProd: return Space::free(ring, PrimSet::prod(g.set(), g.set()));
    case Iso::MapScalar: return Space::fin_map(g.set(), Space::scalar(ring));
    case Iso::MapBiprod: return Space::fin_map(g.set(), Space::biproduct(u(), u()));
    case Iso::MapTensor: return Space::fin_map(g.set(), Space::tensor(u(), u()));
    case Iso::CopowerTensor: return Space::fin_map(g.set(), u());
    case Iso::CompactCopowerTensor: return Space::compact_map(g.set(), u());
    case Iso::CompactSplit: return Space::compact_free(ring, g.set());
    case Iso::CompactMapSplit: return Space::compact_map(g.set(), u());
    }
    throw std::logic_error("unknown iso");
}

} // namespace

LawReport iso_round_trip(Iso iso, RingKind ring, int cases, std::uint64_t seed) {
    LawReport rep{std::string(iso_name(iso)) + " round trips over " + ring_label(ring)};
    Gen g(seed);
    each_case(rep, cases, [&](int) {
        const SpacePtr dom = iso_domain(g, iso, ring);
        const SpacePtr target = iso == Iso::Cp0 ? dom->value() : nullptr;
        const SpacePtr cod = iso_codomain(iso, true, dom);
        if (!same_space(iso_codomain(iso, false, cod, target), dom)) {
            rep.fail("codomain of the inverse is not the domain for " + dom->to_string());
            return;
        }
        const Term x = g.term(dom);
        const Term fx = apply_iso(iso, true, x);
        if (!same_space(fx.space(), cod)) rep.fail("forward image lands in " + fx.space()->to_string());
        check(rep, equal(apply_iso(iso, false, fx, target), x), "inverse after forward", x);
        const Term y = g.term(cod);
        check(rep, equal(apply_iso(iso, true, apply_iso(iso, false, y, target)), y), "forward after inverse", y);
        const Term x2 = g.term(dom);
        const Scalar r = g.scalar(ring);
        check(rep, equal(apply_iso(iso, true, add(x, scale(r, x2))), add(fx, scale(r, apply_iso(iso, true, x2)))),
              "linearity", x2);
    });
    return rep;
}

LawReport product_oracle(int cases, std::uint64_t seed) {
    LawReport rep{"multiply against naive distribution"};
    Gen g(seed);
    each_case(rep, cases, [&](int i) {
        const RingKind ring = i % 2 == 0 ? RingKind::Integer : RingKind::GF2;
        const bool wild = (i / 2) % 2 == 1;
        const ProductProblem p = product_problem(g, ring, wild);
        const NormalForm fast = multiply(p.factors);
        const NormalForm slow = naive_multiply_all(p.factors);
        if (!equal(fast, slow)) {
            std::string f;
            for (auto& t : p.factors) f += "\n  " + to_string(t);
            rep.fail("case " + std::to_string(i) + " over " + ring_label(ring) + ":" + f + "\n  multiply: " +
                     fast.to_string() + "\n  naive:    " + slow.to_string());
        }
    });
    return rep;
}

namespace {

Schema random_schema(Gen& g) {
    static const std::vector<Attribute> pool{
        {"A", PrimSet::str()}, {"B", PrimSet::int64()}, {"C", PrimSet::str()}, {"D", PrimSet::boolean()}};
    std::vector<Attribute> attrs;
    for (auto& a : pool)
        if (g.coin(0.5)) attrs.push_back(a);
    if (attrs.empty()) attrs.push_back(g.pick(pool));
    std::shuffle(attrs.begin(), attrs.end(), g.rng());
    return Schema(attrs);
}

} // namespace

LawReport outer_join_identities(int cases, std::uint64_t seed) {
    LawReport rep{"outer join identities"};
    Gen g(seed);
    each_case(rep, cases, [&](int) {
        const Relation x = relation(g, random_schema(g), RingKind::Integer);
        const Relation y = relation(g, random_schema(g), RingKind::Integer);
        const auto e = embed_all({x, y});
        const Term xe = e[0].data, ye = e[1].data;
        const Term one = unit_one(xe.space());
        const Term xy = mul(xe, ye);

        const Term left_rhs = add(xy, xe);
        const Term full_rhs = add(add(xy, xe), add(ye, one));
        check(rep, equal(mul(xe, add(ye, one)), left_rhs), "x′(y′+1) = x′y′+x′", xe);
        check(rep, equal(mul(add(xe, one), add(ye, one)), full_rhs), "(x′+1)(y′+1) = x′y′+x′+y′+1", xe);
        // Results without a baseline come back in the finite space, so the
        // operators are compared row by row.
        auto as_rel = [&](const Term& t) { return Relation{e[0].schema, RingKind::Integer, t}; };
        check(rep, same_contents(outer_join(OuterKind::Left, x, y), as_rel(left_rhs)), "left outer join = x′y′+x′", xe);
        check(rep, same_contents(outer_join(OuterKind::Right, x, y), as_rel(add(xy, ye))), "right outer join = x′y′+y′",
              ye);
        check(rep, same_contents(outer_join(OuterKind::Full, x, y), as_rel(full_rhs)), "full outer join", xe);
        // The naive distribution agrees as well.
        check(rep, equal(naive_multiply(add(xe, one), add(ye, one)), normalize(full_rhs)),
              "full outer join by distribution", xe);
    });
    return rep;
}

LawReport update_permutations(int cases, std::uint64_t seed) {
    LawReport rep{"update permutations commute"};
    Gen g(seed);
    const Schema schema({{"A", PrimSet::str()}, {"B", PrimSet::int64()}});
    each_case(rep, cases, [&](int) {
        const Relation db = relation(g, schema, RingKind::Integer);
        std::vector<Relation> deltas;
        const int n = g.uniform(2, 5);
        for (int i = 0; i < n; ++i) {
            Relation ins = relation(g, schema, RingKind::Integer, 3);
            Relation del = relation(g, schema, RingKind::Integer, 3);
            deltas.push_back(diff(ins, del));
        }
        Relation a = db;
        for (auto& d : deltas) a = apply_update(a, d);
        std::vector<Relation> shuffled = deltas;
        std::shuffle(shuffled.begin(), shuffled.end(), g.rng());
        Relation b = db;
        for (auto& d : shuffled) b = apply_update(b, d);
        check(rep, equal(a.data, b.data), "update order irrelevance", a.data);
        check(rep, same_contents(a, b), "update order irrelevance (rows)", a.data);
    });
    return rep;
}

} // namespace polyalg::testing
