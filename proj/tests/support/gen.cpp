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

#include "gen.hpp"

#include "polyalg/product.hpp"

namespace polyalg::testing {

Scalar Gen::scalar(RingKind ring) {
    switch (ring) {
    case RingKind::Integer: return Scalar::from_int(ring, uniform(-2, 2));
    case RingKind::GF2: return Scalar::from_bool(coin());
    case RingKind::Real: return Scalar::from_real(uniform(-8, 8) / 4.0);
    }
    return Scalar::zero(ring);
}

PrimSetPtr Gen::atomic_set() {
    switch (uniform(0, 5)) {
    case 0:
    case 1: return PrimSet::int64();
    case 2:
    case 3: return PrimSet::str();
    case 4: return PrimSet::boolean();
    default: return PrimSet::unit();
    }
}

PrimSetPtr Gen::set(int depth) {
    if (depth <= 0 || coin(0.7)) return atomic_set();
    if (coin()) return PrimSet::sum(set(depth - 1), set(depth - 1));
    return PrimSet::prod(set(depth - 1), set(depth - 1));
}

bool inhabited(const PrimSet& s) {
    switch (s.kind()) {
    case PrimSet::Kind::Empty: return false;
    case PrimSet::Kind::Sum: return inhabited(*s.left()) || inhabited(*s.right());
    case PrimSet::Kind::Prod: return inhabited(*s.left()) && inhabited(*s.right());
    default: return true;
    }
}

Value Gen::value(const PrimSet& s) {
    static const std::vector<std::string> words{"a", "b", "c", "d"};
    switch (s.kind()) {
    case PrimSet::Kind::Unit: return Value::unit();
    case PrimSet::Kind::Int64: return Value::integer(uniform(-1, 3));
    case PrimSet::Kind::Str: return Value::string(pick(words));
    case PrimSet::Kind::Bool: return Value::boolean(coin());
    case PrimSet::Kind::Sum: {
        const bool l = inhabited(*s.left()), r = inhabited(*s.right());
        if (l && (!r || coin())) return Value::left(value(*s.left()));
        return Value::right(value(*s.right()));
    }
    case PrimSet::Kind::Prod: return Value::pair(value(*s.left()), value(*s.right()));
    case PrimSet::Kind::Empty: break;
    }
    throw std::logic_error("no values in the empty set");
}

SpacePtr Gen::space(RingKind ring, int depth, bool allow_tensor) {
    const int top = depth <= 0 ? 2 : (allow_tensor ? 6 : 5);
    switch (uniform(0, top)) {
    case 0: return Space::scalar(ring);
    case 1: return Space::free(ring, set());
    case 2: return Space::compact_free(ring, set());
    case 3: return Space::fin_map(set(), space(ring, depth - 1, allow_tensor));
    case 4: return Space::compact_map(set(), space(ring, depth - 1, allow_tensor));
    case 5: return Space::biproduct(space(ring, depth - 1, allow_tensor), space(ring, depth - 1, allow_tensor));
    default: return Space::tensor(space(ring, depth - 1, allow_tensor), space(ring, depth - 1, allow_tensor));
    }
}

Term Gen::generator(const SpacePtr& s, int width) {
    const int inner = std::max(1, width - 1);
    switch (s->kind()) {
    case Space::Kind::Scalar: return one(s->ring());
    case Space::Kind::Free:
        if (!inhabited(*s->index())) return zero(s);
        return inject(s, value(*s->index()));
    case Space::Kind::CompactFree:
        if (!inhabited(*s->index()) || coin(0.25)) return wild_one(s);
        return inject(s, value(*s->index()));
    case Space::Kind::Biproduct: return pair(term(s->first(), inner), term(s->second(), inner));
    case Space::Kind::FinMap:
        if (!inhabited(*s->index())) return zero(s);
        return maps_to(s, value(*s->index()), term(s->value(), inner));
    case Space::Kind::CompactMap:
        if (!inhabited(*s->index()) || coin(0.25)) return wild_maps_to(s, term(s->value(), inner));
        return maps_to(s, value(*s->index()), term(s->value(), inner));
    case Space::Kind::Tensor: return tensor(term(s->first(), inner), term(s->second(), inner));
    }
    return zero(s);
}

Term Gen::term(const SpacePtr& s, int width) {
    const int n = uniform(0, width);
    if (n == 0) return zero(s);
    std::vector<Term> parts;
    for (int i = 0; i < n; ++i) {
        Term t = generator(s, width);
        if (coin(0.6)) t = scale(scalar(s->ring()), t);
        parts.push_back(t);
    }
    return sum_of(s, parts);
}

namespace {

Value small_key(Gen& g, const PrimSet& s) {
    static const std::vector<std::string> words{"a", "b", "c", "d"};
    switch (s.kind()) {
    case PrimSet::Kind::Int64: return Value::integer(g.uniform(0, 3));
    case PrimSet::Kind::Str: return Value::string(g.pick(words));
    default: return g.value(s);
    }
}

Term tuple_term(Gen& g, const std::vector<SpacePtr>& attrs, bool wildcards, std::size_t i = 0) {
    const SpacePtr& s = attrs[i];
    Term cell = wildcards && g.coin(0.3) ? wild_one(s) : inject(s, small_key(g, *s->index()));
    if (i + 1 == attrs.size()) return cell;
    return tensor(cell, tuple_term(g, attrs, wildcards, i + 1));
}

} // namespace

ProductProblem product_problem(Gen& g, RingKind ring, bool wildcards) {
    ProductProblem p;
    p.ring = ring;
    p.wildcards = wildcards;
    p.compact = wildcards || g.coin();
    const int m = g.uniform(1, 3);
    for (int i = 0; i < m; ++i) {
        const int k = g.uniform(0, 3);
        p.sets.push_back(k == 0 ? PrimSet::int64() : k == 1 ? PrimSet::str() : k == 2 ? PrimSet::boolean()
                                                                                   : PrimSet::int64());
    }
    std::vector<SpacePtr> attrs;
    for (auto& s : p.sets) attrs.push_back(p.compact ? Space::compact_free(ring, s) : Space::free(ring, s));
    SpacePtr space = attrs.back();
    for (std::size_t i = attrs.size() - 1; i-- > 0;) space = Space::tensor(attrs[i], space);
    const int n = g.uniform(1, 3);
    for (int f = 0; f < n; ++f) {
        std::vector<Term> parts;
        const int rows = g.uniform(0, 6);
        for (int r = 0; r < rows; ++r)
            parts.push_back(scale(Scalar::from_int(ring, g.uniform(-2, 2)), tuple_term(g, attrs, wildcards)));
        p.factors.push_back(sum_of(space, parts));
    }
    return p;
}

namespace {

// Value of a sum-free tensor of generators at the tuple suffix starting at i.
Scalar match(const Term& t, const std::vector<Value>& tuple, std::size_t& i) {
    const RingKind ring = t.space()->ring();
    switch (t.kind()) {
    case TermKind::TensorPair: {
        Scalar a = match(t.a(), tuple, i);
        return a * match(t.b(), tuple, i);
    }
    case TermKind::Inj: return t.key() == tuple[i++] ? Scalar::one(ring) : Scalar::zero(ring);
    case TermKind::WildOne: ++i; return Scalar::one(ring);
    default: throw std::logic_error("pointwise: unexpected generator " + to_string(t));
    }
}

} // namespace

Scalar pointwise(const Term& factor, const std::vector<Value>& tuple) {
    Scalar total = Scalar::zero(factor.space()->ring());
    for (auto& mono : flatten(factor)) {
        std::size_t i = 0;
        total += mono.coef * match(mono.gen, tuple, i);
    }
    return total;
}

Scalar lookup_path(const NormalForm& curried, const std::vector<Value>& tuple) {
    NormalForm cur = curried;
    for (auto& v : tuple) {
        if (cur.is_zero()) return Scalar::zero(curried.space()->ring());
        cur = lookup(cur, v);
    }
    if (cur.is_zero()) return Scalar::zero(curried.space()->ring());
    return cur.value();
}

Relation relation(Gen& g, const Schema& schema, RingKind ring, int max_rows) {
    std::vector<BasisRow> rows;
    const int n = g.uniform(0, max_rows);
    for (int i = 0; i < n; ++i) {
        BasisRow row{{}, Scalar::one(ring)};
        for (auto& a : schema.attributes()) row.cells.push_back(Cell::key_of(small_key(g, *a.type)));
        if (ring == RingKind::Integer) {
            int c = g.uniform(-2, 3);
            row.coef = Scalar::from_int(ring, c == 0 ? 1 : c);
        }
        rows.push_back(row);
    }
    return Relation::from_rows(schema, ring, rows);
}

} // namespace polyalg::testing
