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

#include "polyalg/term.hpp"

#include "polyalg/normal_form.hpp"

namespace polyalg {

namespace {

const Term kNoTerm;

Term node(TermKind k, SpacePtr space, std::optional<Scalar> coef = std::nullopt, Value key = Value(), Term a = Term(),
          Term b = Term()) {
    return Term(std::make_shared<const TermNode>(
        TermNode{k, std::move(space), std::move(coef), std::move(key), std::move(a), std::move(b)}));
}

void check_valid(const Term& t, const char* what) {
    if (!t.valid()) throw SpaceError(std::string(what) + ": uninitialized term");
}

void check_key(const SpacePtr& space, const Value& a) {
    if (!a.belongs_to(*space->index()))
        throw SpaceError("value " + a.to_string() + " is not in " + space->index()->to_string());
}

std::vector<Value> finite_values(const PrimSet& set) {
    switch (set.kind()) {
    case PrimSet::Kind::Empty: return {};
    case PrimSet::Kind::Unit: return {Value::unit()};
    case PrimSet::Kind::Bool: return {Value::boolean(false), Value::boolean(true)};
    case PrimSet::Kind::Sum: {
        std::vector<Value> out;
        for (auto& v : finite_values(*set.left())) out.push_back(Value::left(v));
        for (auto& v : finite_values(*set.right())) out.push_back(Value::right(v));
        return out;
    }
    case PrimSet::Kind::Prod: {
        std::vector<Value> out;
        const auto bs = finite_values(*set.right());
        for (auto& a : finite_values(*set.left()))
            for (auto& b : bs) out.push_back(Value::pair(a, b));
        return out;
    }
    default: throw SpaceError("no unit in non-compact space");
    }
}

} // namespace

TermKind Term::kind() const { return node_->kind; }
const SpacePtr& Term::space() const { return node_->space; }
const Scalar& Term::scalar() const { return *node_->coef; }
const Value& Term::key() const { return node_->key; }
const Term& Term::a() const { return node_ ? node_->a : kNoTerm; }
const Term& Term::b() const { return node_ ? node_->b : kNoTerm; }

Term zero(SpacePtr space) {
    if (!space) throw SpaceError("zero: null space");
    return node(TermKind::Zero, std::move(space));
}

Term add(const Term& x, const Term& y) {
    check_valid(x, "add");
    check_valid(y, "add");
    require_same_space(x.space(), y.space(), "add");
    return node(TermKind::Add, x.space(), std::nullopt, Value(), x, y);
}

Term neg(const Term& x) {
    check_valid(x, "neg");
    return scale(-Scalar::one(x.space()->ring()), x);
}

Term sub(const Term& x, const Term& y) { return add(x, neg(y)); }

Term scale(const Scalar& r, const Term& x) {
    check_valid(x, "scale");
    if (r.ring() != x.space()->ring()) throw RingMismatch("scale: scalar and term over different rings");
    return node(TermKind::Scale, x.space(), r, Value(), x);
}

Term one(RingKind ring) { return node(TermKind::One, Space::scalar(ring)); }

Term scalar(const Scalar& r) { return scale(r, one(r.ring())); }

Term inject(SpacePtr space, Value a) {
    if (!space || !space->is_free_like()) throw SpaceError("inject: expected a free or compact free space");
    check_key(space, a);
    return node(TermKind::Inj, std::move(space), std::nullopt, std::move(a));
}

Term wild_one(SpacePtr space) {
    if (!space || space->kind() != Space::Kind::CompactFree)
        throw SpaceError("wild_one: 1 exists only in compact free spaces");
    return node(TermKind::WildOne, std::move(space));
}

Term pair(const Term& u, const Term& v) {
    check_valid(u, "pair");
    check_valid(v, "pair");
    return node(TermKind::Pair, Space::biproduct(u.space(), v.space()), std::nullopt, Value(), u, v);
}

Term maps_to(SpacePtr space, Value a, const Term& u) {
    check_valid(u, "maps_to");
    if (!space || !space->is_map_like()) throw SpaceError("maps_to: expected a map space");
    check_key(space, a);
    require_same_space(space->value(), u.space(), "maps_to");
    return node(TermKind::MapsTo, std::move(space), std::nullopt, std::move(a), u);
}

Term wild_maps_to(SpacePtr space, const Term& u) {
    check_valid(u, "wild_maps_to");
    if (!space || space->kind() != Space::Kind::CompactMap)
        throw SpaceError("wild_maps_to: wildcard entries exist only in compact maps");
    require_same_space(space->value(), u.space(), "wild_maps_to");
    return node(TermKind::WildMapsTo, std::move(space), std::nullopt, Value(), u);
}

Term tensor(const Term& u, const Term& v) {
    check_valid(u, "tensor");
    check_valid(v, "tensor");
    return node(TermKind::TensorPair, Space::tensor(u.space(), v.space()), std::nullopt, Value(), u, v);
}

Term mul(const Term& x, const Term& y) {
    check_valid(x, "mul");
    check_valid(y, "mul");
    require_same_space(x.space(), y.space(), "mul");
    return node(TermKind::Mul, x.space(), std::nullopt, Value(), x, y);
}

Term sum_of(SpacePtr space, const std::vector<Term>& terms) {
    if (terms.empty()) return zero(std::move(space));
    std::vector<Term> level = terms;
    while (level.size() > 1) {
        std::vector<Term> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(add(level[i], level[i + 1]));
        if (level.size() % 2) next.push_back(level.back());
        level = std::move(next);
    }
    require_same_space(space, level.front().space(), "sum_of");
    return level.front();
}

Term unit_one(const SpacePtr& space) {
    if (!space) throw SpaceError("unit_one: null space");
    switch (space->kind()) {
    case Space::Kind::Scalar: return one(space->ring());
    case Space::Kind::CompactFree: return wild_one(space);
    case Space::Kind::CompactMap: return wild_maps_to(space, unit_one(space->value()));
    case Space::Kind::Tensor: return tensor(unit_one(space->first()), unit_one(space->second()));
    case Space::Kind::Biproduct: return pair(unit_one(space->first()), unit_one(space->second()));
    case Space::Kind::Free: {
        if (!space->index()->is_finite()) throw SpaceError("no unit in non-compact space");
        std::vector<Term> gens;
        for (auto& a : finite_values(*space->index())) gens.push_back(inject(space, a));
        return sum_of(space, gens);
    }
    case Space::Kind::FinMap: {
        if (!space->index()->is_finite()) throw SpaceError("no unit in non-compact space");
        const Term u = unit_one(space->value());
        std::vector<Term> gens;
        for (auto& a : finite_values(*space->index())) gens.push_back(maps_to(space, a, u));
        return sum_of(space, gens);
    }
    }
    throw SpaceError("unit_one: unknown space");
}

Term inj1(const Term& u, const SpacePtr& biproduct) {
    if (!biproduct || biproduct->kind() != Space::Kind::Biproduct) throw SpaceError("inj1: expected a biproduct");
    require_same_space(biproduct->first(), u.space(), "inj1");
    return pair(u, zero(biproduct->second()));
}

Term inj2(const Term& v, const SpacePtr& biproduct) {
    if (!biproduct || biproduct->kind() != Space::Kind::Biproduct) throw SpaceError("inj2: expected a biproduct");
    require_same_space(biproduct->second(), v.space(), "inj2");
    return pair(zero(biproduct->first()), v);
}

namespace {

Term project_side(const Term& x, bool second) {
    check_valid(x, "proj");
    if (x.space()->kind() != Space::Kind::Biproduct) throw SpaceError("proj: expected a biproduct");
    const SpacePtr& target = second ? x.space()->second() : x.space()->first();
    std::vector<Term> parts;
    for (auto& m : flatten(x)) {
        Term part;
        if (m.gen.kind() == TermKind::Pair) {
            part = second ? m.gen.b() : m.gen.a();
        } else { // Mul: the product of pairs is computed pointwise
            const NormalForm nf = normalize(m.gen);
            part = readback(second ? nf.second() : nf.first());
        }
        parts.push_back(m.coef.is_one() ? part : scale(m.coef, part));
    }
    return sum_of(target, parts);
}

} // namespace

Term proj1(const Term& x) { return project_side(x, false); }
Term proj2(const Term& x) { return project_side(x, true); }

std::vector<Monomial> flatten(const Term& x) {
    check_valid(x, "flatten");
    std::vector<Monomial> out;
    // Children are owned by their parents, so raw pointers stay valid while x lives.
    std::vector<std::pair<Scalar, const Term*>> stack;
    stack.emplace_back(Scalar::one(x.space()->ring()), &x);
    while (!stack.empty()) {
        auto [c, t] = std::move(stack.back());
        stack.pop_back();
        switch (t->kind()) {
        case TermKind::Zero: break;
        case TermKind::Add:
            stack.emplace_back(c, &t->b());
            stack.emplace_back(std::move(c), &t->a());
            break;
        case TermKind::Scale: {
            Scalar r = c * t->scalar();
            if (!r.is_zero()) stack.emplace_back(std::move(r), &t->a());
            break;
        }
        default:
            if (!c.is_zero()) out.push_back(Monomial{std::move(c), *t});
            break;
        }
    }
    return out;
}

Scalar weight(const Term& x) {
    Scalar total = Scalar::zero(x.space()->ring());
    for (auto& m : flatten(x)) {
        const Term& g = m.gen;
        Scalar w = Scalar::one(total.ring());
        switch (g.kind()) {
        case TermKind::One:
        case TermKind::Inj:
        case TermKind::WildOne: break;
        case TermKind::Pair: w = weight(g.a()) + weight(g.b()); break;
        case TermKind::MapsTo:
        case TermKind::WildMapsTo: w = weight(g.a()); break;
        case TermKind::TensorPair: w = weight(g.a()) * weight(g.b()); break;
        case TermKind::Mul: w = weight(normalize(g)); break;
        default: break;
        }
        total += m.coef * w;
    }
    return total;
}

namespace {

void render(const Term& x, std::string& out) {
    switch (x.kind()) {
    case TermKind::Zero: out += "0"; return;
    case TermKind::Add: {
        // Sums are associative, so a chain of additions prints as one list.
        std::vector<const Term*> parts, stack{&x};
        while (!stack.empty()) {
            const Term* t = stack.back();
            stack.pop_back();
            if (t->kind() == TermKind::Add) {
                stack.push_back(&t->b());
                stack.push_back(&t->a());
            } else {
                parts.push_back(t);
            }
        }
        out += "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " + ";
            render(*parts[i], out);
        }
        out += ")";
        return;
    }
    case TermKind::Scale:
        out += x.scalar().to_string();
        out += "*";
        render(x.a(), out);
        return;
    case TermKind::One:
    case TermKind::WildOne: out += "1"; return;
    case TermKind::Inj: out += "<" + x.key().to_string() + ">"; return;
    case TermKind::Pair:
        out += "(";
        render(x.a(), out);
        out += ", ";
        render(x.b(), out);
        out += ")";
        return;
    case TermKind::MapsTo:
        out += "(" + x.key().to_string() + " ↦ ";
        render(x.a(), out);
        out += ")";
        return;
    case TermKind::WildMapsTo:
        out += "(* ↦ ";
        render(x.a(), out);
        out += ")";
        return;
    case TermKind::TensorPair:
        out += "(";
        render(x.a(), out);
        out += " ⊗ ";
        render(x.b(), out);
        out += ")";
        return;
    case TermKind::Mul:
        out += "(";
        render(x.a(), out);
        out += " · ";
        render(x.b(), out);
        out += ")";
        return;
    }
}

} // namespace

std::string to_string(const Term& x) {
    if (!x.valid()) return "<invalid>";
    std::string out;
    render(x, out);
    return out;
}

} // namespace polyalg
