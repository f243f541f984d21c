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

#include "polyalg/linear.hpp"

#include <array>

#include "polyalg/normal_form.hpp"

namespace polyalg {

Term extend(const Term& x, const SpacePtr& target, const std::function<Term(const Term& gen)>& on_gen) {
    std::vector<Term> parts;
    for (auto& m : flatten(x)) {
        Term image;
        if (m.gen.kind() == TermKind::Mul)
            image = extend(readback(normalize(m.gen)), target, on_gen);
        else
            image = on_gen(m.gen);
        require_same_space(target, image.space(), "linear map image");
        parts.push_back(m.coef.is_one() ? image : scale(m.coef, image));
    }
    return sum_of(target, parts);
}

Term fold(const Term& x, const SpacePtr& target, const std::function<Term(const Value&)>& gen_action,
          const std::optional<Term>& wild_action) {
    if (!x.space()->is_free_like()) throw SpaceError("fold: expected a free or compact free term");
    return extend(x, target, [&](const Term& g) {
        if (g.kind() == TermKind::Inj) return gen_action(g.key());
        if (!wild_action) throw SpaceError("fold: no action given for 1");
        return *wild_action;
    });
}

Term fold_map(const Term& x, const SpacePtr& target, const std::function<Term(const Value&, const Term&)>& key_action,
              const std::function<Term(const Term&)>& wild_action) {
    if (!x.space()->is_map_like()) throw SpaceError("fold_map: expected a map term");
    return extend(x, target, [&](const Term& g) {
        if (g.kind() == TermKind::MapsTo) return key_action(g.key(), g.a());
        if (!wild_action) throw SpaceError("fold_map: no action given for wildcard entries");
        return wild_action(g.a());
    });
}

Term free_map(const std::function<Value(const Value&)>& f, const PrimSetPtr& codomain, const Term& x) {
    const SpacePtr& s = x.space();
    if (!s->is_free_like()) throw SpaceError("free_map: expected a free or compact free term");
    const SpacePtr target = s->kind() == Space::Kind::Free ? Space::free(s->ring(), codomain)
                                                           : Space::compact_free(s->ring(), codomain);
    std::optional<Term> wild;
    if (s->kind() == Space::Kind::CompactFree) wild = wild_one(target);
    return fold(x, target, [&](const Value& a) { return inject(target, f(a)); }, wild);
}

Term map_map(const std::function<Value(const Value&)>& f, const PrimSetPtr& codomain, const LinearMap& alpha,
             const Term& x) {
    const SpacePtr& s = x.space();
    if (!s->is_map_like()) throw SpaceError("map_map: expected a map term");
    const SpacePtr target = s->kind() == Space::Kind::FinMap ? Space::fin_map(codomain, alpha.target)
                                                             : Space::compact_map(codomain, alpha.target);
    return fold_map(
        x, target, [&](const Value& a, const Term& u) { return maps_to(target, f(a), alpha(u)); },
        [&](const Term& u) { return wild_maps_to(target, alpha(u)); });
}

Term tensor_map(const LinearMap& alpha, const LinearMap& beta, const Term& x) {
    if (x.space()->kind() != Space::Kind::Tensor) throw SpaceError("tensor_map: expected a tensor term");
    const SpacePtr target = Space::tensor(alpha.target, beta.target);
    return extend(x, target, [&](const Term& g) { return tensor(alpha(g.a()), beta(g.b())); });
}

LinearMap identity(const SpacePtr& s) {
    return LinearMap{s, s, [](const Term& x) { return x; }};
}

Term sum_over_index(const Term& x) {
    if (x.space()->kind() != Space::Kind::FinMap) throw SpaceError("sum_over_index: expected a finite map");
    return fold_map(x, x.space()->value(), [](const Value&, const Term& u) { return u; });
}

Term associator(const Term& x) {
    const SpacePtr& s = x.space();
    if (s->kind() != Space::Kind::Tensor || s->second()->kind() != Space::Kind::Tensor)
        throw SpaceError("associator: expected U ⊗ (V ⊗ W)");
    const SpacePtr target =
        Space::tensor(Space::tensor(s->first(), s->second()->first()), s->second()->second());
    return extend(x, target, [&](const Term& g) {
        const Term u = g.a();
        return extend(g.b(), target, [&](const Term& h) { return tensor(tensor(u, h.a()), h.b()); });
    });
}

Term associator_inv(const Term& x) {
    const SpacePtr& s = x.space();
    if (s->kind() != Space::Kind::Tensor || s->first()->kind() != Space::Kind::Tensor)
        throw SpaceError("associator_inv: expected (U ⊗ V) ⊗ W");
    const SpacePtr target = Space::tensor(s->first()->first(), Space::tensor(s->first()->second(), s->second()));
    return extend(x, target, [&](const Term& g) {
        const Term w = g.b();
        return extend(g.a(), target, [&](const Term& h) { return tensor(h.a(), tensor(h.b(), w)); });
    });
}

Term commutator(const Term& x) {
    const SpacePtr& s = x.space();
    if (s->kind() != Space::Kind::Tensor) throw SpaceError("commutator: expected a tensor");
    const SpacePtr target = Space::tensor(s->second(), s->first());
    return extend(x, target, [](const Term& g) { return tensor(g.b(), g.a()); });
}

// ---------------------------------------------------------------------------
// Isomorphisms

namespace {

struct IsoEntry {
    Iso iso;
    std::string_view name;
};

constexpr std::array<IsoEntry, 14> kIsos{{
    {Iso::Cp0, "cp0"},
    {Iso::Cp1, "cp1"},
    {Iso::CpSum, "cp_sum"},
    {Iso::CpProd, "cp_prod"},
    {Iso::FreeUnit, "free_unit"},
    {Iso::FreeSum, "free_sum"},
    {Iso::FreeProd, "free_prod"},
    {Iso::MapScalar, "map_scalar"},
    {Iso::MapBiprod, "map_biprod"},
    {Iso::MapTensor, "map_tensor"},
    {Iso::CopowerTensor, "copower_tensor"},
    {Iso::CompactCopowerTensor, "compact_copower_tensor"},
    {Iso::CompactSplit, "compact_split"},
    {Iso::CompactMapSplit, "compactmap_split"},
}};

using K = Space::Kind;
using P = PrimSet::Kind;

[[noreturn]] void bad_domain(Iso iso, bool forward, const SpacePtr& s) {
    throw SpaceError(std::string(iso_name(iso)) + (forward ? "" : " (inverse)") + ": does not apply to " +
                     s->to_string());
}

void expect(bool ok, Iso iso, bool forward, const SpacePtr& s) {
    if (!ok) bad_domain(iso, forward, s);
}

bool is(const SpacePtr& s, K k) { return s && s->kind() == k; }
bool set_is(const SpacePtr& s, P k) { return s && s->index() && s->index()->kind() == k; }

} // namespace

std::string_view iso_name(Iso iso) {
    for (auto& e : kIsos)
        if (e.iso == iso) return e.name;
    return "?";
}

Iso parse_iso(std::string_view name) {
    for (auto& e : kIsos)
        if (e.name == name) return e.iso;
    throw std::invalid_argument("unknown isomorphism '" + std::string(name) + "'");
}

const std::vector<Iso>& all_isos() {
    static const std::vector<Iso> v = [] {
        std::vector<Iso> out;
        for (auto& e : kIsos) out.push_back(e.iso);
        return out;
    }();
    return v;
}

SpacePtr iso_codomain(Iso iso, bool fwd, const SpacePtr& s, const SpacePtr& target) {
    const RingKind r = s->ring();
    if (fwd) {
        switch (iso) {
        case Iso::Cp0:
            expect(is(s, K::FinMap) && set_is(s, P::Empty), iso, fwd, s);
            return Space::free(r, PrimSet::empty());
        case Iso::Cp1: expect(is(s, K::FinMap) && set_is(s, P::Unit), iso, fwd, s); return s->value();
        case Iso::CpSum:
            expect(is(s, K::FinMap) && set_is(s, P::Sum), iso, fwd, s);
            return Space::biproduct(Space::fin_map(s->index()->left(), s->value()),
                                    Space::fin_map(s->index()->right(), s->value()));
        case Iso::CpProd:
            expect(is(s, K::FinMap) && set_is(s, P::Prod), iso, fwd, s);
            return Space::fin_map(s->index()->left(), Space::fin_map(s->index()->right(), s->value()));
        case Iso::FreeUnit: expect(is(s, K::Free) && set_is(s, P::Unit), iso, fwd, s); return Space::scalar(r);
        case Iso::FreeSum:
            expect(is(s, K::Free) && set_is(s, P::Sum), iso, fwd, s);
            return Space::biproduct(Space::free(r, s->index()->left()), Space::free(r, s->index()->right()));
        case Iso::FreeProd:
            expect(is(s, K::Free) && set_is(s, P::Prod), iso, fwd, s);
            return Space::tensor(Space::free(r, s->index()->left()), Space::free(r, s->index()->right()));
        case Iso::MapScalar:
            expect(is(s, K::FinMap) && is(s->value(), K::Scalar), iso, fwd, s);
            return Space::free(r, s->index());
        case Iso::MapBiprod:
            expect(is(s, K::FinMap) && is(s->value(), K::Biproduct), iso, fwd, s);
            return Space::biproduct(Space::fin_map(s->index(), s->value()->first()),
                                    Space::fin_map(s->index(), s->value()->second()));
        case Iso::MapTensor:
            expect(is(s, K::FinMap) && is(s->value(), K::Tensor), iso, fwd, s);
            return Space::tensor(Space::fin_map(s->index(), s->value()->first()), s->value()->second());
        case Iso::CopowerTensor:
            expect(is(s, K::FinMap), iso, fwd, s);
            return Space::tensor(Space::free(r, s->index()), s->value());
        case Iso::CompactCopowerTensor:
            expect(is(s, K::CompactMap), iso, fwd, s);
            return Space::tensor(Space::compact_free(r, s->index()), s->value());
        case Iso::CompactSplit:
            expect(is(s, K::CompactFree), iso, fwd, s);
            return Space::biproduct(Space::free(r, s->index()), Space::scalar(r));
        case Iso::CompactMapSplit:
            expect(is(s, K::CompactMap), iso, fwd, s);
            return Space::biproduct(Space::fin_map(s->index(), s->value()), s->value());
        }
    } else {
        switch (iso) {
        case Iso::Cp0:
            expect(is(s, K::Free) && set_is(s, P::Empty), iso, fwd, s);
            if (!target) throw SpaceError("cp0 (inverse): the value space U must be given");
            return Space::fin_map(PrimSet::empty(), target);
        case Iso::Cp1: return Space::fin_map(PrimSet::unit(), s);
        case Iso::CpSum: {
            expect(is(s, K::Biproduct) && is(s->first(), K::FinMap) && is(s->second(), K::FinMap) &&
                       same_space(s->first()->value(), s->second()->value()),
                   iso, fwd, s);
            return Space::fin_map(PrimSet::sum(s->first()->index(), s->second()->index()), s->first()->value());
        }
        case Iso::CpProd:
            expect(is(s, K::FinMap) && is(s->value(), K::FinMap), iso, fwd, s);
            return Space::fin_map(PrimSet::prod(s->index(), s->value()->index()), s->value()->value());
        case Iso::FreeUnit: expect(is(s, K::Scalar), iso, fwd, s); return Space::free(r, PrimSet::unit());
        case Iso::FreeSum:
            expect(is(s, K::Biproduct) && is(s->first(), K::Free) && is(s->second(), K::Free), iso, fwd, s);
            return Space::free(r, PrimSet::sum(s->first()->index(), s->second()->index()));
        case Iso::FreeProd:
            expect(is(s, K::Tensor) && is(s->first(), K::Free) && is(s->second(), K::Free), iso, fwd, s);
            return Space::free(r, PrimSet::prod(s->first()->index(), s->second()->index()));
        case Iso::MapScalar: expect(is(s, K::Free), iso, fwd, s); return Space::fin_map(s->index(), Space::scalar(r));
        case Iso::MapBiprod:
            expect(is(s, K::Biproduct) && is(s->first(), K::FinMap) && is(s->second(), K::FinMap) &&
                       same_set(s->first()->index(), s->second()->index()),
                   iso, fwd, s);
            return Space::fin_map(s->first()->index(),
                                  Space::biproduct(s->first()->value(), s->second()->value()));
        case Iso::MapTensor:
            expect(is(s, K::Tensor) && is(s->first(), K::FinMap), iso, fwd, s);
            return Space::fin_map(s->first()->index(), Space::tensor(s->first()->value(), s->second()));
        case Iso::CopowerTensor:
            expect(is(s, K::Tensor) && is(s->first(), K::Free), iso, fwd, s);
            return Space::fin_map(s->first()->index(), s->second());
        case Iso::CompactCopowerTensor:
            expect(is(s, K::Tensor) && is(s->first(), K::CompactFree), iso, fwd, s);
            return Space::compact_map(s->first()->index(), s->second());
        case Iso::CompactSplit:
            expect(is(s, K::Biproduct) && is(s->first(), K::Free) && is(s->second(), K::Scalar), iso, fwd, s);
            return Space::compact_free(r, s->first()->index());
        case Iso::CompactMapSplit:
            expect(is(s, K::Biproduct) && is(s->first(), K::FinMap) && same_space(s->first()->value(), s->second()),
                   iso, fwd, s);
            return Space::compact_map(s->first()->index(), s->second());
        }
    }
    bad_domain(iso, fwd, s);
}

Term apply_iso(Iso iso, bool fwd, const Term& x, const SpacePtr& target) {
    const SpacePtr& s = x.space();
    const SpacePtr cod = iso_codomain(iso, fwd, s, target);
    const RingKind r = s->ring();
    if (fwd) {
        switch (iso) {
        case Iso::Cp0: return zero(cod);
        case Iso::Cp1: return extend(x, cod, [](const Term& g) { return g.a(); });
        case Iso::CpSum:
            return extend(x, cod, [&](const Term& g) {
                const Value& k = g.key();
                if (k.is_right()) return pair(zero(cod->first()), maps_to(cod->second(), k.inner(), g.a()));
                return pair(maps_to(cod->first(), k.inner(), g.a()), zero(cod->second()));
            });
        case Iso::CpProd:
            return extend(x, cod, [&](const Term& g) {
                return maps_to(cod, g.key().first(), maps_to(cod->value(), g.key().second(), g.a()));
            });
        case Iso::FreeUnit: return extend(x, cod, [r](const Term&) { return one(r); });
        case Iso::FreeSum:
            return extend(x, cod, [&](const Term& g) {
                const Value& k = g.key();
                if (k.is_right()) return pair(zero(cod->first()), inject(cod->second(), k.inner()));
                return pair(inject(cod->first(), k.inner()), zero(cod->second()));
            });
        case Iso::FreeProd:
            return extend(x, cod, [&](const Term& g) {
                return tensor(inject(cod->first(), g.key().first()), inject(cod->second(), g.key().second()));
            });
        case Iso::MapScalar:
            return extend(x, cod, [&](const Term& g) {
                const Value a = g.key();
                return extend(g.a(), cod, [&](const Term&) { return inject(cod, a); });
            });
        case Iso::MapBiprod:
            return extend(x, cod, [&](const Term& g) {
                return pair(maps_to(cod->first(), g.key(), proj1(g.a())), maps_to(cod->second(), g.key(), proj2(g.a())));
            });
        case Iso::MapTensor:
            return extend(x, cod, [&](const Term& g) {
                const Value a = g.key();
                return extend(g.a(), cod,
                              [&](const Term& h) { return tensor(maps_to(cod->first(), a, h.a()), h.b()); });
            });
        case Iso::CopowerTensor:
            return extend(x, cod, [&](const Term& g) { return tensor(inject(cod->first(), g.key()), g.a()); });
        case Iso::CompactCopowerTensor:
            return extend(x, cod, [&](const Term& g) {
                if (g.kind() == TermKind::WildMapsTo) return tensor(wild_one(cod->first()), g.a());
                return tensor(inject(cod->first(), g.key()), g.a());
            });
        case Iso::CompactSplit:
            return extend(x, cod, [&](const Term& g) {
                if (g.kind() == TermKind::WildOne) return pair(zero(cod->first()), one(r));
                return pair(inject(cod->first(), g.key()), zero(cod->second()));
            });
        case Iso::CompactMapSplit:
            return extend(x, cod, [&](const Term& g) {
                if (g.kind() == TermKind::WildMapsTo) return pair(zero(cod->first()), g.a());
                return pair(maps_to(cod->first(), g.key(), g.a()), zero(cod->second()));
            });
        }
    } else {
        switch (iso) {
        case Iso::Cp0: return zero(cod);
        case Iso::Cp1: return maps_to(cod, Value::unit(), x);
        case Iso::CpSum:
            return extend(x, cod, [&](const Term& g) {
                auto left = fold_map(g.a(), cod, [&](const Value& a, const Term& u) {
                    return maps_to(cod, Value::left(a), u);
                });
                auto right = fold_map(g.b(), cod, [&](const Value& b, const Term& u) {
                    return maps_to(cod, Value::right(b), u);
                });
                return add(left, right);
            });
        case Iso::CpProd:
            return extend(x, cod, [&](const Term& g) {
                const Value a = g.key();
                return fold_map(g.a(), cod,
                                [&](const Value& b, const Term& u) { return maps_to(cod, Value::pair(a, b), u); });
            });
        case Iso::FreeUnit: return extend(x, cod, [&](const Term&) { return inject(cod, Value::unit()); });
        case Iso::FreeSum:
            return extend(x, cod, [&](const Term& g) {
                return add(fold(g.a(), cod, [&](const Value& a) { return inject(cod, Value::left(a)); }),
                           fold(g.b(), cod, [&](const Value& b) { return inject(cod, Value::right(b)); }));
            });
        case Iso::FreeProd:
            return extend(x, cod, [&](const Term& g) {
                const Term q = g.b();
                return fold(g.a(), cod, [&](const Value& a) {
                    return fold(q, cod, [&](const Value& b) { return inject(cod, Value::pair(a, b)); });
                });
            });
        case Iso::MapScalar:
            return extend(x, cod, [&](const Term& g) { return maps_to(cod, g.key(), one(r)); });
        case Iso::MapBiprod:
            return extend(x, cod, [&](const Term& g) {
                const SpacePtr& uv = cod->value();
                auto left = fold_map(g.a(), cod, [&](const Value& a, const Term& u) {
                    return maps_to(cod, a, inj1(u, uv));
                });
                auto right = fold_map(g.b(), cod, [&](const Value& a, const Term& v) {
                    return maps_to(cod, a, inj2(v, uv));
                });
                return add(left, right);
            });
        case Iso::MapTensor:
            return extend(x, cod, [&](const Term& g) {
                const Term v = g.b();
                return fold_map(g.a(), cod, [&](const Value& a, const Term& u) { return maps_to(cod, a, tensor(u, v)); });
            });
        case Iso::CopowerTensor:
            return extend(x, cod, [&](const Term& g) {
                const Term u = g.b();
                return fold(g.a(), cod, [&](const Value& a) { return maps_to(cod, a, u); });
            });
        case Iso::CompactCopowerTensor:
            return extend(x, cod, [&](const Term& g) {
                const Term u = g.b();
                return fold(g.a(), cod, [&](const Value& a) { return maps_to(cod, a, u); }, wild_maps_to(cod, u));
            });
        case Iso::CompactSplit:
            return extend(x, cod, [&](const Term& g) {
                auto finite = fold(g.a(), cod, [&](const Value& a) { return inject(cod, a); });
                auto base = extend(g.b(), cod, [&](const Term&) { return wild_one(cod); });
                return add(finite, base);
            });
        case Iso::CompactMapSplit:
            return extend(x, cod, [&](const Term& g) {
                auto finite = fold_map(g.a(), cod, [&](const Value& a, const Term& u) { return maps_to(cod, a, u); });
                return add(finite, wild_maps_to(cod, g.b()));
            });
        }
    }
    bad_domain(iso, fwd, s);
}

} // namespace polyalg
