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

#include "polyalg/product.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "polyalg/linear.hpp"

namespace polyalg {

namespace {

std::size_t component_count(const NormalForm& f) { return f.size() + (f.has_baseline() ? 1 : 0); }

NormalForm lookup_at(const NormalForm* dev, const NormalForm& base) {
    if (!dev) return base;
    if (base.is_zero()) return *dev;
    return nf_add(base, *dev);
}

NormalForm mul_rec(const std::vector<NormalForm>& fs, std::size_t depth, Metrics* m);

NormalForm mul_map_level(const std::vector<NormalForm>& fs, std::size_t depth, Metrics* m) {
    const SpacePtr& s = fs.front().space();
    const SpacePtr vs = value_space(s);
    const std::size_t n = fs.size();

    std::vector<NormalForm> base(n);
    std::vector<char> in_z(n);
    bool z_empty = true;
    for (std::size_t j = 0; j < n; ++j) {
        base[j] = fs[j].baseline();
        in_z[j] = base[j].is_zero();
        if (in_z[j]) z_empty = false;
    }
    const NormalForm result_base = z_empty ? mul_rec(base, depth + 1, m) : NormalForm::zero(vs);
    const NormalForm minus_base = nf_neg(result_base);

    // Probe factors without a baseline first: a miss there kills the key.
    std::vector<std::size_t> probe;
    for (std::size_t j = 0; j < n; ++j)
        if (in_z[j]) probe.push_back(j);
    for (std::size_t j = 0; j < n; ++j)
        if (!in_z[j]) probe.push_back(j);

    std::vector<std::pair<Value, NormalForm>> entries;
    std::vector<char> used(n);
    std::vector<std::size_t> chain;
    std::vector<NormalForm> vals(n);
    for (;;) {
        std::size_t pick = n;
        for (std::size_t j = 0; j < n; ++j)
            if (!used[j] && (pick == n || component_count(fs[j]) < component_count(fs[pick]))) pick = j;
        if (pick == n) break;
        if (m && m->record_trace) {
            EnumeratorChoice c;
            c.depth = depth;
            c.chosen = pick;
            for (std::size_t j = 0; j < n; ++j)
                c.counts.push_back(used[j] ? EnumeratorChoice::kExcluded : component_count(fs[j]));
            m->trace.push_back(std::move(c));
        }
        used[pick] = 1;
        const NormalForm& e = fs[pick];
        for (std::size_t i = 0; i < e.size(); ++i) {
            const Value& key = e.key(i);
            const bool seen = std::any_of(chain.begin(), chain.end(), [&](std::size_t c) { return fs[c].find(key, m); });
            if (seen) continue;
            bool dead = false;
            for (std::size_t j : probe) {
                const NormalForm* dev = j == pick ? &e.at(i) : fs[j].find(key, m);
                vals[j] = lookup_at(dev, base[j]);
                if (vals[j].is_zero()) {
                    dead = true;
                    break;
                }
            }
            NormalForm v;
            if (dead)
                v = minus_base;
            else
                v = mul_rec(vals, depth + 1, m);
            if (z_empty && !dead) v = nf_add(v, minus_base);
            if (!v.is_zero()) entries.emplace_back(key, std::move(v));
        }
        chain.push_back(pick);
        if (!e.has_baseline()) break;
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return NormalForm::map(s, std::move(entries), result_base, m);
}

NormalForm mul_rec(const std::vector<NormalForm>& fs, std::size_t depth, Metrics* m) {
    const SpacePtr& s = fs.front().space();
    for (auto& f : fs)
        if (f.is_zero()) return NormalForm::zero(s);
    if (fs.size() == 1) return fs.front();
    switch (s->kind()) {
    case Space::Kind::Scalar: {
        Scalar r = fs.front().value();
        for (std::size_t j = 1; j < fs.size(); ++j) r = r * fs[j].value();
        if (m) m->ring_muls += fs.size() - 1;
        return NormalForm::scalar(std::move(r));
    }
    case Space::Kind::Biproduct: {
        std::vector<NormalForm> a, b;
        for (auto& f : fs) {
            a.push_back(f.first());
            b.push_back(f.second());
        }
        return NormalForm::pair(s, mul_rec(a, depth, m), mul_rec(b, depth, m));
    }
    case Space::Kind::Tensor: throw SpaceError("multiply_curried: tensor spaces must be curried first");
    default: return mul_map_level(fs, depth, m);
    }
}

} // namespace

NormalForm multiply_curried(const std::vector<NormalForm>& factors, Metrics* m) {
    if (factors.empty()) throw SpaceError("multiply: no factors");
    for (auto& f : factors) require_same_space(factors.front().space(), f.space(), "multiply");
    return mul_rec(factors, 0, m);
}

NormalForm multiply_nf(const std::vector<NormalForm>& factors, Metrics* m) {
    if (factors.empty()) throw SpaceError("multiply: no factors");
    const SpacePtr& s = factors.front().space();
    for (auto& f : factors) require_same_space(s, f.space(), "multiply");
    if (!s->contains_tensor()) return mul_rec(factors, 0, m);
    std::vector<NormalForm> curried;
    curried.reserve(factors.size());
    for (auto& f : factors) curried.push_back(curry(f));
    return uncurry(mul_rec(curried, 0, m), s);
}

NormalForm multiply(const std::vector<Term>& factors, Metrics* m) {
    std::vector<NormalForm> nfs;
    nfs.reserve(factors.size());
    for (auto& t : factors) nfs.push_back(normalize(t, m));
    return multiply_nf(nfs, m);
}

NormalForm evaluate_mul(const Term& mul_node, Metrics* m) {
    std::vector<Term> factors;
    std::vector<const Term*> stack{&mul_node};
    while (!stack.empty()) {
        const Term* t = stack.back();
        stack.pop_back();
        if (t->kind() == TermKind::Mul) {
            stack.push_back(&t->b());
            stack.push_back(&t->a());
        } else {
            factors.push_back(*t);
        }
    }
    return multiply(factors, m);
}

// ---------------------------------------------------------------------------
// Distributive oracle

namespace {

using Expansion = std::vector<std::pair<Scalar, Term>>;

Expansion expand_basic(const Term& x, Metrics* m);
std::optional<Term> mul_basic(const Term& g, const Term& h);

Expansion product_expansion(const Expansion& xs, const Expansion& ys, Metrics* m) {
    Expansion out;
    for (auto& [cx, gx] : xs)
        for (auto& [cy, gy] : ys) {
            Scalar c = cx * cy;
            if (m) ++m->ring_muls;
            if (c.is_zero()) continue;
            if (auto r = mul_basic(gx, gy)) out.emplace_back(std::move(c), std::move(*r));
        }
    return out;
}

Expansion expand_basic(const Term& x, Metrics* m) {
    Expansion out;
    const SpacePtr& s = x.space();
    for (auto& mono : flatten(x)) {
        const Term& g = mono.gen;
        const Scalar& c = mono.coef;
        switch (g.kind()) {
        case TermKind::MapsTo:
            for (auto& [d, h] : expand_basic(g.a(), m)) out.emplace_back(c * d, maps_to(s, g.key(), h));
            break;
        case TermKind::WildMapsTo:
            for (auto& [d, h] : expand_basic(g.a(), m)) out.emplace_back(c * d, wild_maps_to(s, h));
            break;
        case TermKind::Pair: {
            const Term zl = zero(s->first());
            const Term zr = zero(s->second());
            for (auto& [d, h] : expand_basic(g.a(), m)) out.emplace_back(c * d, pair(h, zr));
            for (auto& [d, h] : expand_basic(g.b(), m)) out.emplace_back(c * d, pair(zl, h));
            break;
        }
        case TermKind::TensorPair: {
            const Expansion r = expand_basic(g.b(), m);
            for (auto& [d1, h1] : expand_basic(g.a(), m))
                for (auto& [d2, h2] : r) out.emplace_back(c * d1 * d2, tensor(h1, h2));
            break;
        }
        case TermKind::Mul:
            for (auto& [d, h] : product_expansion(expand_basic(g.a(), m), expand_basic(g.b(), m), m))
                out.emplace_back(c * d, h);
            break;
        default: out.emplace_back(c, g); break;
        }
    }
    std::erase_if(out, [](const auto& p) { return p.first.is_zero(); });
    return out;
}

// Product of two sum-free generator trees: one tree or zero.
std::optional<Term> mul_basic(const Term& g, const Term& h) {
    const SpacePtr& s = g.space();
    switch (g.kind()) {
    case TermKind::One: return g;
    case TermKind::Inj:
        if (h.kind() == TermKind::WildOne || h.key() == g.key()) return g;
        return std::nullopt;
    case TermKind::WildOne: return h;
    case TermKind::MapsTo:
    case TermKind::WildMapsTo: {
        const bool gw = g.kind() == TermKind::WildMapsTo;
        const bool hw = h.kind() == TermKind::WildMapsTo;
        if (!gw && !hw && !(g.key() == h.key())) return std::nullopt;
        auto v = mul_basic(g.a(), h.a());
        if (!v) return std::nullopt;
        if (gw && hw) return wild_maps_to(s, *v);
        return maps_to(s, gw ? h.key() : g.key(), *v);
    }
    case TermKind::Pair: {
        const bool g2 = g.a().kind() == TermKind::Zero;
        const bool h2 = h.a().kind() == TermKind::Zero;
        if (g2 != h2) return std::nullopt;
        if (g2) {
            auto v = mul_basic(g.b(), h.b());
            if (!v) return std::nullopt;
            return pair(g.a(), *v);
        }
        auto u = mul_basic(g.a(), h.a());
        if (!u) return std::nullopt;
        return pair(*u, g.b());
    }
    case TermKind::TensorPair: {
        auto u = mul_basic(g.a(), h.a());
        if (!u) return std::nullopt;
        auto v = mul_basic(g.b(), h.b());
        if (!v) return std::nullopt;
        return tensor(*u, *v);
    }
    default: throw SpaceError("naive_multiply: unexpected generator");
    }
}

} // namespace

NormalForm naive_multiply(const Term& x, const Term& y, Metrics* m) {
    require_same_space(x.space(), y.space(), "naive_multiply");
    const Expansion prod = product_expansion(expand_basic(x, m), expand_basic(y, m), m);
    std::vector<Term> parts;
    parts.reserve(prod.size());
    for (auto& [c, g] : prod) parts.push_back(c.is_one() ? g : scale(c, g));
    return normalize(sum_of(x.space(), parts));
}

NormalForm naive_multiply_all(const std::vector<Term>& factors, Metrics* m) {
    if (factors.empty()) throw SpaceError("multiply: no factors");
    if (factors.size() == 1) return normalize(factors.front());
    NormalForm acc = naive_multiply(factors[0], factors[1], m);
    for (std::size_t i = 2; i < factors.size(); ++i) acc = naive_multiply(readback(acc), factors[i], m);
    return acc;
}

// ---------------------------------------------------------------------------
// Embedding into compact tensor spaces

SpacePtr compact_tensor_space(RingKind ring, const std::vector<PrimSetPtr>& sets) {
    if (sets.empty()) return Space::scalar(ring);
    SpacePtr s = Space::compact_free(ring, sets.back());
    for (std::size_t i = sets.size() - 1; i-- > 0;) s = Space::tensor(Space::compact_free(ring, sets[i]), s);
    return s;
}

std::vector<SpacePtr> attribute_spaces(const SpacePtr& s) {
    if (s->kind() == Space::Kind::Scalar) return {};
    if (s->kind() != Space::Kind::Tensor) return {s};
    auto out = attribute_spaces(s->first());
    auto rest = attribute_spaces(s->second());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

namespace {

SpacePtr right_nested_space(const SpacePtr& s) {
    const auto leaves = attribute_spaces(s);
    if (leaves.empty()) return s;
    SpacePtr out = leaves.back();
    for (std::size_t i = leaves.size() - 1; i-- > 0;) out = Space::tensor(leaves[i], out);
    return out;
}

bool is_right_nested(const SpacePtr& s) {
    if (s->kind() != Space::Kind::Tensor) return true;
    return s->first()->kind() != Space::Kind::Tensor && is_right_nested(s->second());
}

class RightNester {
public:
    Term run(const Term& x) {
        const SpacePtr& s = x.space();
        if (is_right_nested(s)) return x;
        if (auto it = memo_.find(x.node()); it != memo_.end()) return it->second.second;
        Term out;
        if (s->first()->kind() == Space::Kind::Tensor) {
            out = run(associator_inv(x));
        } else {
            out = extend(x, right_nested_space(s), [&](const Term& g) { return tensor(g.a(), run(g.b())); });
        }
        memo_.emplace(x.node(), std::make_pair(x, out));
        return out;
    }

private:
    std::map<const TermNode*, std::pair<Term, Term>> memo_;
};

Term include_attr(const Term& u, const PrimSetPtr& set) {
    const SpacePtr& s = u.space();
    if (!s->is_free_like() || !same_set(s->index(), set))
        throw SpaceError("embed: attribute " + s->to_string() + " does not match " + set->to_string());
    if (s->kind() == Space::Kind::CompactFree) return u;
    const SpacePtr cf = Space::compact_free(s->ring(), set);
    return fold(u, cf, [&](const Value& a) { return inject(cf, a); });
}

struct Embedder {
    RingKind ring;
    const std::vector<std::size_t>& pos;
    const std::vector<PrimSetPtr>& target;

    SpacePtr space_from(std::size_t t) const {
        return compact_tensor_space(ring, std::vector<PrimSetPtr>(target.begin() + static_cast<std::ptrdiff_t>(t), target.end()));
    }

    Term all_wild(std::size_t t) const {
        Term out = wild_one(Space::compact_free(ring, target.back()));
        for (std::size_t i = target.size() - 1; i-- > t;) out = tensor(wild_one(Space::compact_free(ring, target[i])), out);
        return out;
    }

    Term run(const Term& x, std::size_t i, std::size_t t) const {
        if (pos[i] != t) return tensor(wild_one(Space::compact_free(ring, target[t])), run(x, i, t + 1));
        if (i + 1 == pos.size()) {
            Term inc = include_attr(x, target[t]);
            return t + 1 == target.size() ? inc : tensor(inc, all_wild(t + 1));
        }
        return extend(x, space_from(t), [&](const Term& g) {
            return tensor(include_attr(g.a(), target[t]), run(g.b(), i + 1, t + 1));
        });
    }
};

} // namespace

Term right_nest(const Term& x) { return RightNester().run(x); }

Term embed(const Term& x, const std::vector<std::size_t>& positions, const std::vector<PrimSetPtr>& target) {
    const RingKind ring = x.space()->ring();
    const auto attrs = attribute_spaces(x.space());
    if (attrs.size() != positions.size()) throw SpaceError("embed: one target position per attribute is required");
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] >= target.size()) throw SpaceError("embed: attribute position out of range");
        if (i && positions[i] <= positions[i - 1]) throw SpaceError("embed: positions must increase");
    }
    if (target.empty()) return x;
    Embedder e{ring, positions, target};
    if (attrs.empty()) return extend(x, e.space_from(0), [&](const Term&) { return e.all_wild(0); });
    return e.run(right_nest(x), 0, 0);
}

// ---------------------------------------------------------------------------
// Triangle query

std::size_t count_leaves(const NormalForm& x) {
    if (x.is_zero()) return 0;
    switch (x.space()->kind()) {
    case Space::Kind::Scalar: return 1;
    case Space::Kind::Biproduct: return count_leaves(x.first()) + count_leaves(x.second());
    case Space::Kind::Tensor: {
        std::size_t n = 0;
        for (auto& row : enumerate(x, true))
            if (std::none_of(row.cells.begin(), row.cells.end(), [](const Cell& c) { return c.kind == Cell::Kind::Wild; }))
                ++n;
        return n;
    }
    default: {
        std::size_t n = 0;
        for (std::size_t i = 0; i < x.size(); ++i) n += count_leaves(x.at(i));
        return n;
    }
    }
}

TriangleResult triangle(const Term& x, const Term& y, const Term& z, bool record_trace) {
    auto two = [](const Term& t, const char* name) {
        auto a = attribute_spaces(t.space());
        if (a.size() != 2) throw SpaceError(std::string("triangle: ") + name + " must have two attributes");
        return a;
    };
    const auto ax = two(x, "x"), ay = two(y, "y"), az = two(z, "z");
    const std::vector<PrimSetPtr> sets{ax[0]->index(), ax[1]->index(), ay[1]->index()};
    if (!same_set(ay[0]->index(), sets[0]) || !same_set(az[0]->index(), sets[1]) || !same_set(az[1]->index(), sets[2]))
        throw SpaceError("triangle: attribute types disagree");

    TriangleResult r;
    r.tensor_space = compact_tensor_space(x.space()->ring(), sets);
    const std::vector<NormalForm> factors{curry(normalize(embed(x, {0, 1}, sets))),
                                          curry(normalize(embed(y, {0, 2}, sets))),
                                          curry(normalize(embed(z, {1, 2}, sets)))};
    r.metrics.record_trace = record_trace;
    r.curried = multiply_curried(factors, &r.metrics);
    r.rows = count_leaves(r.curried);
    return r;
}

} // namespace polyalg
