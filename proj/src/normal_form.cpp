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

#include "polyalg/normal_form.hpp"

#include <algorithm>
#include <numeric>
#include <variant>

#include "polyalg/product.hpp"

namespace polyalg {

struct ScalarRep {
    Scalar value;
};

struct MapRep {
    std::shared_ptr<const KeyIndex> index;
    std::vector<NormalForm> values; // by slot
    NormalForm baseline;            // always valid; zero when absent
};

struct PairRep {
    NormalForm first, second;
};

struct TensorRep {
    std::vector<std::pair<NormalForm, NormalForm>> summands;
};

struct NormalForm::Rep {
    std::variant<ScalarRep, MapRep, PairRep, TensorRep> v;
};

namespace {

const std::vector<std::pair<NormalForm, NormalForm>> kNoSummands;

const MapRep& map_rep(const NormalForm& x) { return std::get<MapRep>(x.rep()->v); }

void require_kind(const NormalForm& x, bool ok, const char* what) {
    if (!x.valid()) throw SpaceError(std::string(what) + ": uninitialized normal form");
    if (!ok) throw SpaceError(std::string(what) + ": not applicable to " + x.space()->to_string());
}

bool map_like(const SpacePtr& s) { return s->is_free_like() || s->is_map_like(); }

SpacePtr mk_map(bool compact, PrimSetPtr index, SpacePtr value) {
    if (value->kind() == Space::Kind::Scalar)
        return compact ? Space::compact_free(value->ring(), std::move(index)) : Space::free(value->ring(), std::move(index));
    return compact ? Space::compact_map(std::move(index), std::move(value)) : Space::fin_map(std::move(index), std::move(value));
}

std::shared_ptr<const NormalForm::Rep> make_rep(auto&& payload) {
    return std::make_shared<const NormalForm::Rep>(NormalForm::Rep{std::forward<decltype(payload)>(payload)});
}

// Builds a map normal form from per-slot values gathered in `index` (whose
// trie maps keys to those slots). Drops zero values; when any were dropped
// the trie is rebuilt without them.
NormalForm finish_map(SpacePtr space, std::shared_ptr<KeyIndex> index, std::vector<NormalForm> values, NormalForm baseline,
                      Metrics* m) {
    if (!baseline.valid()) baseline = NormalForm::zero(value_space(space));
    const bool any_zero = std::any_of(values.begin(), values.end(), [](const NormalForm& v) { return v.is_zero(); });
    if (any_zero || index->order.size() != values.size()) {
        index->order.clear();
        index->trie.for_each([&](const Value&, std::uint32_t s) { index->order.push_back(s); });
    }
    if (any_zero) {
        std::vector<std::pair<Value, NormalForm>> entries;
        for (auto s : index->order)
            if (!values[s].is_zero()) entries.emplace_back(index->keys[s], std::move(values[s]));
        return NormalForm::map(std::move(space), std::move(entries), std::move(baseline), m);
    }
    if (values.empty() && baseline.is_zero()) return NormalForm::zero(std::move(space));
    return NormalForm(std::move(space), make_rep(MapRep{std::move(index), std::move(values), std::move(baseline)}));
}

} // namespace

// ---------------------------------------------------------------------------
// Construction and access

NormalForm NormalForm::zero(SpacePtr space) {
    if (!space) throw SpaceError("zero normal form without a space");
    return NormalForm(std::move(space), nullptr);
}

NormalForm NormalForm::scalar(Scalar r) {
    SpacePtr s = Space::scalar(r.ring());
    if (r.is_zero()) return NormalForm(std::move(s), nullptr);
    return NormalForm(std::move(s), make_rep(ScalarRep{std::move(r)}));
}

NormalForm NormalForm::map(SpacePtr space, std::vector<std::pair<Value, NormalForm>> entries, NormalForm baseline,
                           Metrics* m) {
    if (!space || !map_like(space)) throw SpaceError("map normal form over a non-map space");
    if (!baseline.valid()) baseline = NormalForm::zero(value_space(space));
    if (!baseline.is_zero() && !space->is_compact_kind())
        throw SpaceError("baseline in non-compact space " + space->to_string());
    auto index = std::make_shared<KeyIndex>(space->index());
    std::vector<NormalForm> values;
    values.reserve(entries.size());
    for (auto& [k, v] : entries) {
        if (v.is_zero()) continue;
        const auto slot = static_cast<std::uint32_t>(index->keys.size());
        if (index->trie.insert(k, slot, m) != slot) throw SpaceError("duplicate key " + k.to_string() + " in map");
        if (!index->keys.empty() && !(index->keys.back() < k)) throw SpaceError("map entries out of order");
        index->keys.push_back(std::move(k));
        index->order.push_back(slot);
        values.push_back(std::move(v));
    }
    if (values.empty() && baseline.is_zero()) return zero(std::move(space));
    return NormalForm(std::move(space), make_rep(MapRep{std::move(index), std::move(values), std::move(baseline)}));
}

NormalForm NormalForm::pair(SpacePtr space, NormalForm first, NormalForm second) {
    if (!space || space->kind() != Space::Kind::Biproduct) throw SpaceError("pair normal form over a non-biproduct");
    if (!first.valid()) first = zero(space->first());
    if (!second.valid()) second = zero(space->second());
    if (first.is_zero() && second.is_zero()) return zero(std::move(space));
    return NormalForm(std::move(space), make_rep(PairRep{std::move(first), std::move(second)}));
}

Scalar NormalForm::value() const {
    require_kind(*this, space_->kind() == Space::Kind::Scalar, "value");
    if (!rep_) return Scalar::zero(space_->ring());
    return std::get<ScalarRep>(rep_->v).value;
}

std::size_t NormalForm::size() const {
    require_kind(*this, map_like(space_), "size");
    return rep_ ? map_rep(*this).index->order.size() : 0;
}

const Value& NormalForm::key(std::size_t i) const {
    const auto& r = map_rep(*this);
    return r.index->keys[r.index->order[i]];
}

const NormalForm& NormalForm::at(std::size_t i) const {
    const auto& r = map_rep(*this);
    return r.values[r.index->order[i]];
}

const NormalForm* NormalForm::find(const Value& k, Metrics* m) const {
    require_kind(*this, map_like(space_), "find");
    if (!rep_) return nullptr;
    const auto& r = map_rep(*this);
    const auto slot = r.index->trie.find(k, m);
    return slot == KeyTrie::npos ? nullptr : &r.values[slot];
}

NormalForm NormalForm::baseline() const {
    require_kind(*this, map_like(space_), "baseline");
    if (!rep_) return zero(value_space(space_));
    return map_rep(*this).baseline;
}

const std::shared_ptr<const KeyIndex>& NormalForm::index() const {
    static const std::shared_ptr<const KeyIndex> none;
    require_kind(*this, map_like(space_), "index");
    return rep_ ? map_rep(*this).index : none;
}

NormalForm NormalForm::first() const {
    require_kind(*this, space_->kind() == Space::Kind::Biproduct, "first");
    if (!rep_) return zero(space_->first());
    return std::get<PairRep>(rep_->v).first;
}

NormalForm NormalForm::second() const {
    require_kind(*this, space_->kind() == Space::Kind::Biproduct, "second");
    if (!rep_) return zero(space_->second());
    return std::get<PairRep>(rep_->v).second;
}

const std::vector<std::pair<NormalForm, NormalForm>>& NormalForm::summands() const {
    require_kind(*this, space_->kind() == Space::Kind::Tensor, "summands");
    if (!rep_) return kNoSummands;
    return std::get<TensorRep>(rep_->v).summands;
}

SpacePtr value_space(const SpacePtr& s) {
    if (s->is_free_like()) return Space::scalar(s->ring());
    if (s->is_map_like()) return s->value();
    throw SpaceError("not a map space: " + s->to_string());
}

NormalForm remap(const NormalForm& like, SpacePtr space, std::vector<NormalForm> slot_values, NormalForm baseline) {
    if (!baseline.valid()) baseline = NormalForm::zero(value_space(space));
    if (like.is_zero()) {
        if (baseline.is_zero()) return NormalForm::zero(std::move(space));
        return NormalForm::map(std::move(space), {}, std::move(baseline));
    }
    // Share the index: cast away const only to hand it to finish_map, which
    // does not modify an index whose values are all nonzero.
    const auto& idx = like.index();
    const bool any_zero =
        std::any_of(slot_values.begin(), slot_values.end(), [](const NormalForm& v) { return v.is_zero(); });
    if (!any_zero) {
        if (slot_values.empty() && baseline.is_zero()) return NormalForm::zero(std::move(space));
        return NormalForm(std::move(space), make_rep(MapRep{idx, std::move(slot_values), std::move(baseline)}));
    }
    std::vector<std::pair<Value, NormalForm>> entries;
    for (auto s : idx->order)
        if (!slot_values[s].is_zero()) entries.emplace_back(idx->keys[s], std::move(slot_values[s]));
    return NormalForm::map(std::move(space), std::move(entries), std::move(baseline));
}

// ---------------------------------------------------------------------------
// Ordering

std::strong_ordering compare(const NormalForm& x, const NormalForm& y) {
    if (x.is_zero() || y.is_zero()) return !x.is_zero() <=> !y.is_zero();
    if (x.rep() == y.rep()) return std::strong_ordering::equal;
    switch (x.space()->kind()) {
    case Space::Kind::Scalar: return compare(x.value(), y.value());
    case Space::Kind::Free:
    case Space::Kind::CompactFree:
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        const std::size_t n = std::min(x.size(), y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (auto c = x.key(i) <=> y.key(i); c != 0) return c;
            if (auto c = compare(x.at(i), y.at(i)); c != 0) return c;
        }
        if (x.size() != y.size()) return x.size() <=> y.size();
        return compare(x.baseline(), y.baseline());
    }
    case Space::Kind::Biproduct: {
        if (auto c = compare(x.first(), y.first()); c != 0) return c;
        return compare(x.second(), y.second());
    }
    case Space::Kind::Tensor: {
        const auto& a = x.summands();
        const auto& b = y.summands();
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (auto c = compare(a[i].first, b[i].first); c != 0) return c;
            if (auto c = compare(a[i].second, b[i].second); c != 0) return c;
        }
        return a.size() <=> b.size();
    }
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Tensor compaction

namespace {

using Summands = std::vector<std::pair<NormalForm, NormalForm>>;

void drop_zero_summands(Summands& s) {
    std::erase_if(s, [](const auto& p) { return p.first.is_zero() || p.second.is_zero(); });
}

// Merges summands whose `right` (or left) factor is equal by adding the other
// factor. Returns whether anything merged.
bool group_by(Summands& s, bool by_right) {
    if (s.size() < 2) return false;
    auto key = [by_right](const auto& p) -> const NormalForm& { return by_right ? p.second : p.first; };
    auto other = [by_right](const auto& p) -> const NormalForm& { return by_right ? p.first : p.second; };
    std::stable_sort(s.begin(), s.end(), [&](const auto& a, const auto& b) { return compare(key(a), key(b)) < 0; });
    Summands out;
    bool merged = false;
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i + 1;
        while (j < s.size() && compare(key(s[i]), key(s[j])) == 0) ++j;
        if (j - i == 1) {
            out.push_back(std::move(s[i]));
        } else {
            merged = true;
            std::vector<NormalForm> parts;
            for (std::size_t k = i; k < j; ++k) parts.push_back(other(s[k]));
            NormalForm sum = nf_sum(other(s[i]).space(), parts);
            if (!sum.is_zero()) {
                if (by_right)
                    out.emplace_back(std::move(sum), s[i].second);
                else
                    out.emplace_back(s[i].first, std::move(sum));
            }
        }
        i = j;
    }
    s = std::move(out);
    return merged;
}

} // namespace

NormalForm NormalForm::tensor(SpacePtr space, std::vector<std::pair<NormalForm, NormalForm>> summands) {
    if (!space || space->kind() != Space::Kind::Tensor) throw SpaceError("tensor normal form over a non-tensor");
    drop_zero_summands(summands);
    // Alternate the two groupings until neither merges anything.
    for (;;) {
        const bool a = group_by(summands, true);
        const bool b = group_by(summands, false);
        if (!a && !b) break;
    }
    std::sort(summands.begin(), summands.end(), [](const auto& p, const auto& q) {
        if (auto c = compare(p.first, q.first); c != 0) return c < 0;
        return compare(p.second, q.second) < 0;
    });
    if (summands.empty()) return zero(std::move(space));
    return NormalForm(std::move(space), make_rep(TensorRep{std::move(summands)}));
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

struct Item {
    Scalar coef;
    Term term;     // a term to flatten, or
    NormalForm nf; // an already normal summand
};

class Normalizer {
public:
    explicit Normalizer(Metrics* m) : m_(m) {}

    NormalForm build(const SpacePtr& space, std::vector<Item> items) {
        std::vector<Item> gens = expand(std::move(items));
        switch (space->kind()) {
        case Space::Kind::Scalar: return build_scalar(space, gens);
        case Space::Kind::Free:
        case Space::Kind::CompactFree: return build_free(space, gens);
        case Space::Kind::FinMap:
        case Space::Kind::CompactMap: return build_map(space, gens);
        case Space::Kind::Biproduct: return build_pair(space, gens);
        case Space::Kind::Tensor: return build_tensor(space, gens);
        }
        throw SpaceError("normalize: unknown space");
    }

private:
    // Flattens term items to generator items; Mul nodes are evaluated.
    std::vector<Item> expand(std::vector<Item> items) {
        std::vector<Item> out;
        out.reserve(items.size());
        for (auto& it : items) {
            if (it.nf.valid()) {
                if (!it.nf.is_zero() && !it.coef.is_zero()) out.push_back(std::move(it));
                continue;
            }
            for (auto& mono : flatten(it.term)) {
                Scalar c = it.coef * mono.coef;
                if (c.is_zero()) continue;
                if (mono.gen.kind() == TermKind::Mul) {
                    NormalForm v = evaluate_mul(mono.gen, m_);
                    if (!v.is_zero()) out.push_back(Item{std::move(c), Term(), std::move(v)});
                } else {
                    out.push_back(Item{std::move(c), std::move(mono.gen), NormalForm()});
                }
            }
        }
        return out;
    }

    NormalForm build_scalar(const SpacePtr& space, const std::vector<Item>& gens) {
        Scalar acc = Scalar::zero(space->ring());
        for (auto& it : gens) {
            if (it.nf.valid())
                acc += it.coef * it.nf.value();
            else
                acc += it.coef;
        }
        return NormalForm::scalar(std::move(acc));
    }

    std::uint32_t slot_for(KeyIndex& idx, const Value& k) {
        const auto fresh = static_cast<std::uint32_t>(idx.keys.size());
        const auto s = idx.trie.insert(k, fresh, m_);
        if (s == fresh) idx.keys.push_back(k);
        return s;
    }

    NormalForm build_free(const SpacePtr& space, const std::vector<Item>& gens) {
        const RingKind ring = space->ring();
        auto idx = std::make_shared<KeyIndex>(space->index());
        std::vector<Scalar> acc;
        Scalar base = Scalar::zero(ring);
        auto add_at = [&](const Value& k, const Scalar& c) {
            const auto s = slot_for(*idx, k);
            if (s == acc.size()) acc.push_back(Scalar::zero(ring));
            acc[s] += c;
        };
        for (auto& it : gens) {
            if (it.nf.valid()) {
                const auto& r = map_rep(it.nf);
                for (auto s : r.index->order) add_at(r.index->keys[s], it.coef * r.values[s].value());
                base += it.coef * r.baseline.value();
            } else if (it.term.kind() == TermKind::Inj) {
                add_at(it.term.key(), it.coef);
            } else {
                base += it.coef; // WildOne
            }
        }
        std::vector<NormalForm> values;
        values.reserve(acc.size());
        for (auto& c : acc) values.push_back(NormalForm::scalar(std::move(c)));
        return finish_map(space, std::move(idx), std::move(values), NormalForm::scalar(std::move(base)), m_);
    }

    NormalForm build_map(const SpacePtr& space, std::vector<Item>& gens) {
        auto idx = std::make_shared<KeyIndex>(space->index());
        std::vector<std::vector<Item>> buckets;
        std::vector<Item> base;
        auto push_at = [&](const Value& k, Item item) {
            const auto s = slot_for(*idx, k);
            if (s == buckets.size()) buckets.emplace_back();
            buckets[s].push_back(std::move(item));
        };
        for (auto& it : gens) {
            if (it.nf.valid()) {
                const auto& r = map_rep(it.nf);
                for (auto s : r.index->order) push_at(r.index->keys[s], Item{it.coef, Term(), r.values[s]});
                if (!r.baseline.is_zero()) base.push_back(Item{it.coef, Term(), r.baseline});
            } else if (it.term.kind() == TermKind::MapsTo) {
                push_at(it.term.key(), Item{it.coef, it.term.a(), NormalForm()});
            } else {
                base.push_back(Item{it.coef, it.term.a(), NormalForm()}); // WildMapsTo
            }
        }
        const SpacePtr& vs = space->value();
        std::vector<NormalForm> values;
        values.reserve(buckets.size());
        for (auto& b : buckets) values.push_back(build(vs, std::move(b)));
        NormalForm baseline = base.empty() ? NormalForm::zero(vs) : build(vs, std::move(base));
        return finish_map(space, std::move(idx), std::move(values), std::move(baseline), m_);
    }

    NormalForm build_pair(const SpacePtr& space, std::vector<Item>& gens) {
        std::vector<Item> left, right;
        for (auto& it : gens) {
            if (it.nf.valid()) {
                const auto& r = std::get<PairRep>(it.nf.rep()->v);
                if (!r.first.is_zero()) left.push_back(Item{it.coef, Term(), r.first});
                if (!r.second.is_zero()) right.push_back(Item{it.coef, Term(), r.second});
            } else {
                left.push_back(Item{it.coef, it.term.a(), NormalForm()});
                right.push_back(Item{it.coef, it.term.b(), NormalForm()});
            }
        }
        return NormalForm::pair(space, build(space->first(), std::move(left)), build(space->second(), std::move(right)));
    }

    NormalForm build_tensor(const SpacePtr& space, std::vector<Item>& gens) {
        Summands summands;
        for (auto& it : gens) {
            if (it.nf.valid()) {
                for (auto& [u, v] : it.nf.summands()) summands.emplace_back(nf_scale(it.coef, u), v);
            } else {
                std::vector<Item> l, r;
                l.push_back(Item{it.coef, it.term.a(), NormalForm()});
                r.push_back(Item{Scalar::one(space->ring()), it.term.b(), NormalForm()});
                NormalForm u = build(space->first(), std::move(l));
                if (u.is_zero()) continue;
                NormalForm v = build(space->second(), std::move(r));
                if (v.is_zero()) continue;
                summands.emplace_back(std::move(u), std::move(v));
            }
        }
        return NormalForm::tensor(space, std::move(summands));
    }

    Metrics* m_;
};

} // namespace

NormalForm normalize(const Term& x, Metrics* m) {
    if (!x.valid()) throw SpaceError("normalize: uninitialized term");
    std::vector<Item> items;
    items.push_back(Item{Scalar::one(x.space()->ring()), x, NormalForm()});
    return Normalizer(m).build(x.space(), std::move(items));
}

NormalForm nf_sum(const SpacePtr& space, const std::vector<NormalForm>& xs) {
    std::vector<Item> items;
    for (auto& x : xs) {
        require_same_space(space, x.space(), "nf_sum");
        if (!x.is_zero()) items.push_back(Item{Scalar::one(space->ring()), Term(), x});
    }
    if (items.empty()) return NormalForm::zero(space);
    if (items.size() == 1) return items.front().nf;
    return Normalizer(nullptr).build(space, std::move(items));
}

NormalForm nf_add(const NormalForm& x, const NormalForm& y) { return nf_sum(x.space(), {x, y}); }

NormalForm nf_scale(const Scalar& r, const NormalForm& x) {
    if (x.is_zero() || r.is_one()) return x;
    if (r.is_zero()) return NormalForm::zero(x.space());
    switch (x.space()->kind()) {
    case Space::Kind::Scalar: return NormalForm::scalar(r * x.value());
    case Space::Kind::Free:
    case Space::Kind::CompactFree:
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        const auto& rep = map_rep(x);
        std::vector<NormalForm> vals;
        vals.reserve(rep.values.size());
        for (auto& v : rep.values) vals.push_back(nf_scale(r, v));
        return remap(x, x.space(), std::move(vals), nf_scale(r, rep.baseline));
    }
    case Space::Kind::Biproduct: return NormalForm::pair(x.space(), nf_scale(r, x.first()), nf_scale(r, x.second()));
    case Space::Kind::Tensor: {
        Summands s;
        for (auto& [u, v] : x.summands()) s.emplace_back(nf_scale(r, u), v);
        return NormalForm::tensor(x.space(), std::move(s));
    }
    }
    return x;
}

NormalForm nf_neg(const NormalForm& x) { return nf_scale(-Scalar::one(x.space()->ring()), x); }

// ---------------------------------------------------------------------------
// Readback, lookup, weight

Term readback(const NormalForm& x) {
    const SpacePtr& s = x.space();
    if (x.is_zero()) return zero(s);
    auto scaled = [](const Scalar& c, Term t) { return c.is_one() ? t : scale(c, std::move(t)); };
    switch (s->kind()) {
    case Space::Kind::Scalar: return scaled(x.value(), one(s->ring()));
    case Space::Kind::Free:
    case Space::Kind::CompactFree: {
        std::vector<Term> parts;
        for (std::size_t i = 0; i < x.size(); ++i) parts.push_back(scaled(x.at(i).value(), inject(s, x.key(i))));
        const NormalForm b = x.baseline();
        if (!b.is_zero()) parts.push_back(scaled(b.value(), wild_one(s)));
        return sum_of(s, parts);
    }
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        std::vector<Term> parts;
        for (std::size_t i = 0; i < x.size(); ++i) parts.push_back(maps_to(s, x.key(i), readback(x.at(i))));
        const NormalForm b = x.baseline();
        if (!b.is_zero()) parts.push_back(wild_maps_to(s, readback(b)));
        return sum_of(s, parts);
    }
    case Space::Kind::Biproduct: {
        Term p = pair(readback(x.first()), readback(x.second()));
        return p;
    }
    case Space::Kind::Tensor: {
        std::vector<Term> parts;
        for (auto& [u, v] : x.summands()) parts.push_back(tensor(readback(u), readback(v)));
        return sum_of(s, parts);
    }
    }
    return zero(s);
}

NormalForm lookup(const NormalForm& x, const std::optional<Value>& k) {
    require_kind(x, map_like(x.space()), "lookup");
    NormalForm base = x.baseline();
    if (!k) return base;
    const NormalForm* dev = x.find(*k);
    if (!dev) return base;
    if (base.is_zero()) return *dev;
    return nf_add(base, *dev);
}

Scalar weight(const NormalForm& x) {
    const RingKind ring = x.space()->ring();
    Scalar w = Scalar::zero(ring);
    if (x.is_zero()) return w;
    switch (x.space()->kind()) {
    case Space::Kind::Scalar: return x.value();
    case Space::Kind::Free:
    case Space::Kind::CompactFree:
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap:
        for (std::size_t i = 0; i < x.size(); ++i) w += weight(x.at(i));
        return w + weight(x.baseline());
    case Space::Kind::Biproduct: return weight(x.first()) + weight(x.second());
    case Space::Kind::Tensor:
        for (auto& [u, v] : x.summands()) w += weight(u) * weight(v);
        return w;
    }
    return w;
}

bool has_any_baseline(const NormalForm& x) {
    if (x.is_zero()) return false;
    switch (x.space()->kind()) {
    case Space::Kind::Scalar: return false;
    case Space::Kind::Free: return false;
    case Space::Kind::CompactFree: return x.has_baseline();
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap:
        if (x.has_baseline()) return true;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (has_any_baseline(x.at(i))) return true;
        return false;
    case Space::Kind::Biproduct: return has_any_baseline(x.first()) || has_any_baseline(x.second());
    case Space::Kind::Tensor:
        for (auto& [u, v] : x.summands())
            if (has_any_baseline(u) || has_any_baseline(v)) return true;
        return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Basis expansion

std::string Cell::to_string() const {
    switch (kind) {
    case Kind::Key: return value.to_string();
    case Kind::Wild: return "*";
    case Kind::First: return "#1";
    case Kind::Second: return "#2";
    }
    return "?";
}

std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
    if (a.kind == Cell::Kind::Key) return a.value <=> b.value;
    return std::strong_ordering::equal;
}

namespace {

void expand_rows(const NormalForm& x, std::vector<Cell>& prefix, const Scalar& coef, bool allow,
                 std::vector<BasisRow>& out) {
    if (x.is_zero()) return;
    auto no_wild = [&]() {
        if (!allow) throw SpaceError("infinite support: a wildcard baseline is present");
    };
    switch (x.space()->kind()) {
    case Space::Kind::Scalar: out.push_back(BasisRow{prefix, coef * x.value()}); return;
    case Space::Kind::Free:
    case Space::Kind::CompactFree:
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        for (std::size_t i = 0; i < x.size(); ++i) {
            prefix.push_back(Cell::key_of(x.key(i)));
            expand_rows(x.at(i), prefix, coef, allow, out);
            prefix.pop_back();
        }
        const NormalForm b = x.baseline();
        if (!b.is_zero()) {
            no_wild();
            prefix.push_back(Cell::wild());
            expand_rows(b, prefix, coef, allow, out);
            prefix.pop_back();
        }
        return;
    }
    case Space::Kind::Biproduct:
        prefix.push_back(Cell::side(false));
        expand_rows(x.first(), prefix, coef, allow, out);
        prefix.back() = Cell::side(true);
        expand_rows(x.second(), prefix, coef, allow, out);
        prefix.pop_back();
        return;
    case Space::Kind::Tensor: {
        const Scalar unit = Scalar::one(x.space()->ring());
        for (auto& [u, v] : x.summands()) {
            std::vector<BasisRow> left, right;
            std::vector<Cell> empty;
            expand_rows(u, empty, unit, allow, left);
            expand_rows(v, empty, unit, allow, right);
            for (auto& l : left)
                for (auto& r : right) {
                    std::vector<Cell> cells = prefix;
                    cells.insert(cells.end(), l.cells.begin(), l.cells.end());
                    cells.insert(cells.end(), r.cells.begin(), r.cells.end());
                    out.push_back(BasisRow{std::move(cells), coef * l.coef * r.coef});
                }
        }
        return;
    }
    }
}

} // namespace

std::vector<BasisRow> enumerate(const NormalForm& x, bool allow_baseline) {
    std::vector<BasisRow> rows;
    std::vector<Cell> prefix;
    expand_rows(x, prefix, Scalar::one(x.space()->ring()), allow_baseline, rows);
    if (!x.space()->contains_tensor()) return rows;
    std::stable_sort(rows.begin(), rows.end(), [](const BasisRow& a, const BasisRow& b) { return a.cells < b.cells; });
    std::vector<BasisRow> merged;
    for (auto& r : rows) {
        if (!merged.empty() && merged.back().cells == r.cells)
            merged.back().coef += r.coef;
        else
            merged.push_back(std::move(r));
    }
    std::erase_if(merged, [](const BasisRow& r) { return r.coef.is_zero(); });
    return merged;
}

// ---------------------------------------------------------------------------
// Currying tensors into nested maps

namespace {

SpacePtr tensor_curried_space(const SpacePtr& u, const SpacePtr& v) {
    switch (u->kind()) {
    case Space::Kind::Scalar: return curried_space(v);
    case Space::Kind::Free: return mk_map(false, u->index(), curried_space(v));
    case Space::Kind::CompactFree: return mk_map(true, u->index(), curried_space(v));
    case Space::Kind::FinMap: return mk_map(false, u->index(), tensor_curried_space(u->value(), v));
    case Space::Kind::CompactMap: return mk_map(true, u->index(), tensor_curried_space(u->value(), v));
    case Space::Kind::Biproduct:
        return Space::biproduct(tensor_curried_space(u->first(), v), tensor_curried_space(u->second(), v));
    case Space::Kind::Tensor: return tensor_curried_space(u->first(), Space::tensor(u->second(), v));
    }
    throw SpaceError("curry: unknown space");
}

NormalForm curry_tensor(const NormalForm& u, const NormalForm& v, const SpacePtr& target) {
    if (u.is_zero() || v.is_zero()) return NormalForm::zero(target);
    const SpacePtr& us = u.space();
    switch (us->kind()) {
    case Space::Kind::Scalar: return nf_scale(u.value(), curry(v));
    case Space::Kind::Free:
    case Space::Kind::CompactFree: {
        const NormalForm cv = curry(v);
        const auto& r = map_rep(u);
        std::vector<NormalForm> vals;
        vals.reserve(r.values.size());
        for (auto& c : r.values) vals.push_back(nf_scale(c.value(), cv));
        return remap(u, target, std::move(vals), nf_scale(r.baseline.value(), cv));
    }
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        const auto& r = map_rep(u);
        const SpacePtr& vt = value_space(target);
        std::vector<NormalForm> vals;
        vals.reserve(r.values.size());
        for (auto& w : r.values) vals.push_back(curry_tensor(w, v, vt));
        return remap(u, target, std::move(vals), curry_tensor(r.baseline, v, vt));
    }
    case Space::Kind::Biproduct:
        return NormalForm::pair(target, curry_tensor(u.first(), v, target->first()),
                                curry_tensor(u.second(), v, target->second()));
    case Space::Kind::Tensor: {
        const SpacePtr rest = Space::tensor(us->second(), v.space());
        std::vector<NormalForm> parts;
        for (auto& [p, q] : u.summands()) parts.push_back(curry_tensor(p, NormalForm::tensor(rest, {{q, v}}), target));
        return nf_sum(target, parts);
    }
    }
    throw SpaceError("curry: unknown space");
}

NormalForm single_key(const SpacePtr& space, const Value& k, NormalForm value) {
    std::vector<std::pair<Value, NormalForm>> e;
    e.emplace_back(k, std::move(value));
    return NormalForm::map(space, std::move(e), NormalForm());
}

NormalForm baseline_only(const SpacePtr& space, NormalForm value) {
    return NormalForm::map(space, {}, std::move(value));
}

void uncurry_tensor(const NormalForm& w, const SpacePtr& u, const SpacePtr& v, Summands& out) {
    if (w.is_zero()) return;
    const RingKind ring = u->ring();
    switch (u->kind()) {
    case Space::Kind::Scalar: out.emplace_back(NormalForm::scalar(Scalar::one(ring)), uncurry(w, v)); return;
    case Space::Kind::Free:
    case Space::Kind::CompactFree: {
        const NormalForm unit = NormalForm::scalar(Scalar::one(ring));
        for (std::size_t i = 0; i < w.size(); ++i) out.emplace_back(single_key(u, w.key(i), unit), uncurry(w.at(i), v));
        const NormalForm b = w.baseline();
        if (!b.is_zero()) out.emplace_back(baseline_only(u, unit), uncurry(b, v));
        return;
    }
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        for (std::size_t i = 0; i < w.size(); ++i) {
            Summands inner;
            uncurry_tensor(w.at(i), u->value(), v, inner);
            for (auto& [p, q] : inner) out.emplace_back(single_key(u, w.key(i), std::move(p)), std::move(q));
        }
        const NormalForm b = w.baseline();
        if (!b.is_zero()) {
            Summands inner;
            uncurry_tensor(b, u->value(), v, inner);
            for (auto& [p, q] : inner) out.emplace_back(baseline_only(u, std::move(p)), std::move(q));
        }
        return;
    }
    case Space::Kind::Biproduct: {
        Summands a, b;
        uncurry_tensor(w.first(), u->first(), v, a);
        uncurry_tensor(w.second(), u->second(), v, b);
        for (auto& [p, q] : a) out.emplace_back(NormalForm::pair(u, std::move(p), NormalForm()), std::move(q));
        for (auto& [p, q] : b) out.emplace_back(NormalForm::pair(u, NormalForm(), std::move(p)), std::move(q));
        return;
    }
    case Space::Kind::Tensor: {
        Summands outer;
        uncurry_tensor(w, u->first(), Space::tensor(u->second(), v), outer);
        for (auto& [p, r] : outer)
            for (auto& [s, t] : r.summands()) out.emplace_back(NormalForm::tensor(u, {{p, s}}), t);
        return;
    }
    }
}

} // namespace

SpacePtr curried_space(const SpacePtr& s) {
    switch (s->kind()) {
    case Space::Kind::Scalar:
    case Space::Kind::Free:
    case Space::Kind::CompactFree: return s;
    case Space::Kind::FinMap: return mk_map(false, s->index(), curried_space(s->value()));
    case Space::Kind::CompactMap: return mk_map(true, s->index(), curried_space(s->value()));
    case Space::Kind::Biproduct: return Space::biproduct(curried_space(s->first()), curried_space(s->second()));
    case Space::Kind::Tensor: return tensor_curried_space(s->first(), s->second());
    }
    throw SpaceError("curry: unknown space");
}

NormalForm curry(const NormalForm& x) {
    const SpacePtr& s = x.space();
    const SpacePtr t = curried_space(s);
    if (same_space(s, t)) return x;
    if (x.is_zero()) return NormalForm::zero(t);
    switch (s->kind()) {
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        if (s->value()->kind() == Space::Kind::Scalar) return x.respaced(t); // A ⇒ K is F[A]
        const auto& r = map_rep(x);
        std::vector<NormalForm> vals;
        vals.reserve(r.values.size());
        for (auto& v : r.values) vals.push_back(curry(v));
        return remap(x, t, std::move(vals), curry(r.baseline));
    }
    case Space::Kind::Biproduct: return NormalForm::pair(t, curry(x.first()), curry(x.second()));
    case Space::Kind::Tensor: {
        std::vector<NormalForm> parts;
        for (auto& [u, v] : x.summands()) parts.push_back(curry_tensor(u, v, t));
        return nf_sum(t, parts);
    }
    default: return x.respaced(t);
    }
}

NormalForm uncurry(const NormalForm& x, const SpacePtr& target) {
    if (same_space(x.space(), target)) return x;
    if (x.is_zero()) return NormalForm::zero(target);
    switch (target->kind()) {
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        if (target->value()->kind() == Space::Kind::Scalar) return x.respaced(target);
        const auto& r = map_rep(x);
        std::vector<NormalForm> vals;
        vals.reserve(r.values.size());
        for (auto& v : r.values) vals.push_back(uncurry(v, target->value()));
        return remap(x, target, std::move(vals), uncurry(r.baseline, target->value()));
    }
    case Space::Kind::Biproduct:
        return NormalForm::pair(target, uncurry(x.first(), target->first()), uncurry(x.second(), target->second()));
    case Space::Kind::Tensor: {
        Summands s;
        uncurry_tensor(x, target->first(), target->second(), s);
        return NormalForm::tensor(target, std::move(s));
    }
    default: return x.respaced(target);
    }
}

} // namespace polyalg

namespace polyalg {

bool equal(const NormalForm& x, const NormalForm& y) {
    require_same_space(x.space(), y.space(), "equal");
    if (!x.space()->contains_tensor()) return compare(x, y) == 0;
    if (compare(x, y) == 0) return true;
    return compare(curry(x), curry(y)) == 0;
}

bool equal(const Term& x, const Term& y) {
    require_same_space(x.space(), y.space(), "equal");
    return equal(normalize(x), normalize(y));
}

namespace {

struct Rendered {
    std::string text;
    bool atomic;
};

std::string wrap(const Rendered& r) { return r.atomic ? r.text : "(" + r.text + ")"; }

Rendered render(const NormalForm& x) {
    if (x.is_zero()) return {"0", true};
    const SpacePtr& s = x.space();
    switch (s->kind()) {
    case Space::Kind::Scalar: return {x.value().to_string(), true};
    case Space::Kind::Free:
    case Space::Kind::CompactFree: {
        std::vector<std::string> parts;
        auto term = [](const Scalar& c, const std::string& g) { return c.is_one() ? g : c.to_string() + "*" + g; };
        for (std::size_t i = 0; i < x.size(); ++i) parts.push_back(term(x.at(i).value(), "<" + x.key(i).to_string() + ">"));
        if (x.has_baseline()) parts.push_back(term(x.baseline().value(), "1"));
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
        return {out, parts.size() == 1};
    }
    case Space::Kind::FinMap:
    case Space::Kind::CompactMap: {
        const auto& r = map_rep(x);
        std::string out;
        bool atomic = true;
        const auto k = s->index()->kind();
        const bool cp_wrapped = k == PrimSet::Kind::Unit || k == PrimSet::Kind::Sum || k == PrimSet::Kind::Prod;
        if (!r.values.empty()) {
            out = r.index->trie.render([&](std::uint32_t slot) { return wrap(render(r.values[slot])); });
            atomic = r.values.size() == 1 || cp_wrapped;
        }
        if (!r.baseline.is_zero()) {
            const std::string wild = "* ↦ " + wrap(render(r.baseline));
            if (out.empty()) return {wild, true};
            if (r.values.size() == 1 && !cp_wrapped) out = "(" + out + ")";
            out += " + (" + wild + ")";
            atomic = false;
        }
        return {out, atomic};
    }
    case Space::Kind::Biproduct: return {"(" + render(x.first()).text + ", " + render(x.second()).text + ")", true};
    case Space::Kind::Tensor: {
        std::string out;
        const auto& sm = x.summands();
        for (std::size_t i = 0; i < sm.size(); ++i)
            out += (i ? " + " : "") + wrap(render(sm[i].first)) + " ⊗ " + wrap(render(sm[i].second));
        return {out, false};
    }
    }
    return {"?", true};
}

} // namespace

std::string NormalForm::to_string() const { return render(*this).text; }

} // namespace polyalg
