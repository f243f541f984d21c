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

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyalg/key_trie.hpp"
#include "polyalg/metrics.hpp"
#include "polyalg/term.hpp"

namespace polyalg {

/// Keys of a map normal form. `keys` and the trie slots are in insertion
/// order; `order` lists slots by ascending key.
struct KeyIndex {
    explicit KeyIndex(PrimSetPtr set) : trie(std::move(set)) {}
    KeyTrie trie;
    std::vector<Value> keys;
    std::vector<std::uint32_t> order;
};

/// Canonical form of a module element.
///
///   Scalar                       a ring element
///   Free, CompactFree            trie of keys -> scalar normal forms, plus a
///                                baseline (the coefficient of 1) when compact
///   FinMap, CompactMap           trie of keys -> value normal forms, plus a
///                                baseline (the * entry) when compact
///   Biproduct                    a single pair
///   Tensor                       a compacted list of (u, v) summands
///
/// No stored coefficient or value is zero and no key repeats. The zero
/// element of every space is represented without payload.
class NormalForm {
public:
    struct Rep;

    NormalForm() = default;

    static NormalForm zero(SpacePtr space);
    static NormalForm scalar(Scalar r);

    /// `entries` must be sorted by key, free of duplicates; zero values are
    /// dropped. `baseline` must be zero unless the space is compact.
    static NormalForm map(SpacePtr space, std::vector<std::pair<Value, NormalForm>> entries, NormalForm baseline,
                          Metrics* m = nullptr);
    static NormalForm pair(SpacePtr space, NormalForm first, NormalForm second);
    /// Compacts the summand list (see compact_tensor).
    static NormalForm tensor(SpacePtr space, std::vector<std::pair<NormalForm, NormalForm>> summands);

    bool valid() const { return static_cast<bool>(space_); }
    const SpacePtr& space() const { return space_; }
    bool is_zero() const { return !rep_; }

    /// Scalar space: the ring element (zero when is_zero()).
    Scalar value() const;

    /// Free, CompactFree, FinMap, CompactMap. Entries are in key order.
    std::size_t size() const;
    const Value& key(std::size_t i) const;
    const NormalForm& at(std::size_t i) const;
    /// Explicit entry for `k`, or null when there is none.
    const NormalForm* find(const Value& k, Metrics* m = nullptr) const;
    /// Baseline (zero for non-compact spaces).
    NormalForm baseline() const;
    bool has_baseline() const { return !baseline().is_zero(); }
    const std::shared_ptr<const KeyIndex>& index() const;

    /// Biproduct components.
    NormalForm first() const;
    NormalForm second() const;

    /// Tensor summands.
    const std::vector<std::pair<NormalForm, NormalForm>>& summands() const;

    /// Deterministic rendering. Maps follow their trie's cp structure, e.g.
    /// cp×⁻¹((a ↦ cp₊⁻¹(p ↦ 2, 3 ↦ 1)) + (b ↦ cp₊⁻¹(0, 4 ↦ 1))).
    std::string to_string() const;

    /// The same payload viewed in an isomorphic space of identical layout
    /// (A ⇒ K and F[A], for instance).
    NormalForm respaced(SpacePtr s) const { return NormalForm(std::move(s), rep_); }

    const Rep* rep() const { return rep_.get(); }
    NormalForm(SpacePtr s, std::shared_ptr<const Rep> r) : space_(std::move(s)), rep_(std::move(r)) {}

private:
    SpacePtr space_;
    std::shared_ptr<const Rep> rep_;
};

/// Builds a map normal form over `like`'s keys with new values (indexed by
/// insertion slot, as in like.index()). Reuses the trie when no value is zero.
NormalForm remap(const NormalForm& like, SpacePtr space, std::vector<NormalForm> slot_values, NormalForm baseline);

/// Value space of a map-like space (K for free modules).
SpacePtr value_space(const SpacePtr& map_space);

/// Simplifies a term. Trie edges visited while merging are charged to `m`.
NormalForm normalize(const Term& x, Metrics* m = nullptr);

/// A term denoting the normal form, built from generators only.
Term readback(const NormalForm& x);

NormalForm nf_add(const NormalForm& x, const NormalForm& y);
NormalForm nf_sum(const SpacePtr& space, const std::vector<NormalForm>& xs);
NormalForm nf_scale(const Scalar& r, const NormalForm& x);
NormalForm nf_neg(const NormalForm& x);

/// Structural total order on normal forms of one space.
std::strong_ordering compare(const NormalForm& x, const NormalForm& y);

/// Extensional equality. For spaces without tensors this is structural
/// comparison; tensor spaces are compared in their curried form, where the
/// representation is canonical.
bool equal(const NormalForm& x, const NormalForm& y);
bool equal(const Term& x, const Term& y);

/// Compact maps and compact free modules: baseline plus deviation at `k`;
/// `k` empty means the wildcard and yields the baseline.
NormalForm lookup(const NormalForm& x, const std::optional<Value>& k);

/// One coordinate of a basis cell: a key, the wildcard, or a biproduct side.
struct Cell {
    enum class Kind : std::uint8_t { Key, Wild, First, Second };
    Kind kind = Kind::Key;
    Value value;

    static Cell key_of(Value v) { return Cell{Kind::Key, std::move(v)}; }
    static Cell wild() { return Cell{Kind::Wild, Value()}; }
    static Cell side(bool second) { return Cell{second ? Kind::Second : Kind::First, Value()}; }

    std::string to_string() const;
    friend std::strong_ordering operator<=>(const Cell& a, const Cell& b);
    friend bool operator==(const Cell& a, const Cell& b) { return (a <=> b) == 0; }
};

struct BasisRow {
    std::vector<Cell> cells;
    Scalar coef;
};

/// Full basis expansion in ascending cell order with zero rows removed.
/// Tensors are multiplied out here and nowhere else. Wildcard cells stand
/// for 1 (or * ↦ ·); they are rejected with "infinite support" unless
/// allow_baseline is set.
std::vector<BasisRow> enumerate(const NormalForm& x, bool allow_baseline = false);

/// True when a nonzero baseline occurs anywhere inside.
bool has_any_baseline(const NormalForm& x);

Scalar weight(const NormalForm& x);

/// Tensor-free space isomorphic to `s`, obtained by currying tensors into
/// nested maps: F[A] ⊗ V ≅ A ⇒ V, F*[A] ⊗ V ≅ A ⇒* V, (A ⇒ W) ⊗ V ≅
/// A ⇒ (W ⊗ V), (U₁ ⊕ U₂) ⊗ V ≅ (U₁ ⊗ V) ⊕ (U₂ ⊗ V), K ⊗ V ≅ V and
/// (U₁ ⊗ U₂) ⊗ V ≅ U₁ ⊗ (U₂ ⊗ V). Maps into K are written as free modules.
SpacePtr curried_space(const SpacePtr& s);
NormalForm curry(const NormalForm& x);
NormalForm uncurry(const NormalForm& x, const SpacePtr& target);

} // namespace polyalg
