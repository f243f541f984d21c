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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyalg/space.hpp"

namespace polyalg {

/// Node tags. Zero, Add and Scale exist in every space; the rest are the
/// generators of particular spaces, plus Mul for a deferred algebra product.
enum class TermKind : std::uint8_t {
    Zero,
    Add,
    Scale,
    One,        // Scalar: the ring unit
    Inj,        // Free, CompactFree: <a>
    WildOne,    // CompactFree: 1
    Pair,       // Biproduct: (u, v)
    MapsTo,     // FinMap, CompactMap: a |-> u
    WildMapsTo, // CompactMap: * |-> u
    TensorPair, // Tensor: u (x) v
    Mul,        // any space: x . y, evaluated on normalization
};

struct TermNode;

/// An immutable symbolic module element. Cheap to copy; subterms are
/// shared. Constructors do no simplification.
class Term {
public:
    Term() = default;

    TermKind kind() const;
    const SpacePtr& space() const;
    const Scalar& scalar() const; // Scale coefficient
    const Value& key() const;     // Inj and MapsTo key
    const Term& a() const;        // first child
    const Term& b() const;        // second child

    bool valid() const { return static_cast<bool>(node_); }
    const TermNode* node() const { return node_.get(); }

    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}

private:
    std::shared_ptr<const TermNode> node_;
};

struct TermNode {
    TermKind kind;
    SpacePtr space;
    std::optional<Scalar> coef;
    Value key;
    Term a, b;
};

// Constructors. All of them are O(1) and check spaces.
Term zero(SpacePtr space);
Term add(const Term& x, const Term& y);
Term sub(const Term& x, const Term& y);
Term neg(const Term& x);
Term scale(const Scalar& r, const Term& x);
Term one(RingKind ring);                         // the generator 1 of K
Term scalar(const Scalar& r);                    // r . 1 in K
Term inject(SpacePtr space, Value a);            // <a> in F[A] or F*[A]
Term wild_one(SpacePtr space);                   // 1 in F*[A]
Term pair(const Term& u, const Term& v);
Term maps_to(SpacePtr space, Value a, const Term& u);
Term wild_maps_to(SpacePtr space, const Term& u);
Term tensor(const Term& u, const Term& v);
Term mul(const Term& x, const Term& y);

/// Sums a list of terms as a balanced tree so that later traversals stay
/// shallow. An empty list gives zero(space).
Term sum_of(SpacePtr space, const std::vector<Term>& terms);

/// Multiplicative unit of an algebra space. Throws SpaceError
/// "no unit in non-compact space" for free modules and finite maps over an
/// infinite index set.
Term unit_one(const SpacePtr& space);

/// Injections into and projections out of a biproduct.
Term inj1(const Term& u, const SpacePtr& biproduct);
Term inj2(const Term& v, const SpacePtr& biproduct);
Term proj1(const Term& x);
Term proj2(const Term& x);

/// Generalized cardinality, computed structurally without normalizing.
/// Mul nodes are the one exception: their weight is that of their value.
Scalar weight(const Term& x);

/// A coefficient together with a generator (or Mul) node.
struct Monomial {
    Scalar coef;
    Term gen;
};

/// Pushes scalars through Add and Scale and returns the generator nodes
/// with their coefficients. Zero nodes and zero coefficients are dropped.
/// Mul nodes are returned as they are.
std::vector<Monomial> flatten(const Term& x);

/// Fully parenthesized rendering, e.g. ((3*<a> + <b>) ⊗ 1). Stable.
std::string to_string(const Term& x);

} // namespace polyalg
