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

#include <vector>

#include "polyalg/metrics.hpp"
#include "polyalg/normal_form.hpp"
#include "polyalg/term.hpp"

namespace polyalg {

/// Joint product of n factors in a common space. Tensor spaces are curried
/// into nested maps first; at every map level one factor enumerates its keys
/// and the others are probed by trie lookup (see multiply_curried).
NormalForm multiply(const std::vector<Term>& factors, Metrics* m = nullptr);
NormalForm multiply_nf(const std::vector<NormalForm>& factors, Metrics* m = nullptr);

/// The product on tensor-free spaces. At a map level with factors v_j
/// (explicit entries d_j, baseline b_j) let Z be the factors without a
/// baseline. The result has baseline prod_j b_j when Z is empty (zero
/// otherwise) and, at a key a,
///
///   prod_j v_j(a) - prod_j b_j     (Z empty)
///   prod_j v_j(a)                  (otherwise, and a must be a key of every factor in Z)
///
/// Keys are drawn from a chain of enumerators: the factor with the fewest
/// components (keys, plus one for a baseline) enumerates; if it has a
/// baseline it leaves the chain and the next pick enumerates the keys it did
/// not hold, until a factor without baseline has been enumerated.
NormalForm multiply_curried(const std::vector<NormalForm>& factors, Metrics* m = nullptr);

/// Evaluates a Mul node (nested Mul nodes form one joint product).
NormalForm evaluate_mul(const Term& mul_node, Metrics* m = nullptr);

/// Product by full distribution: both sides are expanded into sums of
/// sum-free generator trees, every pair is multiplied with the Kronecker
/// rules, and the result is normalized. Each coefficient product is
/// charged as a ring multiplication.
NormalForm naive_multiply(const Term& x, const Term& y, Metrics* m = nullptr);

/// Left-to-right binary folding of naive_multiply.
NormalForm naive_multiply_all(const std::vector<Term>& factors, Metrics* m = nullptr);

/// Right-nested tensor of compact free spaces CF[T₀] ⊗ (CF[T₁] ⊗ ...).
SpacePtr compact_tensor_space(RingKind ring, const std::vector<PrimSetPtr>& sets);

/// Leaf attribute spaces of a tensor tree, left to right.
std::vector<SpacePtr> attribute_spaces(const SpacePtr& s);

/// Reassociates a tensor tree into right-nested form.
Term right_nest(const Term& x);

/// Moves x, a tensor of Free/CompactFree attributes, into
/// compact_tensor_space(target): attribute i of x lands at positions[i]
/// (strictly increasing), free attributes are included into their compact
/// counterparts and the missing positions are filled with 1. Scalars embed
/// as multiples of the unit.
Term embed(const Term& x, const std::vector<std::size_t>& positions, const std::vector<PrimSetPtr>& target);

struct TriangleResult {
    NormalForm curried;   // nested-map form of the product
    SpacePtr tensor_space;
    Metrics metrics;      // counted over the product phase only
    std::size_t rows = 0; // explicit output tuples

    NormalForm as_tensor() const { return uncurry(curried, tensor_space); }
};

/// x ⊆ A×B, y ⊆ A×C, z ⊆ B×C as F[A]⊗F[B], F[A]⊗F[C], F[B]⊗F[C]. All three
/// are embedded into CF[A]⊗CF[B]⊗CF[C] and multiplied jointly.
TriangleResult triangle(const Term& x, const Term& y, const Term& z, bool record_trace = false);

/// Number of nonzero scalar leaves reachable through explicit keys.
std::size_t count_leaves(const NormalForm& x);

} // namespace polyalg
