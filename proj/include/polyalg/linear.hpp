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
#include <optional>
#include <string_view>

#include "polyalg/term.hpp"

namespace polyalg {

/// A linear map given by its action on terms. Maps built here are linear by
/// construction: they are extensions of an action on generators.
struct LinearMap {
    SpacePtr source;
    SpacePtr target;
    std::function<Term(const Term&)> fn;

    Term operator()(const Term& x) const { return fn(x); }
};

/// The unique linear extension of `on_gen` (called with each generator
/// node) to all of x's space: Zero, Add and Scale go to their counterparts
/// in `target`. Mul nodes are normalized first, since a linear map need not
/// preserve products.
Term extend(const Term& x, const SpacePtr& target, const std::function<Term(const Term& gen)>& on_gen);

/// Universal property of F[A] and F*[A]: <a> goes to gen_action(a) and, for
/// compact spaces, 1 goes to wild_action (required when 1 occurs).
Term fold(const Term& x, const SpacePtr& target, const std::function<Term(const Value&)>& gen_action,
          const std::optional<Term>& wild_action = std::nullopt);

/// Universal property of A ⇒ U and A ⇒* U: (a ↦ u) goes to key_action(a, u)
/// and (* ↦ u) to wild_action(u). Both actions must be linear in u.
Term fold_map(const Term& x, const SpacePtr& target, const std::function<Term(const Value&, const Term&)>& key_action,
              const std::function<Term(const Term&)>& wild_action = nullptr);

/// Functorial actions.
///   F[f](<a>) = <f(a)>            F*[f](<a>) = <f(a)>, F*[f](1) = 1
///   (f ⇒ α)(a ↦ u) = f(a) ↦ α(u)  (f ⇒* α)(* ↦ u) = * ↦ α(u)
///   (α ⊗ β)(u ⊗ v) = α(u) ⊗ β(v)
Term free_map(const std::function<Value(const Value&)>& f, const PrimSetPtr& codomain, const Term& x);
Term map_map(const std::function<Value(const Value&)>& f, const PrimSetPtr& codomain, const LinearMap& alpha,
             const Term& x);
Term tensor_map(const LinearMap& alpha, const LinearMap& beta, const Term& x);

LinearMap identity(const SpacePtr& s);

/// sum(a ↦ u) = u on finite maps.
Term sum_over_index(const Term& x);

/// α : U ⊗ (V ⊗ W) → (U ⊗ V) ⊗ W, its inverse, and β : U ⊗ V → V ⊗ U.
Term associator(const Term& x);
Term associator_inv(const Term& x);
Term commutator(const Term& x);

/// The natural isomorphisms between module constructions. `fwd` maps the
/// left-hand space to the right-hand one.
///
///   cp0                    0 ⇒ U ≅ 0 (F[0] stands in for the zero module)
///   cp1                    1 ⇒ U ≅ U
///   cp_sum                 (A + B) ⇒ U ≅ (A ⇒ U) ⊕ (B ⇒ U)
///   cp_prod                (A × B) ⇒ U ≅ A ⇒ B ⇒ U
///   free_unit              F[1] ≅ K
///   free_sum               F[A + B] ≅ F[A] ⊕ F[B]
///   free_prod              F[A × B] ≅ F[A] ⊗ F[B]
///   map_scalar             A ⇒ K ≅ F[A]
///   map_biprod             A ⇒ (U ⊕ V) ≅ (A ⇒ U) ⊕ (A ⇒ V)
///   map_tensor             A ⇒ (U ⊗ V) ≅ (A ⇒ U) ⊗ V
///   copower_tensor         A ⇒ U ≅ F[A] ⊗ U
///   compact_copower_tensor A ⇒* U ≅ F*[A] ⊗ U
///   compact_split          F*[A] ≅ F[A] ⊕ K
///   compactmap_split       A ⇒* U ≅ (A ⇒ U) ⊕ U
enum class Iso : std::uint8_t {
    Cp0,
    Cp1,
    CpSum,
    CpProd,
    FreeUnit,
    FreeSum,
    FreeProd,
    MapScalar,
    MapBiprod,
    MapTensor,
    CopowerTensor,
    CompactCopowerTensor,
    CompactSplit,
    CompactMapSplit,
};

std::string_view iso_name(Iso iso);
Iso parse_iso(std::string_view name);
const std::vector<Iso>& all_isos();

/// Applies the isomorphism (or its inverse when !forward). `target` is
/// needed only where the codomain cannot be read off the input, which is
/// cp0 backwards.
Term apply_iso(Iso iso, bool forward, const Term& x, const SpacePtr& target = nullptr);

/// Codomain of the isomorphism applied to `domain`.
SpacePtr iso_codomain(Iso iso, bool forward, const SpacePtr& domain, const SpacePtr& target = nullptr);

} // namespace polyalg
