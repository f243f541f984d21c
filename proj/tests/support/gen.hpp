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

// Random generators for property tests. Key domains are kept small so that
// sums collide and products meet.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polyalg/relation.hpp"
#include "polyalg/term.hpp"

namespace polyalg::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
    }

    // Integers in -2..2, GF(2) bits, reals in quarter steps (exact sums).
    Scalar scalar(RingKind ring);

    // One of int, str, bool, unit; sums and products while depth > 0.
    PrimSetPtr set(int depth = 1);
    PrimSetPtr atomic_set();
    Value value(const PrimSet& s);

    // Any space. Tensors only while allow_tensor.
    SpacePtr space(RingKind ring, int depth = 2, bool allow_tensor = true);

    // Sum of up to `width` scaled generators, recursing into value spaces.
    Term term(const SpacePtr& s, int width = 3);
    Term generator(const SpacePtr& s, int width);

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

bool inhabited(const PrimSet& s);

// CF[T₀] ⊗ ... (compact) or F[T₀] ⊗ ... with up to 6 tuples per factor.
struct ProductProblem {
    RingKind ring = RingKind::Integer;
    std::vector<PrimSetPtr> sets;
    bool compact = true;
    bool wildcards = false;
    std::vector<Term> factors;
};

ProductProblem product_problem(Gen& g, RingKind ring, bool wildcards);

// Pointwise value of a factor at a concrete tuple: sum over its monomials of
// coefficient times the product of cell matches (1 matches everything).
Scalar pointwise(const Term& factor, const std::vector<Value>& tuple);

// Nested lookup of a curried normal form at a tuple.
Scalar lookup_path(const NormalForm& curried, const std::vector<Value>& tuple);

// A small relation over `schema` with 0..max_rows tuples and coefficients
// drawn from the ring (nonzero for set-like rings).
Relation relation(Gen& g, const Schema& schema, RingKind ring, int max_rows = 6);

} // namespace polyalg::testing
