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

// Randomized law checks shared by the unit tests and the acceptance runner.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyalg/linear.hpp"
#include "polyalg/ring.hpp"

namespace polyalg::testing {

struct LawReport {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0 && cases > 0; }
    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
};

LawReport ring_axioms(RingKind ring, int cases, std::uint64_t seed);
LawReport module_laws(RingKind ring, int cases, std::uint64_t seed);
LawReport tensor_bilinearity(RingKind ring, int cases, std::uint64_t seed);
LawReport fold_linearity(RingKind ring, int cases, std::uint64_t seed);
LawReport algebra_laws(RingKind ring, int cases, std::uint64_t seed);
LawReport iso_round_trip(Iso iso, RingKind ring, int cases, std::uint64_t seed);

// multiply against naive_multiply_all on random product problems, half
// with wildcards, alternating rings ℤ and GF(2).
LawReport product_oracle(int cases, std::uint64_t seed);

// x′(y′+1) = x′y′+x′ and (x′+1)(y′+1) = x′y′+x′+y′+1 on random pairs.
LawReport outer_join_identities(int cases, std::uint64_t seed);

// Random update sequences applied in shuffled orders agree.
LawReport update_permutations(int cases, std::uint64_t seed);

} // namespace polyalg::testing
