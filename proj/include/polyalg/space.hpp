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

#include <memory>
#include <string>

#include "polyalg/prim_set.hpp"
#include "polyalg/ring.hpp"

namespace polyalg {

class Space;
using SpacePtr = std::shared_ptr<const Space>;

/// Which module a term lives in. Every space is built over one ring; the
/// constructors reject children over different rings.
///
///   Scalar          K
///   Free A          F[A]       finite formal sums of <a>
///   CompactFree A   F*[A]      F[A] with an adjoined 1 (the sum of all <a>)
///   Biproduct U V   U (+) V
///   FinMap A U      A => U     finitely supported maps
///   CompactMap A U  A =>* U    finite maps plus a wildcard baseline
///   Tensor U V      U (x) V
class Space {
public:
    enum class Kind : std::uint8_t { Scalar, Free, CompactFree, Biproduct, FinMap, CompactMap, Tensor };

    static SpacePtr scalar(RingKind ring);
    static SpacePtr free(RingKind ring, PrimSetPtr index);
    static SpacePtr compact_free(RingKind ring, PrimSetPtr index);
    static SpacePtr biproduct(SpacePtr u, SpacePtr v);
    static SpacePtr fin_map(PrimSetPtr index, SpacePtr value);
    static SpacePtr compact_map(PrimSetPtr index, SpacePtr value);
    static SpacePtr tensor(SpacePtr u, SpacePtr v);

    Kind kind() const { return kind_; }
    RingKind ring() const { return ring_; }
    /// Index set of Free/CompactFree/FinMap/CompactMap.
    const PrimSetPtr& index() const { return index_; }
    /// Value space of maps; left factor of Biproduct and Tensor.
    const SpacePtr& first() const { return a_; }
    const SpacePtr& second() const { return b_; }
    const SpacePtr& value() const { return a_; }

    bool is_free_like() const { return kind_ == Kind::Free || kind_ == Kind::CompactFree; }
    bool is_map_like() const { return kind_ == Kind::FinMap || kind_ == Kind::CompactMap; }
    bool is_compact_kind() const { return kind_ == Kind::CompactFree || kind_ == Kind::CompactMap; }

    /// True when a multiplicative unit exists: K, F*[A], A =>* U over a
    /// unital U, tensors and biproducts of unital spaces, and free modules
    /// or finite maps over a finite index set.
    bool has_unit() const;

    /// True when a Tensor occurs anywhere inside.
    bool contains_tensor() const;

    /// Renders as e.g. (F[str] (x) F*[int]) or (str =>* K).
    std::string to_string() const;

    friend bool operator==(const Space& x, const Space& y);

    Space(Kind k, RingKind r, PrimSetPtr idx, SpacePtr a, SpacePtr b)
        : kind_(k), ring_(r), index_(std::move(idx)), a_(std::move(a)), b_(std::move(b)) {}

private:
    Kind kind_;
    RingKind ring_;
    PrimSetPtr index_;
    SpacePtr a_, b_;
};

bool same_space(const SpacePtr& x, const SpacePtr& y);

/// Throws SpaceError mentioning `what` unless the two spaces agree.
void require_same_space(const SpacePtr& x, const SpacePtr& y, const char* what);

} // namespace polyalg
