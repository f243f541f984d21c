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

#include "polyalg/space.hpp"

namespace polyalg {

namespace {

SpacePtr make(Space::Kind k, RingKind r, PrimSetPtr idx = nullptr, SpacePtr a = nullptr, SpacePtr b = nullptr) {
    return std::make_shared<const Space>(k, r, std::move(idx), std::move(a), std::move(b));
}

void need(const SpacePtr& s) {
    if (!s) throw SpaceError("null space");
}

void need(const PrimSetPtr& p) {
    if (!p) throw SpaceError("null index set");
}

RingKind common_ring(const SpacePtr& u, const SpacePtr& v) {
    need(u);
    need(v);
    if (u->ring() != v->ring())
        throw RingMismatch("spaces over different rings: " + std::string(ring_name(u->ring())) + " and " +
                           std::string(ring_name(v->ring())));
    return u->ring();
}

} // namespace

SpacePtr Space::scalar(RingKind ring) {
    static const SpacePtr z = make(Kind::Scalar, RingKind::Integer);
    static const SpacePtr g = make(Kind::Scalar, RingKind::GF2);
    static const SpacePtr r = make(Kind::Scalar, RingKind::Real);
    switch (ring) {
    case RingKind::Integer: return z;
    case RingKind::GF2: return g;
    case RingKind::Real: return r;
    }
    return z;
}

SpacePtr Space::free(RingKind ring, PrimSetPtr index) {
    need(index);
    return make(Kind::Free, ring, std::move(index));
}

SpacePtr Space::compact_free(RingKind ring, PrimSetPtr index) {
    need(index);
    return make(Kind::CompactFree, ring, std::move(index));
}

SpacePtr Space::biproduct(SpacePtr u, SpacePtr v) {
    const RingKind r = common_ring(u, v);
    return make(Kind::Biproduct, r, nullptr, std::move(u), std::move(v));
}

SpacePtr Space::fin_map(PrimSetPtr index, SpacePtr value) {
    need(index);
    need(value);
    const RingKind r = value->ring();
    return make(Kind::FinMap, r, std::move(index), std::move(value));
}

SpacePtr Space::compact_map(PrimSetPtr index, SpacePtr value) {
    need(index);
    need(value);
    const RingKind r = value->ring();
    return make(Kind::CompactMap, r, std::move(index), std::move(value));
}

SpacePtr Space::tensor(SpacePtr u, SpacePtr v) {
    const RingKind r = common_ring(u, v);
    return make(Kind::Tensor, r, nullptr, std::move(u), std::move(v));
}

bool Space::has_unit() const {
    switch (kind_) {
    case Kind::Scalar:
    case Kind::CompactFree: return true;
    case Kind::Free: return index_->is_finite();
    case Kind::CompactMap: return a_->has_unit();
    case Kind::FinMap: return index_->is_finite() && a_->has_unit();
    case Kind::Biproduct:
    case Kind::Tensor: return a_->has_unit() && b_->has_unit();
    }
    return false;
}

bool Space::contains_tensor() const {
    switch (kind_) {
    case Kind::Tensor: return true;
    case Kind::FinMap:
    case Kind::CompactMap: return a_->contains_tensor();
    case Kind::Biproduct: return a_->contains_tensor() || b_->contains_tensor();
    default: return false;
    }
}

std::string Space::to_string() const {
    switch (kind_) {
    case Kind::Scalar: return "K";
    case Kind::Free: return "F[" + index_->to_string() + "]";
    case Kind::CompactFree: return "F*[" + index_->to_string() + "]";
    case Kind::Biproduct: return "(" + a_->to_string() + " ⊕ " + b_->to_string() + ")";
    case Kind::FinMap: return "(" + index_->to_string() + " ⇒ " + a_->to_string() + ")";
    case Kind::CompactMap: return "(" + index_->to_string() + " ⇒* " + a_->to_string() + ")";
    case Kind::Tensor: return "(" + a_->to_string() + " ⊗ " + b_->to_string() + ")";
    }
    return "?";
}

bool operator==(const Space& x, const Space& y) {
    if (&x == &y) return true;
    if (x.kind_ != y.kind_ || x.ring_ != y.ring_) return false;
    if (x.index_ && !same_set(x.index_, y.index_)) return false;
    if (x.a_ && !(*x.a_ == *y.a_)) return false;
    if (x.b_ && !(*x.b_ == *y.b_)) return false;
    return true;
}

bool same_space(const SpacePtr& x, const SpacePtr& y) { return x == y || (x && y && *x == *y); }

void require_same_space(const SpacePtr& x, const SpacePtr& y, const char* what) {
    if (same_space(x, y)) return;
    if (x && y && x->ring() != y->ring())
        throw RingMismatch(std::string(what) + ": operands over different rings");
    throw SpaceError(std::string(what) + ": space mismatch " + (x ? x->to_string() : "null") + " vs " +
                     (y ? y->to_string() : "null"));
}

} // namespace polyalg
