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

#include <gtest/gtest.h>

#include "polyalg/normal_form.hpp"
#include "support/gen.hpp"

using namespace polyalg;

namespace {

const RingKind Z = RingKind::Integer;

Term k(std::int64_t v) { return scalar(Scalar::from_int(Z, v)); }
Value s(const char* v) { return Value::string(v); }

TEST(NormalForm, CompactMapLookups) {
    const SpacePtr sp = Space::compact_map(PrimSet::str(), Space::scalar(Z));
    const Term x = sum_of(sp, {wild_maps_to(sp, k(2)), maps_to(sp, s("a"), k(3)), maps_to(sp, s("b"), k(-2))});
    const NormalForm nf = normalize(x);
    EXPECT_EQ(lookup(nf, std::nullopt).value().to_string(), "2");
    EXPECT_EQ(lookup(nf, s("a")).value().to_string(), "5");
    EXPECT_TRUE(lookup(nf, s("b")).is_zero());
    EXPECT_EQ(lookup(nf, s("c")).value().to_string(), "2");
}

TEST(NormalForm, FiniteMapSimplificationRendersNested) {
    const PrimSetPtr key = PrimSet::prod(PrimSet::str(), PrimSet::sum(PrimSet::str(), PrimSet::int64()));
    const SpacePtr sp = Space::fin_map(key, Space::scalar(Z));
    auto e = [&](const char* a, Value tag) { return maps_to(sp, Value::pair(s(a), tag), one(Z)); };
    const Term x = sum_of(sp, {e("a", Value::left(s("p"))), e("b", Value::right(Value::integer(4))),
                               e("a", Value::right(Value::integer(3))), e("a", Value::left(s("p")))});
    EXPECT_EQ(normalize(x).to_string(), "cp×⁻¹((a ↦ cp₊⁻¹(p ↦ 2, 3 ↦ 1)) + (b ↦ cp₊⁻¹(0, 4 ↦ 1)))");
}

TEST(NormalForm, CancellationLeavesZero) {
    const SpacePtr f = Space::free(Z, PrimSet::str());
    const Term x = add(inject(f, s("a")), neg(inject(f, s("a"))));
    EXPECT_TRUE(normalize(x).is_zero());
    EXPECT_EQ(normalize(x).to_string(), "0");
}

TEST(NormalForm, CofiniteSetRendersBaselineLast) {
    const SpacePtr cf = Space::compact_free(Z, PrimSet::str());
    const NormalForm nf = normalize(sub(wild_one(cf), inject(cf, s("a"))));
    EXPECT_TRUE(nf.has_baseline());
    EXPECT_EQ(nf.to_string(), "-1*<a> + 1");
}

TEST(NormalForm, TensorEqualityIsExtensional) {
    const SpacePtr f = Space::free(Z, PrimSet::str());
    const Term a = inject(f, s("a")), b = inject(f, s("b"));
    // (a+b)⊗(a+b) against its expansion.
    EXPECT_TRUE(equal(tensor(add(a, b), add(a, b)),
                      sum_of(Space::tensor(f, f), {tensor(a, a), tensor(a, b), tensor(b, a), tensor(b, b)})));
    EXPECT_FALSE(equal(tensor(a, b), tensor(b, a)));
}

TEST(NormalForm, CurryUncurryRoundTrip) {
    polyalg::testing::Gen g(5);
    for (int i = 0; i < 100; ++i) {
        const SpacePtr sp = Space::tensor(g.space(Z, 1), g.space(Z, 1));
        const NormalForm nf = normalize(g.term(sp));
        EXPECT_TRUE(equal(uncurry(curry(nf), sp), nf)) << nf.to_string();
    }
}

TEST(NormalForm, NormalizeIsIdempotentAndReadbackIsFaithful) {
    polyalg::testing::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const SpacePtr sp = g.space(Z);
        const Term x = g.term(sp);
        const NormalForm nf = normalize(x);
        const NormalForm again = normalize(readback(nf));
        EXPECT_TRUE(equal(nf, again)) << to_string(x);
        EXPECT_EQ(compare(nf, again), std::strong_ordering::equal);
    }
}

TEST(NormalForm, RenderingIsDeterministic) {
    const SpacePtr f = Space::free(Z, PrimSet::int64());
    const Term x = sum_of(f, {inject(f, Value::integer(3)), inject(f, Value::integer(-1)), inject(f, Value::integer(2))});
    const Term y = sum_of(f, {inject(f, Value::integer(2)), inject(f, Value::integer(3)), inject(f, Value::integer(-1))});
    EXPECT_EQ(normalize(x).to_string(), normalize(y).to_string());
    EXPECT_EQ(normalize(x).to_string(), "<-1> + <2> + <3>");
}

TEST(NormalForm, WeightCountsBaselineOnce) {
    const SpacePtr cf = Space::compact_free(Z, PrimSet::str());
    const Term x = sum_of(cf, {wild_one(cf), inject(cf, s("a")), scale(Scalar::from_int(Z, 4), inject(cf, s("b")))});
    EXPECT_EQ(weight(x).to_string(), "6");
    EXPECT_EQ(weight(normalize(x)).to_string(), "6");
}

TEST(NormalForm, EnumerateListsWildcardRows) {
    const SpacePtr cf = Space::compact_free(Z, PrimSet::str());
    const NormalForm nf = normalize(sub(wild_one(cf), inject(cf, s("a"))));
    EXPECT_THROW(enumerate(nf), std::exception);
    auto rows = enumerate(nf, true);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].cells[0], Cell::key_of(s("a")));
    EXPECT_EQ(rows[0].coef.to_string(), "-1");
    EXPECT_EQ(rows[1].cells[0], Cell::wild());
}

TEST(NormalForm, SpaceMismatchIsAnError) {
    const Term a = inject(Space::free(Z, PrimSet::str()), s("a"));
    const Term b = inject(Space::free(Z, PrimSet::int64()), Value::integer(1));
    EXPECT_THROW(add(a, b), SpaceError);
    EXPECT_THROW(inject(Space::free(Z, PrimSet::str()), Value::integer(1)), SpaceError);
    EXPECT_THROW(wild_one(Space::free(Z, PrimSet::str())), SpaceError);
}

} // namespace
