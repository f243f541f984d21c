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

#include "polyalg/linear.hpp"
#include "polyalg/normal_form.hpp"
#include "support/laws.hpp"

using namespace polyalg;
namespace pt = polyalg::testing;

namespace {

class Laws : public ::testing::TestWithParam<RingKind> {};

TEST_P(Laws, Module) {
    auto r = pt::module_laws(GetParam(), 200, 101);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}
TEST_P(Laws, TensorBilinearity) {
    auto r = pt::tensor_bilinearity(GetParam(), 200, 102);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}
TEST_P(Laws, FoldLinearity) {
    auto r = pt::fold_linearity(GetParam(), 200, 103);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}
TEST_P(Laws, Algebra) {
    auto r = pt::algebra_laws(GetParam(), 200, 104);
    EXPECT_TRUE(r.ok()) << r.first_failure;
}

INSTANTIATE_TEST_SUITE_P(Rings, Laws, ::testing::Values(RingKind::Integer, RingKind::GF2, RingKind::Real),
                         [](const auto& info) { return std::string(ring_name(info.param)); });

class IsoRoundTrip : public ::testing::TestWithParam<Iso> {};

TEST_P(IsoRoundTrip, BothDirections) {
    for (RingKind ring : {RingKind::Integer, RingKind::GF2}) {
        auto r = pt::iso_round_trip(GetParam(), ring, 200, 200 + static_cast<int>(GetParam()));
        EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
    }
}

INSTANTIATE_TEST_SUITE_P(All, IsoRoundTrip, ::testing::ValuesIn(all_isos()),
                         [](const auto& info) { return std::string(iso_name(info.param)); });

const RingKind Z = RingKind::Integer;

TEST(Iso, NamesRoundTrip) {
    EXPECT_EQ(all_isos().size(), 14u);
    for (Iso i : all_isos()) EXPECT_EQ(parse_iso(iso_name(i)), i);
    EXPECT_THROW(parse_iso("nope"), std::invalid_argument);
}

TEST(Iso, WrongDomainIsRejected) {
    const SpacePtr f = Space::free(Z, PrimSet::str());
    EXPECT_THROW(apply_iso(Iso::FreeProd, true, zero(f)), SpaceError);
    EXPECT_THROW(apply_iso(Iso::Cp0, false, zero(Space::free(Z, PrimSet::empty()))), SpaceError);
}

TEST(Iso, CompactSplitSeparatesTheBaseline) {
    const SpacePtr cf = Space::compact_free(Z, PrimSet::str());
    const Term x = sum_of(cf, {scale(Scalar::from_int(Z, 3), wild_one(cf)), inject(cf, Value::string("a"))});
    const Term y = apply_iso(Iso::CompactSplit, true, x);
    EXPECT_EQ(normalize(proj1(y)).to_string(), "<a>");
    EXPECT_EQ(normalize(proj2(y)).to_string(), "3");
}

TEST(Iso, FreeProductMatchesTensor) {
    const PrimSetPtr p = PrimSet::prod(PrimSet::str(), PrimSet::int64());
    const SpacePtr f = Space::free(Z, p);
    const Term x = inject(f, Value::pair(Value::string("a"), Value::integer(1)));
    const Term t = apply_iso(Iso::FreeProd, true, x);
    EXPECT_EQ(to_string(t), "(<a> ⊗ <1>)");
}

TEST(Linear, AssociatorAndCommutator) {
    const SpacePtr f = Space::free(Z, PrimSet::str());
    const Term a = inject(f, Value::string("a")), b = inject(f, Value::string("b")), c = inject(f, Value::string("c"));
    const Term t = tensor(a, tensor(b, c));
    EXPECT_TRUE(equal(associator(t), tensor(tensor(a, b), c)));
    EXPECT_TRUE(equal(commutator(tensor(a, b)), tensor(b, a)));
}

TEST(Linear, SumOverIndex) {
    const SpacePtr m = Space::fin_map(PrimSet::str(), Space::free(Z, PrimSet::int64()));
    const SpacePtr v = m->value();
    const Term x = add(maps_to(m, Value::string("a"), inject(v, Value::integer(1))),
                       maps_to(m, Value::string("b"), inject(v, Value::integer(1))));
    EXPECT_EQ(normalize(sum_over_index(x)).to_string(), "2*<1>");
}

TEST(Linear, FreeMapAddsCollisions) {
    const SpacePtr f = Space::free(Z, PrimSet::str());
    const Term x = add(inject(f, Value::string("a")), inject(f, Value::string("b")));
    const Term y = free_map([](const Value&) { return Value::string("c"); }, PrimSet::str(), x);
    EXPECT_EQ(normalize(y).to_string(), "2*<c>");
    EXPECT_TRUE(equal(free_map([](const Value& v) { return v; }, PrimSet::str(), x), x));
}

TEST(Linear, FoldNeedsAnImageForOne) {
    const SpacePtr cf = Space::compact_free(Z, PrimSet::str());
    EXPECT_THROW(fold(wild_one(cf), Space::scalar(Z), [](const Value&) { return one(Z); }), SpaceError);
}

} // namespace
