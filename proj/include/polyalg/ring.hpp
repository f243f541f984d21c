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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace polyalg {

using BigInt = boost::multiprecision::cpp_int;

/// The commutative ring supplying multiplicities.
///
///  - Integer: polysets (arbitrary precision, never overflows).
///  - GF2:     ordinary sets; addition is xor, multiplication is and.
///  - Real:    generalised fuzzy sets; zero-tests use an absolute tolerance.
enum class RingKind : std::uint8_t { Integer, GF2, Real };

std::string_view ring_name(RingKind k);        // "z", "gf2", "real"
RingKind parse_ring(std::string_view name);     // throws std::invalid_argument

class RingMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Absolute tolerance used by the real ring for is_zero and equality.
/// Process-wide; defaults to 1e-9.
double real_tolerance();
void set_real_tolerance(double tol);

/// An element of one of the three rings. The ring travels with the value so
/// that arithmetic across rings is rejected instead of silently coerced.
class Scalar {
public:
    static Scalar zero(RingKind k);
    static Scalar one(RingKind k);
    static Scalar from_int(RingKind k, std::int64_t v);
    static Scalar from_big(RingKind k, const BigInt& v);
    static Scalar from_real(double v);
    static Scalar from_bool(bool v);

    /// Parses the textual rendering produced by to_string().
    static Scalar parse(RingKind k, std::string_view text);

    RingKind ring() const { return ring_; }

    bool is_zero() const;
    bool is_one() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    /// Ring equality; tolerance based for reals.
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Total order used for canonical ordering of normal forms. Within the
    /// real ring values closer than the tolerance compare equal.
    friend std::strong_ordering compare(const Scalar& a, const Scalar& b);

    /// Order used by clamp-style operations; only Integer and Real are ordered.
    bool is_negative() const;

    /// Decimal integers, 0/1 for GF(2), shortest round-trip decimal for reals.
    std::string to_string() const;

    const BigInt& as_integer() const { return std::get<BigInt>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }
    double as_real() const { return std::get<double>(v_); }

private:
    Scalar(RingKind k, std::variant<BigInt, bool, double> v) : ring_(k), v_(std::move(v)) {}

    RingKind ring_;
    std::variant<BigInt, bool, double> v_;
};

/// Static trait views over Scalar for each ring instance. Generic code that
/// wants to state which ring it runs in names one of these.
struct IntegerRing {
    static constexpr RingKind kind = RingKind::Integer;
    static Scalar zero() { return Scalar::zero(kind); }
    static Scalar one() { return Scalar::one(kind); }
};
struct GF2Ring {
    static constexpr RingKind kind = RingKind::GF2;
    static Scalar zero() { return Scalar::zero(kind); }
    static Scalar one() { return Scalar::one(kind); }
};
struct RealRing {
    static constexpr RingKind kind = RingKind::Real;
    static Scalar zero() { return Scalar::zero(kind); }
    static Scalar one() { return Scalar::one(kind); }
};

} // namespace polyalg
