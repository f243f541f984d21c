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

#include "polyalg/ring.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <system_error>

namespace polyalg {

namespace {

std::atomic<double> g_real_tolerance{1e-9};

void check_same(const Scalar& a, const Scalar& b) {
    if (a.ring() != b.ring()) {
        throw RingMismatch("ring mismatch: " + std::string(ring_name(a.ring())) + " vs " +
                           std::string(ring_name(b.ring())));
    }
}

} // namespace

std::string_view ring_name(RingKind k) {
    switch (k) {
    case RingKind::Integer: return "z";
    case RingKind::GF2: return "gf2";
    case RingKind::Real: return "real";
    }
    return "?";
}

RingKind parse_ring(std::string_view name) {
    if (name == "z" || name == "int" || name == "integer") return RingKind::Integer;
    if (name == "gf2") return RingKind::GF2;
    if (name == "real" || name == "r") return RingKind::Real;
    throw std::invalid_argument("unknown ring '" + std::string(name) + "' (expected z, gf2 or real)");
}

double real_tolerance() { return g_real_tolerance.load(std::memory_order_relaxed); }

void set_real_tolerance(double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
    g_real_tolerance.store(tol, std::memory_order_relaxed);
}

Scalar Scalar::zero(RingKind k) { return from_int(k, 0); }
Scalar Scalar::one(RingKind k) { return from_int(k, 1); }

Scalar Scalar::from_int(RingKind k, std::int64_t v) {
    switch (k) {
    case RingKind::Integer: return Scalar(k, BigInt(v));
    case RingKind::GF2: return Scalar(k, (v & 1) != 0);
    case RingKind::Real: return Scalar(k, static_cast<double>(v));
    }
    throw std::logic_error("bad ring");
}

Scalar Scalar::from_big(RingKind k, const BigInt& v) {
    switch (k) {
    case RingKind::Integer: return Scalar(k, v);
    case RingKind::GF2: return Scalar(k, bit_test(v < 0 ? BigInt(-v) : v, 0));
    case RingKind::Real: return Scalar(k, v.convert_to<double>());
    }
    throw std::logic_error("bad ring");
}

Scalar Scalar::from_real(double v) { return Scalar(RingKind::Real, v); }
Scalar Scalar::from_bool(bool v) { return Scalar(RingKind::GF2, v); }

Scalar Scalar::parse(RingKind k, std::string_view text) {
    auto bad = [&] { return std::invalid_argument("cannot parse '" + std::string(text) + "' as " +
                                                  std::string(ring_name(k)) + " scalar"); };
    if (text.empty()) throw bad();
    switch (k) {
    case RingKind::Integer: {
        std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
        if (i == text.size()) throw bad();
        for (std::size_t j = i; j < text.size(); ++j)
            if (text[j] < '0' || text[j] > '9') throw bad();
        BigInt v(std::string(text.substr(text[0] == '+' ? 1 : 0)));
        return Scalar(k, v);
    }
    case RingKind::GF2: {
        if (text == "true") return from_bool(true);
        if (text == "false") return from_bool(false);
        return from_big(k, parse(RingKind::Integer, text).as_integer());
    }
    case RingKind::Real: {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) throw bad();
        return from_real(v);
    }
    }
    throw bad();
}

bool Scalar::is_zero() const {
    switch (ring_) {
    case RingKind::Integer: return std::get<BigInt>(v_).is_zero();
    case RingKind::GF2: return !std::get<bool>(v_);
    case RingKind::Real: return std::fabs(std::get<double>(v_)) <= real_tolerance();
    }
    return false;
}

bool Scalar::is_one() const { return *this == one(ring_); }

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.ring_) {
    case RingKind::Integer: return Scalar(a.ring_, BigInt(a.as_integer() + b.as_integer()));
    case RingKind::GF2: return Scalar(a.ring_, a.as_bool() != b.as_bool());
    case RingKind::Real: return Scalar(a.ring_, a.as_real() + b.as_real());
    }
    throw std::logic_error("bad ring");
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.ring_) {
    case RingKind::Integer: return Scalar(a.ring_, BigInt(a.as_integer() * b.as_integer()));
    case RingKind::GF2: return Scalar(a.ring_, a.as_bool() && b.as_bool());
    case RingKind::Real: return Scalar(a.ring_, a.as_real() * b.as_real());
    }
    throw std::logic_error("bad ring");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar Scalar::operator-() const {
    switch (ring_) {
    case RingKind::Integer: return Scalar(ring_, BigInt(-as_integer()));
    case RingKind::GF2: return *this;
    case RingKind::Real: return Scalar(ring_, -as_real());
    }
    throw std::logic_error("bad ring");
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.ring_ != b.ring_) return false;
    switch (a.ring_) {
    case RingKind::Integer: return a.as_integer() == b.as_integer();
    case RingKind::GF2: return a.as_bool() == b.as_bool();
    case RingKind::Real: return std::fabs(a.as_real() - b.as_real()) <= real_tolerance();
    }
    return false;
}

std::strong_ordering compare(const Scalar& a, const Scalar& b) {
    if (a.ring_ != b.ring_) return a.ring_ <=> b.ring_;
    switch (a.ring_) {
    case RingKind::Integer: {
        int c = a.as_integer().compare(b.as_integer());
        return c <=> 0;
    }
    case RingKind::GF2: return a.as_bool() <=> b.as_bool();
    case RingKind::Real:
        if (a == b) return std::strong_ordering::equal;
        return a.as_real() < b.as_real() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool Scalar::is_negative() const {
    switch (ring_) {
    case RingKind::Integer: return as_integer() < 0;
    case RingKind::Real: return !is_zero() && as_real() < 0.0;
    case RingKind::GF2: throw std::logic_error("GF(2) is not an ordered ring");
    }
    return false;
}

std::string Scalar::to_string() const {
    switch (ring_) {
    case RingKind::Integer: return as_integer().str();
    case RingKind::GF2: return as_bool() ? "1" : "0";
    case RingKind::Real: {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, as_real());
        return std::string(buf, ptr);
    }
    }
    return "?";
}

} // namespace polyalg
