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

#include "polyalg/prim_set.hpp"

#include <charconv>

namespace polyalg {

namespace {

PrimSetPtr make(PrimSet::Kind k, PrimSetPtr a = nullptr, PrimSetPtr b = nullptr) {
    return std::make_shared<const PrimSet>(k, std::move(a), std::move(b));
}

} // namespace

PrimSetPtr PrimSet::empty() {
    static const PrimSetPtr p = make(Kind::Empty);
    return p;
}
PrimSetPtr PrimSet::unit() {
    static const PrimSetPtr p = make(Kind::Unit);
    return p;
}
PrimSetPtr PrimSet::int64() {
    static const PrimSetPtr p = make(Kind::Int64);
    return p;
}
PrimSetPtr PrimSet::str() {
    static const PrimSetPtr p = make(Kind::Str);
    return p;
}
PrimSetPtr PrimSet::boolean() {
    static const PrimSetPtr p = make(Kind::Bool);
    return p;
}
PrimSetPtr PrimSet::sum(PrimSetPtr left, PrimSetPtr right) {
    if (!left || !right) throw SpaceError("sum of null sets");
    return make(Kind::Sum, std::move(left), std::move(right));
}
PrimSetPtr PrimSet::prod(PrimSetPtr first, PrimSetPtr second) {
    if (!first || !second) throw SpaceError("product of null sets");
    return make(Kind::Prod, std::move(first), std::move(second));
}

PrimSetPtr PrimSet::parse_scalar_type(std::string_view name) {
    if (name == "int") return int64();
    if (name == "str") return str();
    if (name == "bool") return boolean();
    if (name == "unit") return unit();
    throw std::invalid_argument("unknown attribute type '" + std::string(name) + "' (expected int, str or bool)");
}

bool PrimSet::is_finite() const {
    switch (kind_) {
    case Kind::Empty:
    case Kind::Unit:
    case Kind::Bool: return true;
    case Kind::Int64:
    case Kind::Str: return false;
    case Kind::Sum:
    case Kind::Prod: return a_->is_finite() && b_->is_finite();
    }
    return false;
}

std::string PrimSet::to_string() const {
    switch (kind_) {
    case Kind::Empty: return "0";
    case Kind::Unit: return "unit";
    case Kind::Int64: return "int";
    case Kind::Str: return "str";
    case Kind::Bool: return "bool";
    case Kind::Sum: return "(" + a_->to_string() + " + " + b_->to_string() + ")";
    case Kind::Prod: return "(" + a_->to_string() + " x " + b_->to_string() + ")";
    }
    return "?";
}

bool operator==(const PrimSet& x, const PrimSet& y) {
    if (&x == &y) return true;
    if (x.kind_ != y.kind_) return false;
    if (x.kind_ == PrimSet::Kind::Sum || x.kind_ == PrimSet::Kind::Prod) return *x.a_ == *y.a_ && *x.b_ == *y.b_;
    return true;
}

bool same_set(const PrimSetPtr& x, const PrimSetPtr& y) { return x == y || (x && y && *x == *y); }

bool Value::belongs_to(const PrimSet& set) const {
    switch (set.kind()) {
    case PrimSet::Kind::Empty: return false;
    case PrimSet::Kind::Unit: return is_unit();
    case PrimSet::Kind::Int64: return is_int();
    case PrimSet::Kind::Str: return is_str();
    case PrimSet::Kind::Bool: return is_bool();
    case PrimSet::Kind::Sum:
        return is_sum() && inner().belongs_to(is_right() ? *set.right() : *set.left());
    case PrimSet::Kind::Prod:
        return is_prod() && first().belongs_to(*set.left()) && second().belongs_to(*set.right());
    }
    return false;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
    switch (a.v_.index()) {
    case 0: return std::strong_ordering::equal;
    case 1: return a.as_int() <=> b.as_int();
    case 2: {
        int c = a.as_str().compare(b.as_str());
        return c <=> 0;
    }
    case 3: return a.as_bool() <=> b.as_bool();
    case 4: {
        if (a.is_right() != b.is_right()) return a.is_right() <=> b.is_right();
        return a.inner() <=> b.inner();
    }
    case 5: {
        if (auto c = a.first() <=> b.first(); c != 0) return c;
        return a.second() <=> b.second();
    }
    }
    return std::strong_ordering::equal;
}

std::string Value::to_string() const {
    switch (v_.index()) {
    case 0: return "()";
    case 1: return std::to_string(as_int());
    case 2: return as_str();
    case 3: return as_bool() ? "true" : "false";
    case 4: return (is_right() ? "right(" : "left(") + inner().to_string() + ")";
    case 5: return "(" + first().to_string() + ", " + second().to_string() + ")";
    }
    return "?";
}

Value parse_scalar_value(const PrimSet& set, std::string_view text) {
    switch (set.kind()) {
    case PrimSet::Kind::Int64: {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
            throw std::invalid_argument("expected a 64-bit integer, got '" + std::string(text) + "'");
        return Value::integer(v);
    }
    case PrimSet::Kind::Str: return Value::string(std::string(text));
    case PrimSet::Kind::Bool:
        if (text == "true") return Value::boolean(true);
        if (text == "false") return Value::boolean(false);
        throw std::invalid_argument("expected true or false, got '" + std::string(text) + "'");
    case PrimSet::Kind::Unit:
        if (text.empty() || text == "()") return Value::unit();
        throw std::invalid_argument("expected (), got '" + std::string(text) + "'");
    default: throw std::invalid_argument("cannot parse values of " + set.to_string() + " from text");
    }
}

} // namespace polyalg
