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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace polyalg {

/// Thrown when a value, term or space does not fit where it is used.
class SpaceError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PrimSet;
using PrimSetPtr = std::shared_ptr<const PrimSet>;

/// Index sets for free modules and maps. Only these are permitted as keys;
/// every one of them has a trie shape (see KeyTrie).
class PrimSet {
public:
    enum class Kind : std::uint8_t { Empty, Unit, Int64, Str, Bool, Sum, Prod };

    static PrimSetPtr empty();
    static PrimSetPtr unit();
    static PrimSetPtr int64();
    static PrimSetPtr str();
    static PrimSetPtr boolean();
    static PrimSetPtr sum(PrimSetPtr left, PrimSetPtr right);
    static PrimSetPtr prod(PrimSetPtr first, PrimSetPtr second);

    /// "int", "str", "bool", "unit" (CSV schema declarations).
    static PrimSetPtr parse_scalar_type(std::string_view name);

    Kind kind() const { return kind_; }
    const PrimSetPtr& left() const { return a_; }
    const PrimSetPtr& right() const { return b_; }

    /// True when the set has finitely many values (built from Empty, Unit
    /// and Bool only).
    bool is_finite() const;

    std::string to_string() const;

    friend bool operator==(const PrimSet& x, const PrimSet& y);

    PrimSet(Kind k, PrimSetPtr a, PrimSetPtr b) : kind_(k), a_(std::move(a)), b_(std::move(b)) {}

private:
    Kind kind_;
    PrimSetPtr a_, b_;
};

bool same_set(const PrimSetPtr& x, const PrimSetPtr& y);

/// A value of some PrimSet. Immutable; compound values share their parts.
class Value {
public:
    struct Sum {
        bool right;
        std::shared_ptr<const Value> inner;
    };
    struct Prod {
        std::shared_ptr<const Value> first, second;
    };

    Value() = default; // the unit value ()

    static Value unit() { return Value(); }
    static Value integer(std::int64_t v) { return Value(Rep(v)); }
    static Value string(std::string v) { return Value(Rep(std::move(v))); }
    static Value boolean(bool v) { return Value(Rep(v)); }
    static Value left(Value v) { return Value(Rep(Sum{false, std::make_shared<const Value>(std::move(v))})); }
    static Value right(Value v) { return Value(Rep(Sum{true, std::make_shared<const Value>(std::move(v))})); }
    static Value pair(Value a, Value b) {
        return Value(Rep(Prod{std::make_shared<const Value>(std::move(a)), std::make_shared<const Value>(std::move(b))}));
    }

    bool is_unit() const { return std::holds_alternative<std::monostate>(v_); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
    bool is_str() const { return std::holds_alternative<std::string>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_sum() const { return std::holds_alternative<Sum>(v_); }
    bool is_prod() const { return std::holds_alternative<Prod>(v_); }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    const std::string& as_str() const { return std::get<std::string>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }
    bool is_right() const { return std::get<Sum>(v_).right; }
    const Value& inner() const { return *std::get<Sum>(v_).inner; }
    const Value& first() const { return *std::get<Prod>(v_).first; }
    const Value& second() const { return *std::get<Prod>(v_).second; }

    bool belongs_to(const PrimSet& set) const;

    /// Total order: numeric for ints, bytewise for strings, false < true,
    /// left before right for sums, lexicographic for products.
    friend std::strong_ordering operator<=>(const Value& a, const Value& b);
    friend bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

    /// Compact rendering: 3, foo, true, (), left(p), (a, b). Strings are
    /// written raw.
    std::string to_string() const;

private:
    using Rep = std::variant<std::monostate, std::int64_t, std::string, bool, Sum, Prod>;
    explicit Value(Rep r) : v_(std::move(r)) {}
    Rep v_;
};

/// Parses a scalar cell ("int"/"str"/"bool"/"unit" typed) from text.
Value parse_scalar_value(const PrimSet& set, std::string_view text);

} // namespace polyalg
