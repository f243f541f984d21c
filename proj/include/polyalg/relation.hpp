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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyalg/metrics.hpp"
#include "polyalg/normal_form.hpp"
#include "polyalg/term.hpp"

namespace polyalg {

/// A query that does not fit the data: unknown attribute, type conflict,
/// schema mismatch.
class QueryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Attribute {
    std::string name;
    PrimSetPtr type;
};

class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<Attribute> attrs);

    /// "A:str,B:int".
    static Schema parse(std::string_view decl);

    std::size_t size() const { return attrs_.size(); }
    const Attribute& operator[](std::size_t i) const { return attrs_[i]; }
    const std::vector<Attribute>& attributes() const { return attrs_; }
    std::optional<std::size_t> find(std::string_view name) const;
    /// Like find, but throws QueryError naming the attribute.
    std::size_t index_of(std::string_view name) const;
    std::vector<PrimSetPtr> types() const;

    std::string to_string() const;
    friend bool operator==(const Schema& a, const Schema& b);

private:
    std::vector<Attribute> attrs_;
};

/// A generalized relation: a module element over the tensor product of the
/// attribute modules. `data` may be any tensor tree whose leaves are the
/// attributes in schema order; leaves are F[T] or, once wildcards appear,
/// F*[T]. A relation without attributes is a scalar.
struct Relation {
    Schema schema;
    RingKind ring = RingKind::Integer;
    Term data;

    /// F[T₁] ⊗ (F[T₂] ⊗ ...), or K.
    static SpacePtr space_for(const Schema& s, RingKind ring, bool compact = false);

    static Relation empty(Schema s, RingKind ring);
    /// Sum of basis tuples. Cells are keys or wildcards (which make the
    /// relation compact).
    static Relation from_rows(Schema s, RingKind ring, const std::vector<BasisRow>& rows);
    static Relation from_tuples(Schema s, RingKind ring, const std::vector<std::vector<Value>>& tuples);

    /// Normal form in nested-map shape: A₁ ⇒ A₂ ⇒ ... ⇒ F[A_m].
    NormalForm curried() const;
    /// Basis rows in ascending order, one cell per attribute.
    std::vector<BasisRow> rows() const;
    bool has_baseline() const;
    Scalar weight() const;
};

/// Extensional equality of contents (schemas must agree).
bool same_contents(const Relation& a, const Relation& b);

using TuplePredicate = std::function<bool(const std::vector<Value>&)>;

Relation select(const TuplePredicate& pred, const Relation& r);
/// Keeps the named positions in the given order; the others are summed out
/// by weight.
Relation project(const std::vector<std::size_t>& positions, const Relation& r);
/// New position i holds old attribute perm[i].
Relation rename(const std::vector<std::size_t>& perm, const Relation& r);
/// New attribute names, positionally.
Relation relabel(const std::vector<std::string>& names, const Relation& r);

Relation union_of(const Relation& a, const Relation& b);
Relation diff(const Relation& a, const Relation& b);
Relation intersect(const Relation& a, const Relation& b, Metrics* m = nullptr);
Relation cartesian(const Relation& a, const Relation& b);

/// Joint product of all inputs embedded into the union of their attributes
/// (first-appearance order). Wildcard-free results are returned over F[·].
Relation natural_join(const std::vector<Relation>& rs, Metrics* m = nullptr);

enum class OuterKind { Left, Right, Full };
Relation outer_join(OuterKind kind, const Relation& a, const Relation& b, Metrics* m = nullptr);

/// Each input embedded into the joint attribute list (the join's x′, y′, ...).
std::vector<Relation> embed_all(const std::vector<Relation>& rs);

enum class AggKind { Sum, Min, Max, Count };
/// sum: the target value moves into the coefficient; count: coefficient is
/// the group's weight; min/max: one tuple (group..., extreme) per group with
/// coefficient 1, taken over the target values carrying nonzero multiplicity.
Relation aggregate(AggKind kind, const std::vector<std::size_t>& group, std::optional<std::size_t> target,
                   const Relation& r);

/// Named cell functions: upper, lower, length, reverse, neg, abs, succ,
/// pred, not, tostr, id.
struct ColumnFunction {
    std::string name;
    PrimSetPtr domain; // null: any scalar type
    std::function<PrimSetPtr(const PrimSetPtr&)> codomain;
    std::function<Value(const Value&)> fn;
};
const ColumnFunction& column_function(std::string_view name);
std::vector<std::string> column_function_names();

Relation map_col(std::size_t position, const ColumnFunction& f, const Relation& r);

/// db + delta without normalization.
Relation apply_update(const Relation& db, const Relation& delta);

/// Drops tuples with negative multiplicity (ℤ and ℝ only; finite support).
Relation clamp_nonneg(const Relation& r);

} // namespace polyalg
