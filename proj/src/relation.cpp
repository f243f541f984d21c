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

#include "polyalg/relation.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "polyalg/linear.hpp"
#include "polyalg/product.hpp"

namespace polyalg {

// ---------------------------------------------------------------------------
// Schema

Schema::Schema(std::vector<Attribute> attrs) : attrs_(std::move(attrs)) {
    std::set<std::string> seen;
    for (auto& a : attrs_) {
        if (a.name.empty()) throw QueryError("empty attribute name");
        if (!seen.insert(a.name).second) throw QueryError("duplicate attribute " + a.name);
    }
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

Schema Schema::parse(std::string_view decl) {
    std::vector<Attribute> attrs;
    std::size_t start = 0;
    while (start <= decl.size()) {
        const std::size_t comma = std::min(decl.find(',', start), decl.size());
        const std::string item = trim(decl.substr(start, comma - start));
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("schema entry '" + item + "' is not name:type");
        attrs.push_back(Attribute{trim(std::string_view(item).substr(0, colon)),
                                  PrimSet::parse_scalar_type(trim(std::string_view(item).substr(colon + 1)))});
        start = comma + 1;
    }
    try {
        return Schema(std::move(attrs));
    } catch (const QueryError& e) {
        throw std::invalid_argument(e.what());
    }
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
    for (std::size_t i = 0; i < attrs_.size(); ++i)
        if (attrs_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Schema::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw QueryError("unknown attribute " + std::string(name) + " in (" + to_string() + ")");
}

std::vector<PrimSetPtr> Schema::types() const {
    std::vector<PrimSetPtr> out;
    for (auto& a : attrs_) out.push_back(a.type);
    return out;
}

std::string Schema::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < attrs_.size(); ++i) out += (i ? "," : "") + attrs_[i].name + ":" + attrs_[i].type->to_string();
    return out;
}

bool operator==(const Schema& a, const Schema& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || !same_set(a[i].type, b[i].type)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Relation basics

namespace {

SpacePtr nest(const std::vector<SpacePtr>& leaves, RingKind ring) {
    if (leaves.empty()) return Space::scalar(ring);
    SpacePtr out = leaves.back();
    for (std::size_t i = leaves.size() - 1; i-- > 0;) out = Space::tensor(leaves[i], out);
    return out;
}

std::vector<Value> row_values(const BasisRow& row) {
    std::vector<Value> out;
    out.reserve(row.cells.size());
    for (auto& c : row.cells) out.push_back(c.value);
    return out;
}

void require_no_baseline(const Relation& r, const char* what) {
    if (r.has_baseline()) throw QueryError(std::string(what) + ": the relation has wildcard rows (infinite support)");
}

} // namespace

SpacePtr Relation::space_for(const Schema& s, RingKind ring, bool compact) {
    std::vector<SpacePtr> leaves;
    for (auto& a : s.attributes()) leaves.push_back(compact ? Space::compact_free(ring, a.type) : Space::free(ring, a.type));
    return nest(leaves, ring);
}

Relation Relation::empty(Schema s, RingKind ring) {
    SpacePtr sp = space_for(s, ring);
    return Relation{std::move(s), ring, zero(sp)};
}

Relation Relation::from_rows(Schema s, RingKind ring, const std::vector<BasisRow>& rows) {
    const bool compact = std::any_of(rows.begin(), rows.end(), [](const BasisRow& r) {
        return std::any_of(r.cells.begin(), r.cells.end(), [](const Cell& c) { return c.kind == Cell::Kind::Wild; });
    });
    const SpacePtr space = space_for(s, ring, compact);
    std::vector<SpacePtr> leaves = attribute_spaces(space);
    std::vector<Term> parts;
    parts.reserve(rows.size());
    for (auto& row : rows) {
        if (row.cells.size() != s.size()) throw QueryError("row arity does not match schema (" + s.to_string() + ")");
        if (row.coef.is_zero()) continue;
        if (s.size() == 0) {
            parts.push_back(scalar(row.coef));
            continue;
        }
        auto cell_term = [&](std::size_t i) {
            const Cell& c = row.cells[i];
            if (c.kind == Cell::Kind::Wild) return wild_one(leaves[i]);
            if (c.kind != Cell::Kind::Key) throw QueryError("unexpected cell in relation row");
            return inject(leaves[i], c.value);
        };
        Term t = cell_term(s.size() - 1);
        for (std::size_t i = s.size() - 1; i-- > 0;) t = tensor(cell_term(i), t);
        parts.push_back(row.coef.is_one() ? t : scale(row.coef, t));
    }
    return Relation{std::move(s), ring, sum_of(space, parts)};
}

Relation Relation::from_tuples(Schema s, RingKind ring, const std::vector<std::vector<Value>>& tuples) {
    std::vector<BasisRow> rows;
    rows.reserve(tuples.size());
    for (auto& t : tuples) {
        BasisRow row{{}, Scalar::one(ring)};
        for (auto& v : t) row.cells.push_back(Cell::key_of(v));
        rows.push_back(std::move(row));
    }
    return from_rows(std::move(s), ring, rows);
}

NormalForm Relation::curried() const { return curry(normalize(data)); }

std::vector<BasisRow> Relation::rows() const { return enumerate(curried(), true); }

bool Relation::has_baseline() const { return has_any_baseline(normalize(data)); }

Scalar Relation::weight() const { return polyalg::weight(data); }

bool same_contents(const Relation& a, const Relation& b) {
    if (!(a.schema == b.schema) || a.ring != b.ring) return false;
    const auto ra = a.rows();
    const auto rb = b.rows();
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (ra[i].cells != rb[i].cells || !(ra[i].coef == rb[i].coef)) return false;
    return true;
}

namespace {

Relation from_curried(Schema s, RingKind ring, const NormalForm& nf) {
    return Relation::from_rows(std::move(s), ring, enumerate(nf, true));
}

void require_same_ring(const Relation& a, const Relation& b, const char* what) {
    if (a.ring != b.ring)
        throw QueryError(std::string(what) + ": relations over different rings (" + std::string(ring_name(a.ring)) + " and " +
                         std::string(ring_name(b.ring)) + ")");
}

// Brings both data terms into one space: same schema required.
std::pair<Term, Term> align(const Relation& a, const Relation& b, const char* what) {
    require_same_ring(a, b, what);
    if (!(a.schema == b.schema))
        throw QueryError(std::string(what) + ": schemas differ (" + a.schema.to_string() + " vs " + b.schema.to_string() + ")");
    if (same_space(a.data.space(), b.data.space())) return {a.data, b.data};
    Term x = right_nest(a.data), y = right_nest(b.data);
    if (same_space(x.space(), y.space())) return {x, y};
    std::vector<std::size_t> pos(a.schema.size());
    std::iota(pos.begin(), pos.end(), 0);
    const auto types = a.schema.types();
    return {embed(x, pos, types), embed(y, pos, types)};
}

void check_positions(const Schema& s, const std::vector<std::size_t>& positions, const char* what) {
    std::set<std::size_t> seen;
    for (auto p : positions) {
        if (p >= s.size()) throw QueryError(std::string(what) + ": position out of range");
        if (!seen.insert(p).second) throw QueryError(std::string(what) + ": repeated attribute " + s[p].name);
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Selection, projection, renaming

Relation select(const TuplePredicate& pred, const Relation& r) {
    require_no_baseline(r, "select");
    std::vector<BasisRow> kept;
    for (auto& row : r.rows())
        if (pred(row_values(row))) kept.push_back(row);
    return Relation::from_rows(r.schema, r.ring, kept);
}

namespace {

SpacePtr projected_space(const SpacePtr& s, const std::vector<bool>& keep, std::size_t offset) {
    if (s->kind() == Space::Kind::Scalar) return s;
    if (s->kind() != Space::Kind::Tensor) return keep[offset] ? s : Space::scalar(s->ring());
    const std::size_t nl = attribute_spaces(s->first()).size();
    SpacePtr a = projected_space(s->first(), keep, offset);
    SpacePtr b = projected_space(s->second(), keep, offset + nl);
    if (a->kind() == Space::Kind::Scalar) return b;
    if (b->kind() == Space::Kind::Scalar) return a;
    return Space::tensor(a, b);
}

Term times_weight(const Term& scalar_term, const Term& x) {
    const Scalar w = weight(scalar_term);
    return w.is_one() ? x : scale(w, x);
}

// π built from the projections and ⊗-functoriality: dropped leaves become
// their weight.
Term project_term(const Term& x, const std::vector<bool>& keep, std::size_t offset) {
    const SpacePtr& s = x.space();
    if (s->kind() == Space::Kind::Scalar) return x;
    if (s->kind() != Space::Kind::Tensor) return keep[offset] ? x : scalar(weight(x));
    const std::size_t nl = attribute_spaces(s->first()).size();
    const SpacePtr target = projected_space(s, keep, offset);
    return extend(x, target, [&](const Term& g) {
        Term p = project_term(g.a(), keep, offset);
        Term q = project_term(g.b(), keep, offset + nl);
        if (p.space()->kind() == Space::Kind::Scalar) return times_weight(p, q);
        if (q.space()->kind() == Space::Kind::Scalar) return times_weight(q, p);
        return tensor(p, q);
    });
}

// Right-nested x with leaf j moved to the front: leaf_j ⊗ (others in order).
Term move_to_front(const Term& x, std::size_t j) {
    if (j == 0) return x;
    auto leaves = attribute_spaces(x.space());
    SpacePtr moved = leaves[j];
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(j));
    leaves.insert(leaves.begin(), moved);
    const SpacePtr target = nest(leaves, x.space()->ring());
    return extend(x, target, [&](const Term& g) {
        const Term u = g.a();
        if (j == 1 && g.b().space()->kind() != Space::Kind::Tensor) return tensor(g.b(), u); // β
        const Term r = move_to_front(g.b(), j - 1);
        return extend(r, target, [&](const Term& h) { return tensor(h.a(), tensor(u, h.b())); }); // α and β
    });
}

Term permute(const Term& x, const std::vector<std::size_t>& perm) {
    if (perm.size() <= 1) return x;
    const std::size_t j = perm[0];
    const Term y = move_to_front(x, j);
    std::vector<std::size_t> tail;
    for (std::size_t i = 1; i < perm.size(); ++i) tail.push_back(perm[i] < j ? perm[i] : perm[i] - 1);
    bool identity = true;
    for (std::size_t i = 0; i < tail.size(); ++i) identity = identity && tail[i] == i;
    if (identity) return y;
    auto leaves = attribute_spaces(x.space());
    std::vector<SpacePtr> out;
    for (auto p : perm) out.push_back(leaves[p]);
    const SpacePtr target = nest(out, x.space()->ring());
    return extend(y, target, [&](const Term& g) { return tensor(g.a(), permute(g.b(), tail)); });
}

} // namespace

Relation project(const std::vector<std::size_t>& positions, const Relation& r) {
    if (positions.empty()) throw QueryError("project: no attributes given");
    check_positions(r.schema, positions, "project");
    std::vector<bool> keep(r.schema.size());
    for (auto p : positions) keep[p] = true;
    std::vector<Attribute> attrs;
    for (std::size_t i = 0; i < r.schema.size(); ++i)
        if (keep[i]) attrs.push_back(r.schema[i]);
    Relation out{Schema(std::move(attrs)), r.ring, project_term(r.data, keep, 0)};
    // Reorder to the requested order.
    std::vector<std::size_t> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == positions) return out;
    std::vector<std::size_t> perm;
    for (auto p : positions) perm.push_back(static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), p) - sorted.begin()));
    return rename(perm, out);
}

Relation rename(const std::vector<std::size_t>& perm, const Relation& r) {
    if (perm.size() != r.schema.size()) throw QueryError("rename: permutation must list every attribute once");
    check_positions(r.schema, perm, "rename");
    std::vector<Attribute> attrs;
    for (auto p : perm) attrs.push_back(r.schema[p]);
    return Relation{Schema(std::move(attrs)), r.ring, permute(right_nest(r.data), perm)};
}

Relation relabel(const std::vector<std::string>& names, const Relation& r) {
    if (names.size() != r.schema.size()) throw QueryError("relabel: expected " + std::to_string(r.schema.size()) + " names");
    std::vector<Attribute> attrs;
    for (std::size_t i = 0; i < names.size(); ++i) attrs.push_back(Attribute{names[i], r.schema[i].type});
    return Relation{Schema(std::move(attrs)), r.ring, r.data};
}

// ---------------------------------------------------------------------------
// Set-like operations

Relation union_of(const Relation& a, const Relation& b) {
    auto [x, y] = align(a, b, "union");
    return Relation{a.schema, a.ring, add(x, y)};
}

Relation diff(const Relation& a, const Relation& b) {
    auto [x, y] = align(a, b, "diff");
    return Relation{a.schema, a.ring, sub(x, y)};
}

Relation intersect(const Relation& a, const Relation& b, Metrics* m) {
    auto [x, y] = align(a, b, "intersect");
    const NormalForm nf = multiply_curried({curry(normalize(x)), curry(normalize(y))}, m);
    return from_curried(a.schema, a.ring, nf);
}

Relation cartesian(const Relation& a, const Relation& b) {
    require_same_ring(a, b, "product");
    std::vector<Attribute> attrs = a.schema.attributes();
    for (auto& at : b.schema.attributes()) {
        if (a.schema.find(at.name)) throw QueryError("product: attribute " + at.name + " occurs on both sides");
        attrs.push_back(at);
    }
    Schema s(std::move(attrs));
    if (a.schema.size() == 0) return Relation{std::move(s), a.ring, times_weight(a.data, b.data)};
    if (b.schema.size() == 0) return Relation{std::move(s), a.ring, times_weight(b.data, a.data)};
    return Relation{std::move(s), a.ring, tensor(a.data, b.data)};
}

// ---------------------------------------------------------------------------
// Joins

namespace {

struct Embedded {
    Schema schema;
    std::vector<Term> terms;
};

Embedded embed_terms(const std::vector<Relation>& rs) {
    if (rs.empty()) throw QueryError("join: no inputs");
    std::vector<Attribute> attrs;
    for (auto& r : rs) {
        require_same_ring(rs.front(), r, "join");
        for (auto& at : r.schema.attributes()) {
            bool found = false;
            for (auto& t : attrs)
                if (t.name == at.name) {
                    found = true;
                    if (!same_set(t.type, at.type))
                        throw QueryError("join: attribute " + at.name + " has type " + t.type->to_string() + " and " +
                                         at.type->to_string());
                }
            if (!found) attrs.push_back(at);
        }
    }
    Embedded out{Schema(attrs), {}};
    const auto types = out.schema.types();
    for (auto& r : rs) {
        std::vector<std::size_t> pos;
        for (auto& at : r.schema.attributes()) pos.push_back(*out.schema.find(at.name));
        Term data = r.data;
        if (!std::is_sorted(pos.begin(), pos.end())) {
            std::vector<std::size_t> perm(pos.size());
            std::iota(perm.begin(), perm.end(), 0);
            std::sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) { return pos[i] < pos[j]; });
            data = rename(perm, r).data;
            std::sort(pos.begin(), pos.end());
        }
        out.terms.push_back(embed(data, pos, types));
    }
    return out;
}

NormalForm joint_product(const std::vector<Term>& terms, Metrics* m) {
    std::vector<NormalForm> factors;
    factors.reserve(terms.size());
    for (auto& t : terms) factors.push_back(curry(normalize(t)));
    return multiply_curried(factors, m);
}

} // namespace

std::vector<Relation> embed_all(const std::vector<Relation>& rs) {
    Embedded e = embed_terms(rs);
    std::vector<Relation> out;
    for (auto& t : e.terms) out.push_back(Relation{e.schema, rs.front().ring, t});
    return out;
}

Relation natural_join(const std::vector<Relation>& rs, Metrics* m) {
    if (rs.size() == 1) return rs.front();
    Embedded e = embed_terms(rs);
    return from_curried(e.schema, rs.front().ring, joint_product(e.terms, m));
}

Relation outer_join(OuterKind kind, const Relation& a, const Relation& b, Metrics* m) {
    Embedded e = embed_terms({a, b});
    const Term unit = unit_one(e.terms[0].space());
    Term x = e.terms[0], y = e.terms[1];
    if (kind != OuterKind::Left) x = add(x, unit);
    if (kind != OuterKind::Right) y = add(y, unit);
    return from_curried(e.schema, a.ring, joint_product({x, y}, m));
}

// ---------------------------------------------------------------------------
// Aggregation

Relation aggregate(AggKind kind, const std::vector<std::size_t>& group, std::optional<std::size_t> target,
                   const Relation& r) {
    check_positions(r.schema, group, "agg");
    if (kind != AggKind::Count && !target) throw QueryError("agg: a target attribute is required");
    if (target) {
        if (*target >= r.schema.size()) throw QueryError("agg: target out of range");
        if (std::find(group.begin(), group.end(), *target) != group.end())
            throw QueryError("agg: target " + r.schema[*target].name + " is also a grouping attribute");
    }
    require_no_baseline(r, "agg");
    std::vector<Attribute> attrs;
    for (auto g : group) attrs.push_back(r.schema[g]);
    auto key_of = [&](const BasisRow& row) {
        std::vector<Value> k;
        for (auto g : group) k.push_back(row.cells[g].value);
        return k;
    };
    std::vector<BasisRow> out;
    auto emit = [&](const std::vector<Value>& k, std::optional<Value> extra, Scalar c) {
        BasisRow row{{}, std::move(c)};
        for (auto& v : k) row.cells.push_back(Cell::key_of(v));
        if (extra) row.cells.push_back(Cell::key_of(*extra));
        out.push_back(std::move(row));
    };

    switch (kind) {
    case AggKind::Count:
    case AggKind::Sum: {
        if (kind == AggKind::Sum) {
            if (r.ring == RingKind::GF2) throw QueryError("agg sum: not available over gf2 (use count for parity)");
            if (r.schema[*target].type->kind() != PrimSet::Kind::Int64)
                throw QueryError("agg sum: attribute " + r.schema[*target].name + " is not int");
        }
        std::map<std::vector<Value>, Scalar> acc;
        for (auto& row : r.rows()) {
            Scalar c = row.coef;
            if (kind == AggKind::Sum) {
                const std::int64_t v = row.cells[*target].value.as_int();
                c = c * (r.ring == RingKind::Real ? Scalar::from_real(static_cast<double>(v)) : Scalar::from_int(r.ring, v));
            }
            auto [it, fresh] = acc.try_emplace(key_of(row), c);
            if (!fresh) it->second += c;
        }
        for (auto& [k, c] : acc)
            if (!c.is_zero()) emit(k, std::nullopt, c);
        return Relation::from_rows(Schema(std::move(attrs)), r.ring, out);
    }
    case AggKind::Min:
    case AggKind::Max: {
        // Group into F[group] ⊗ F[sets of target values], then fold each set.
        std::map<std::vector<Value>, std::map<Value, Scalar>> groups;
        for (auto& row : r.rows()) {
            auto& members = groups[key_of(row)];
            auto [it, fresh] = members.try_emplace(row.cells[*target].value, row.coef);
            if (!fresh) it->second += row.coef;
        }
        attrs.push_back(r.schema[*target]);
        for (auto& [k, members] : groups) {
            std::optional<Value> best;
            for (auto& [v, c] : members) {
                if (c.is_zero()) continue;
                if (!best || (kind == AggKind::Min ? v < *best : *best < v)) best = v;
            }
            if (best) emit(k, best, Scalar::one(r.ring));
        }
        return Relation::from_rows(Schema(std::move(attrs)), r.ring, out);
    }
    }
    throw QueryError("agg: unknown fold");
}

// ---------------------------------------------------------------------------
// Column functions

namespace {

std::int64_t checked(std::int64_t v, bool ok, const char* what) {
    if (!ok) throw QueryError(std::string(what) + ": integer overflow");
    return v;
}

std::vector<ColumnFunction> make_registry() {
    const auto same = [](const PrimSetPtr& t) { return t; };
    const auto to_int = [](const PrimSetPtr&) { return PrimSet::int64(); };
    const auto to_str = [](const PrimSetPtr&) { return PrimSet::str(); };
    constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    std::vector<ColumnFunction> r;
    r.push_back({"upper", PrimSet::str(), same, [](const Value& v) {
                     std::string s = v.as_str();
                     for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
                     return Value::string(std::move(s));
                 }});
    r.push_back({"lower", PrimSet::str(), same, [](const Value& v) {
                     std::string s = v.as_str();
                     for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
                     return Value::string(std::move(s));
                 }});
    r.push_back({"length", PrimSet::str(), to_int, [](const Value& v) {
                     // Code points, not bytes.
                     std::int64_t n = 0;
                     for (unsigned char ch : v.as_str()) n += (ch & 0xC0) != 0x80;
                     return Value::integer(n);
                 }});
    r.push_back({"reverse", PrimSet::str(), same, [](const Value& v) {
                     std::string s = v.as_str();
                     std::reverse(s.begin(), s.end());
                     return Value::string(std::move(s));
                 }});
    r.push_back({"neg", PrimSet::int64(), same,
                 [=](const Value& v) { return Value::integer(checked(-v.as_int(), v.as_int() != kMin, "neg")); }});
    r.push_back({"abs", PrimSet::int64(), same, [=](const Value& v) {
                     return Value::integer(checked(v.as_int() < 0 ? -v.as_int() : v.as_int(), v.as_int() != kMin, "abs"));
                 }});
    r.push_back({"succ", PrimSet::int64(), same,
                 [=](const Value& v) { return Value::integer(checked(v.as_int() + 1, v.as_int() != kMax, "succ")); }});
    r.push_back({"pred", PrimSet::int64(), same,
                 [=](const Value& v) { return Value::integer(checked(v.as_int() - 1, v.as_int() != kMin, "pred")); }});
    r.push_back({"not", PrimSet::boolean(), same, [](const Value& v) { return Value::boolean(!v.as_bool()); }});
    r.push_back({"tostr", nullptr, to_str, [](const Value& v) { return Value::string(v.to_string()); }});
    r.push_back({"id", nullptr, same, [](const Value& v) { return v; }});
    return r;
}

const std::vector<ColumnFunction>& registry() {
    static const std::vector<ColumnFunction> r = make_registry();
    return r;
}

Term map_at(const Term& x, std::size_t pos, const ColumnFunction& f, const PrimSetPtr& cod) {
    const SpacePtr& s = x.space();
    if (s->kind() != Space::Kind::Tensor) return free_map(f.fn, cod, x);
    auto leaves = attribute_spaces(s);
    leaves[pos] = leaves[pos]->kind() == Space::Kind::CompactFree ? Space::compact_free(s->ring(), cod)
                                                                  : Space::free(s->ring(), cod);
    const SpacePtr target = nest(leaves, s->ring());
    if (pos == 0) return extend(x, target, [&](const Term& g) { return tensor(free_map(f.fn, cod, g.a()), g.b()); });
    return extend(x, target, [&](const Term& g) { return tensor(g.a(), map_at(g.b(), pos - 1, f, cod)); });
}

} // namespace

const ColumnFunction& column_function(std::string_view name) {
    for (auto& f : registry())
        if (f.name == name) return f;
    throw QueryError("unknown function " + std::string(name));
}

std::vector<std::string> column_function_names() {
    std::vector<std::string> out;
    for (auto& f : registry()) out.push_back(f.name);
    return out;
}

Relation map_col(std::size_t position, const ColumnFunction& f, const Relation& r) {
    if (position >= r.schema.size()) throw QueryError("map: position out of range");
    const PrimSetPtr& type = r.schema[position].type;
    if (f.domain && !same_set(f.domain, type))
        throw QueryError("map " + f.name + ": attribute " + r.schema[position].name + " has type " + type->to_string() +
                         ", expected " + f.domain->to_string());
    const PrimSetPtr cod = f.codomain(type);
    std::vector<Attribute> attrs = r.schema.attributes();
    attrs[position].type = cod;
    return Relation{Schema(std::move(attrs)), r.ring, map_at(right_nest(r.data), position, f, cod)};
}

// ---------------------------------------------------------------------------
// Updates

Relation apply_update(const Relation& db, const Relation& delta) {
    auto [x, y] = align(db, delta, "update");
    return Relation{db.schema, db.ring, add(x, y)};
}

Relation clamp_nonneg(const Relation& r) {
    if (r.ring == RingKind::GF2) throw QueryError("clamp: gf2 has no order");
    require_no_baseline(r, "clamp");
    std::vector<BasisRow> kept;
    for (auto& row : r.rows())
        if (!row.coef.is_negative()) kept.push_back(row);
    return Relation::from_rows(r.schema, r.ring, kept);
}

} // namespace polyalg
