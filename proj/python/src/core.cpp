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

// Python bindings: relations, queries, the triangle benchmark and the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "polyalg/bench.hpp"
#include "polyalg/cli.hpp"
#include "polyalg/io.hpp"
#include "polyalg/query.hpp"

namespace py = pybind11;
using namespace polyalg;

namespace {

Value to_value(const py::handle& o) {
    if (py::isinstance<py::bool_>(o)) return Value::boolean(o.cast<bool>());
    if (py::isinstance<py::int_>(o)) return Value::integer(o.cast<std::int64_t>());
    if (py::isinstance<py::str>(o)) return Value::string(o.cast<std::string>());
    throw py::type_error("cell values must be int, str or bool, got " + std::string(py::str(o.get_type())));
}

py::object from_value(const Value& v) {
    if (v.is_int()) return py::int_(v.as_int());
    if (v.is_bool()) return py::bool_(v.as_bool());
    if (v.is_str()) return py::str(v.as_str());
    return py::str(v.to_string());
}

py::object from_scalar(const Scalar& s) {
    switch (s.ring()) {
    case RingKind::GF2: return py::int_(s.as_bool() ? 1 : 0);
    case RingKind::Real: return py::float_(s.as_real());
    case RingKind::Integer: break;
    }
    // Arbitrary precision goes through decimal text.
    return py::module_::import("builtins").attr("int")(s.to_string());
}

Scalar to_scalar(RingKind ring, const py::handle& o) {
    if (ring == RingKind::Real && py::isinstance<py::float_>(o)) return Scalar::from_real(o.cast<double>());
    if (py::isinstance<py::bool_>(o)) return Scalar::from_int(ring, o.cast<bool>() ? 1 : 0);
    return Scalar::parse(ring, py::str(o).cast<std::string>());
}

py::list rows_of(const Relation& r) {
    py::list out;
    for (auto& row : r.rows()) {
        py::tuple cells(row.cells.size());
        for (std::size_t i = 0; i < row.cells.size(); ++i)
            cells[i] = row.cells[i].kind == Cell::Kind::Wild ? py::none() : from_value(row.cells[i].value);
        out.append(py::make_tuple(cells, from_scalar(row.coef)));
    }
    return out;
}

Relation make_relation(const std::string& schema, const py::iterable& rows, const std::string& ring) {
    const Schema s = Schema::parse(schema);
    const RingKind k = parse_ring(ring);
    std::vector<BasisRow> out;
    for (const py::handle item : rows) {
        // Either a bare tuple of cells or (cells, weight); cells are never tuples.
        py::tuple t = py::reinterpret_borrow<py::object>(item).cast<py::tuple>();
        py::tuple cells = t;
        Scalar coef = Scalar::one(k);
        if (t.size() == 2 && py::isinstance<py::tuple>(t[0])) {
            cells = t[0].cast<py::tuple>();
            coef = to_scalar(k, t[1]);
        }
        if (cells.size() != s.size())
            throw QueryError("row has " + std::to_string(cells.size()) + " cells, schema has " + std::to_string(s.size()));
        BasisRow row{{}, coef};
        for (const py::handle c : cells) row.cells.push_back(c.is_none() ? Cell::wild() : Cell::key_of(to_value(c)));
        out.push_back(std::move(row));
    }
    return Relation::from_rows(s, k, out);
}

py::dict metrics_dict(const Metrics& m) {
    py::dict d;
    d["trie_edges"] = m.trie_edges;
    d["ring_muls"] = m.ring_muls;
    d["lookups"] = m.lookups;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Relations as module elements, with worst-case optimal joins.";

    py::register_exception<QueryError>(m, "QueryError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<SpaceError>(m, "SpaceError", PyExc_TypeError);
    py::register_exception<RingMismatch>(m, "RingMismatch", PyExc_TypeError);

    py::class_<Relation>(m, "Relation")
        .def(py::init(&make_relation), py::arg("schema"), py::arg("rows"), py::arg("ring") = "z",
             "Rows are tuples of cells, or (cells, weight) pairs. None is a wildcard.")
        .def_static(
            "from_csv",
            [](const std::string& text, const std::string& schema, const std::string& ring) {
                return relation_from_csv(text, Schema::parse(schema), parse_ring(ring));
            },
            py::arg("text"), py::arg("schema"), py::arg("ring") = "z")
        .def_static(
            "load",
            [](const std::string& path, const std::string& schema, const std::string& ring) {
                return load_csv(path, Schema::parse(schema), parse_ring(ring));
            },
            py::arg("path"), py::arg("schema"), py::arg("ring") = "z")
        .def_property_readonly("schema", [](const Relation& r) { return r.schema.to_string(); })
        .def_property_readonly("attributes",
                               [](const Relation& r) {
                                   std::vector<std::string> names;
                                   for (auto& a : r.schema.attributes()) names.push_back(a.name);
                                   return names;
                               })
        .def_property_readonly("ring", [](const Relation& r) { return std::string(ring_name(r.ring)); })
        .def_property_readonly("has_baseline", &Relation::has_baseline)
        .def_property_readonly("weight", [](const Relation& r) { return from_scalar(r.weight()); })
        .def("rows", &rows_of, "Basis rows in ascending order as (cells, coefficient).")
        .def(
            "render", [](const Relation& r, const std::string& format) { return render_relation(r, parse_format(format)); },
            py::arg("format") = "table")
        .def("same_contents", &same_contents)
        .def("__len__", [](const Relation& r) { return r.rows().size(); })
        .def("__repr__", [](const Relation& r) {
            return "<Relation " + r.schema.to_string() + " over " + std::string(ring_name(r.ring)) + ", " +
                   std::to_string(r.rows().size()) + " rows>";
        });

    m.def(
        "query",
        [](const std::string& expr, const std::map<std::string, Relation>& relations, bool stats) -> py::object {
            const QueryExpr q = parse_query(expr);
            Metrics metrics;
            Relation r = evaluate(
                q,
                [&](const std::string& name) {
                    auto it = relations.find(name);
                    if (it == relations.end()) throw QueryError("unknown relation " + name);
                    return it->second;
                },
                &metrics);
            if (!stats) return py::cast(std::move(r));
            return py::make_tuple(std::move(r), metrics_dict(metrics));
        },
        py::arg("expr"), py::arg("relations"), py::arg("stats") = false,
        "Evaluates an s-expression query. With stats=True returns (relation, metrics).");

    m.def(
        "canonical", [](const std::string& expr) { return to_sexpr(parse_query(expr)); }, py::arg("expr"));

    m.def(
        "bench_triangle",
        [](const std::vector<std::size_t>& sizes, std::size_t repeats, bool with_naive) {
            const BenchReport rep = bench_triangle(sizes, repeats, with_naive);
            py::list rows;
            for (auto& r : rep.rows) {
                py::dict d;
                d["k"] = r.k;
                d["n"] = r.n;
                d["output_rows"] = r.output_rows;
                d["wall_ms"] = r.wall_ms;
                d["trie_edges"] = r.trie_edges;
                d["ring_muls"] = r.ring_muls;
                d["lookups"] = r.lookups;
                rows.append(d);
            }
            py::dict out;
            out["rows"] = rows;
            out["edge_slope"] = rep.edge_slope;
            out["time_slope"] = rep.time_slope;
            out["naive_slope"] = rep.naive_slope ? py::object(py::float_(*rep.naive_slope)) : py::object(py::none());
            return out;
        },
        py::arg("sizes"), py::arg("repeats") = 1, py::arg("with_naive") = false);

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int rc = run_cli(args, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr).");
}
