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

#include "polyalg/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyalg/bench.hpp"
#include "polyalg/io.hpp"
#include "polyalg/query.hpp"

namespace polyalg {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(digits) << v;
    return o.str();
}

RingKind ring_arg(const std::string& s) {
    try {
        return parse_ring(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("unknown ring '" + s + "' (z, gf2, real)");
    }
}

OutputFormat format_arg(const std::string& s) {
    try {
        return parse_format(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void print_bench(const BenchReport& r, bool as_json, std::ostream& out) {
    if (as_json) {
        nlohmann::ordered_json j;
        auto rows = nlohmann::ordered_json::array();
        for (auto& row : r.rows)
            rows.push_back({{"k", row.k},
                            {"n", row.n},
                            {"output_rows", row.output_rows},
                            {"wall_ms", row.wall_ms},
                            {"trie_edges", row.trie_edges},
                            {"ring_muls", row.ring_muls},
                            {"lookups", row.lookups}});
        j["rows"] = rows;
        j["edge_slope"] = r.edge_slope;
        j["time_slope"] = r.time_slope;
        auto naive = nlohmann::ordered_json::array();
        for (auto& row : r.naive)
            naive.push_back({{"k", row.k}, {"n", row.n}, {"wall_ms", row.wall_ms}, {"ring_muls", row.ring_muls}});
        j["naive"] = naive;
        if (r.naive_slope)
            j["naive_slope"] = *r.naive_slope;
        else
            j["naive_slope"] = nullptr;
        out << j.dump(2) << "\n";
        return;
    }
    out << std::left << std::setw(6) << "k" << std::setw(8) << "n" << std::setw(10) << "rows" << std::setw(12)
        << "wall_ms" << std::setw(12) << "trie_edges" << std::setw(11) << "ring_muls"
        << "lookups\n";
    for (auto& row : r.rows)
        out << std::setw(6) << row.k << std::setw(8) << row.n << std::setw(10) << row.output_rows << std::setw(12)
            << fixed(row.wall_ms, 3) << std::setw(12) << row.trie_edges << std::setw(11) << row.ring_muls << row.lookups
            << "\n";
    if (r.rows.size() >= 2) {
        out << "slope trie_edges~n: " << fixed(r.edge_slope, 3) << "\n";
        out << "slope wall_ms~n:    " << fixed(r.time_slope, 3) << "\n";
    }
    if (!r.naive.empty()) {
        out << "naive binary folding\n";
        out << std::setw(6) << "k" << std::setw(8) << "n" << std::setw(12) << "wall_ms"
            << "ring_muls\n";
        for (auto& row : r.naive)
            out << std::setw(6) << row.k << std::setw(8) << row.n << std::setw(12) << fixed(row.wall_ms, 3) << row.ring_muls
                << "\n";
        if (r.naive_slope) out << "slope naive ring_muls~n: " << fixed(*r.naive_slope, 3) << "\n";
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polyalg: relations as module elements"};
    app.name("polyalg");
    app.require_subcommand(1);
    std::string catalog_path = "polyalg-catalog.json";
    app.add_option("--catalog", catalog_path, "catalog manifest (JSON)");

    auto* load = app.add_subcommand("load", "register a CSV file as a relation");
    std::string csv_path, as_name, schema_decl, ring_name_arg;
    load->add_option("csv", csv_path, "CSV file")->required();
    load->add_option("--as", as_name, "relation name")->required();
    load->add_option("--schema", schema_decl, "attributes, e.g. A:str,B:int")->required();
    load->add_option("--ring", ring_name_arg, "z, gf2 or real");
    load->add_option("--catalog", catalog_path, "catalog manifest (JSON)");

    auto* query = app.add_subcommand("query", "evaluate an s-expression query");
    std::string query_text, format = "table", query_ring;
    bool stats = false;
    query->add_option("expr", query_text, "query, e.g. (join x y)")->required();
    query->add_flag("--stats", stats, "append operation counts");
    query->add_option("--format", format, "table, csv or json");
    query->add_option("--ring", query_ring, "override the catalog ring");
    query->add_option("--catalog", catalog_path, "catalog manifest (JSON)");

    auto* show = app.add_subcommand("show", "print a stored relation");
    std::string show_name;
    show->add_option("name", show_name, "relation name")->required();
    show->add_option("--format", format, "table, csv or json");
    show->add_option("--catalog", catalog_path, "catalog manifest (JSON)");

    auto* bench = app.add_subcommand("bench", "benchmarks");
    std::string bench_what;
    std::vector<std::size_t> sizes{8, 16, 32, 64};
    std::size_t repeats = 3;
    bool with_naive = false;
    bench->add_option("what", bench_what, "benchmark name (triangle)")->required();
    bench->add_option("--sizes", sizes, "k values, comma separated")->delimiter(',');
    bench->add_option("--repeats", repeats, "runs per size (best time is kept)");
    bench->add_flag("--with-naive", with_naive, "also run naive binary folding for k <= 16");
    bench->add_option("--format", format, "table or json");
    bench->add_option("--catalog", catalog_path, "unused");

    std::vector<const char*> argv{"polyalg"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*load) {
            Schema schema = Schema::parse(schema_decl);
            Catalog cat = Catalog::load(catalog_path);
            if (!ring_name_arg.empty()) cat.ring = ring_arg(ring_name_arg);
            const std::string abs = std::filesystem::absolute(csv_path).lexically_normal().string();
            Relation r = load_csv(abs, schema, cat.ring);
            cat.relations[as_name] = Catalog::Entry{abs, schema.to_string()};
            cat.save(catalog_path);
            out << "loaded " << as_name << " (" << schema.to_string() << ") over " << ring_name(cat.ring) << ": "
                << r.rows().size() << " distinct rows\n";
            return kExitOk;
        }
        if (*query) {
            const OutputFormat f = format_arg(format);
            const QueryExpr q = parse_query(query_text);
            Catalog cat = Catalog::load(catalog_path);
            if (!query_ring.empty()) cat.ring = ring_arg(query_ring);
            RunStats rs;
            const auto t0 = std::chrono::steady_clock::now();
            Relation r = evaluate(q, [&](const std::string& name) { return cat.get(name); }, &rs.metrics);
            const std::string text = render_relation(r, f, nullptr);
            rs.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out << (stats ? render_relation(r, f, &rs) : text);
            return kExitOk;
        }
        if (*show) {
            const OutputFormat f = format_arg(format);
            Catalog cat = Catalog::load(catalog_path);
            out << render_relation(cat.get(show_name), f);
            return kExitOk;
        }
        if (*bench) {
            if (bench_what != "triangle") throw UsageError("unknown benchmark '" + bench_what + "' (triangle)");
            if (format != "table" && format != "json") throw UsageError("bench prints table or json");
            BenchReport r;
            try {
                r = bench_triangle(sizes, repeats, with_naive);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            print_bench(r, format == "json", out);
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

} // namespace polyalg
