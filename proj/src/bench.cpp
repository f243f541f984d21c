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

#include "polyalg/bench.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "polyalg/product.hpp"

namespace polyalg {

Term full_bipartite(RingKind ring, std::size_t k) {
    const SpacePtr f = Space::free(ring, PrimSet::int64());
    std::vector<Term> parts;
    parts.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            parts.push_back(tensor(inject(f, Value::integer(static_cast<std::int64_t>(i))),
                                   inject(f, Value::integer(static_cast<std::int64_t>(j)))));
    return sum_of(Space::tensor(f, f), parts);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

BenchReport bench_triangle(const std::vector<std::size_t>& sizes, std::size_t repeats, bool with_naive,
                           std::size_t naive_max_k, RingKind ring) {
    if (sizes.empty()) throw std::invalid_argument("no sizes given");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 2) throw std::invalid_argument("sizes must be at least 2");
        if (i && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sizes must be strictly increasing");
    }
    if (repeats == 0) repeats = 1;
    BenchReport report;
    const std::vector<PrimSetPtr> sets(3, PrimSet::int64());
    for (auto k : sizes) {
        const Term rel = full_bipartite(ring, k);
        BenchRow row;
        row.k = k;
        row.n = k * k;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            TriangleResult r = triangle(rel, rel, rel);
            const double ms = ms_since(t0);
            if (r.rows != k * k * k)
                throw std::runtime_error("triangle k=" + std::to_string(k) + ": got " + std::to_string(r.rows) +
                                         " output rows, expected " + std::to_string(k * k * k));
            if (rep == 0 || ms < row.wall_ms) row.wall_ms = ms;
            row.output_rows = r.rows;
            row.trie_edges = r.metrics.trie_edges;
            row.ring_muls = r.metrics.ring_muls;
            row.lookups = r.metrics.lookups;
        }
        report.rows.push_back(row);

        if (with_naive && k <= naive_max_k) {
            NaiveRow nr;
            nr.k = k;
            nr.n = k * k;
            Metrics m;
            const auto t0 = std::chrono::steady_clock::now();
            const NormalForm naive =
                naive_multiply_all({embed(rel, {0, 1}, sets), embed(rel, {0, 2}, sets), embed(rel, {1, 2}, sets)}, &m);
            nr.wall_ms = ms_since(t0);
            nr.ring_muls = m.ring_muls;
            if (count_leaves(curry(naive)) != k * k * k)
                throw std::runtime_error("naive triangle k=" + std::to_string(k) + ": wrong output size");
            report.naive.push_back(nr);
        }
    }
    if (report.rows.size() >= 2) {
        std::vector<double> n, e, t;
        for (auto& r : report.rows) {
            n.push_back(static_cast<double>(r.n));
            e.push_back(static_cast<double>(r.trie_edges));
            t.push_back(std::max(r.wall_ms, 1e-6));
        }
        report.edge_slope = loglog_slope(n, e);
        report.time_slope = loglog_slope(n, t);
    }
    if (report.naive.size() >= 2) {
        std::vector<double> n, c;
        for (auto& r : report.naive) {
            n.push_back(static_cast<double>(r.n));
            c.push_back(static_cast<double>(r.ring_muls));
        }
        report.naive_slope = loglog_slope(n, c);
    }
    return report;
}

} // namespace polyalg
