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

#include <cstdint>
#include <optional>
#include <vector>

#include "polyalg/term.hpp"

namespace polyalg {

struct BenchRow {
    std::size_t k = 0;
    std::size_t n = 0;           // tuples per input relation (k²)
    std::size_t output_rows = 0; // checked to be k³
    double wall_ms = 0;          // best of the repeats
    std::uint64_t trie_edges = 0;
    std::uint64_t ring_muls = 0;
    std::uint64_t lookups = 0;
};

struct NaiveRow {
    std::size_t k = 0;
    std::size_t n = 0;
    double wall_ms = 0;
    std::uint64_t ring_muls = 0; // distributed term products examined
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double edge_slope = 0; // least squares of log(trie_edges) on log(n)
    double time_slope = 0;
    std::vector<NaiveRow> naive;
    std::optional<double> naive_slope; // of log(ring_muls) on log(n)
};

/// {0..k-1} × {0..k-1} as F[int] ⊗ F[int].
Term full_bipartite(RingKind ring, std::size_t k);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Runs the triangle query on full-bipartite instances. Sizes must be
/// strictly increasing and at least 2. Throws std::runtime_error when an
/// output count differs from k³ (no timing is reported then). The naive
/// contrast runs for sizes up to naive_max_k and is checked against the
/// joint product.
BenchReport bench_triangle(const std::vector<std::size_t>& sizes, std::size_t repeats, bool with_naive,
                           std::size_t naive_max_k = 16, RingKind ring = RingKind::Integer);

} // namespace polyalg
