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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace polyalg {

/// One enumerator pick inside a product: the component count of every
/// factor still in play at that point (kExcluded for factors already used
/// as enumerators) and the index that was chosen.
struct EnumeratorChoice {
    static constexpr std::size_t kExcluded = std::numeric_limits<std::size_t>::max();
    std::size_t depth = 0;
    std::vector<std::size_t> counts;
    std::size_t chosen = 0;
};

/// Machine-independent operation counts. Callers own a Metrics value and
/// pass a pointer into the engine; a null pointer disables counting.
struct Metrics {
    std::uint64_t trie_edges = 0;
    std::uint64_t ring_muls = 0;
    std::uint64_t lookups = 0;

    bool record_trace = false;
    std::vector<EnumeratorChoice> trace;

    Metrics& operator+=(const Metrics& o) {
        trie_edges += o.trie_edges;
        ring_muls += o.ring_muls;
        lookups += o.lookups;
        trace.insert(trace.end(), o.trace.begin(), o.trace.end());
        return *this;
    }
};

} // namespace polyalg
