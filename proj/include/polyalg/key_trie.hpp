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
#include <functional>
#include <memory>
#include <string>

#include "polyalg/metrics.hpp"
#include "polyalg/prim_set.hpp"

namespace polyalg {

/// A generic trie from values of a PrimSet to dense slot numbers. Its shape
/// follows the index set:
///
///   Unit        one optional slot               (1 => U  ~  U)
///   Bool        two slots
///   Int64       big-endian binary Patricia tree over the sign-flipped bits
///   Str         radix tree on bytes
///   Sum A B     a trie for each side            ((A+B) => U  ~  (A=>U) + (B=>U))
///   Prod A B    trie over A whose leaves are tries over B   ((AxB) => U  ~  A => B => U)
///
/// Lookups cost work linear in the size of the key and independent of how
/// many entries are stored. Each node hop is charged as one trie edge.
/// Iteration visits keys in the PrimSet total order.
class KeyTrie {
public:
    static constexpr std::uint32_t npos = 0xffffffffu;

    explicit KeyTrie(PrimSetPtr set);
    KeyTrie(KeyTrie&&) noexcept;
    KeyTrie& operator=(KeyTrie&&) noexcept;
    ~KeyTrie();

    const PrimSetPtr& set() const { return set_; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }

    std::uint32_t find(const Value& key, Metrics* m = nullptr) const;

    /// Stores `slot` under `key` unless the key is present already. Returns
    /// the slot that ends up associated with the key.
    std::uint32_t insert(const Value& key, std::uint32_t slot, Metrics* m = nullptr);

    void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const;

    /// Renders the stored entries following the trie's isomorphism structure,
    /// e.g. cpx^-1((a |-> cp+^-1(p |-> 2, 3 |-> 1)) + ...). `leaf` renders
    /// the value held in a slot.
    std::string render(const std::function<std::string(std::uint32_t)>& leaf) const;

    struct Impl;

private:
    PrimSetPtr set_;
    std::unique_ptr<Impl> impl_;
};

} // namespace polyalg
