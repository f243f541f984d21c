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

#include "polyalg/key_trie.hpp"

#include <algorithm>
#include <bit>
#include <utility>
#include <vector>

namespace polyalg {

struct KeyTrie::Impl {
    virtual ~Impl() = default;
    virtual std::size_t size() const = 0;
    virtual std::uint32_t find(const Value& key, Metrics* m) const = 0;
    virtual std::uint32_t insert(const Value& key, std::uint32_t slot, Metrics* m) = 0;
    virtual void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const = 0;
    virtual std::string render(const std::function<std::string(std::uint32_t)>& leaf) const;
};

namespace {

inline void charge(Metrics* m, std::uint64_t edges = 1) {
    if (m) m->trie_edges += edges;
}

std::string join_entries(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    if (parts.size() == 1) return parts.front();
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " + ";
        out += "(" + parts[i] + ")";
    }
    return out;
}

} // namespace

std::string KeyTrie::Impl::render(const std::function<std::string(std::uint32_t)>& leaf) const {
    std::vector<std::string> parts;
    for_each([&](const Value& k, std::uint32_t s) { parts.push_back(k.to_string() + " ↦ " + leaf(s)); });
    return join_entries(parts);
}

namespace {

struct EmptyTrie final : KeyTrie::Impl {
    std::size_t size() const override { return 0; }
    std::uint32_t find(const Value&, Metrics*) const override { return KeyTrie::npos; }
    std::uint32_t insert(const Value& key, std::uint32_t, Metrics*) override {
        throw SpaceError("the empty set has no value " + key.to_string());
    }
    void for_each(const std::function<void(const Value&, std::uint32_t)>&) const override {}
};

// cp1: a map out of the one-point set is a single optional value.
struct UnitTrie final : KeyTrie::Impl {
    std::uint32_t slot = KeyTrie::npos;

    std::size_t size() const override { return slot == KeyTrie::npos ? 0 : 1; }
    std::uint32_t find(const Value&, Metrics* m) const override {
        charge(m);
        return slot;
    }
    std::uint32_t insert(const Value&, std::uint32_t s, Metrics* m) override {
        charge(m);
        if (slot == KeyTrie::npos) slot = s;
        return slot;
    }
    void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const override {
        if (slot != KeyTrie::npos) fn(Value::unit(), slot);
    }
    std::string render(const std::function<std::string(std::uint32_t)>& leaf) const override {
        return "cp₁⁻¹(" + (slot == KeyTrie::npos ? std::string("0") : leaf(slot)) + ")";
    }
};

struct BoolTrie final : KeyTrie::Impl {
    std::uint32_t slots[2] = {KeyTrie::npos, KeyTrie::npos};

    std::size_t size() const override { return (slots[0] != KeyTrie::npos) + (slots[1] != KeyTrie::npos); }
    std::uint32_t find(const Value& key, Metrics* m) const override {
        charge(m);
        return slots[key.as_bool() ? 1 : 0];
    }
    std::uint32_t insert(const Value& key, std::uint32_t s, Metrics* m) override {
        charge(m);
        auto& slot = slots[key.as_bool() ? 1 : 0];
        if (slot == KeyTrie::npos) slot = s;
        return slot;
    }
    void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const override {
        if (slots[0] != KeyTrie::npos) fn(Value::boolean(false), slots[0]);
        if (slots[1] != KeyTrie::npos) fn(Value::boolean(true), slots[1]);
    }
};

// Crit-bit (binary Patricia) tree over 64-bit keys. Keys are stored with the
// sign bit flipped so that the unsigned big-endian order equals the signed
// order of the original integers.
class IntTrie final : public KeyTrie::Impl {
public:
    std::size_t size() const override { return count_; }

    std::uint32_t find(const Value& key, Metrics* m) const override {
        if (root_ == kNone) return KeyTrie::npos;
        const std::uint64_t u = encode(key.as_int());
        std::uint32_t n = root_;
        charge(m);
        while (nodes_[n].bit >= 0) {
            n = nodes_[n].child[(u >> nodes_[n].bit) & 1];
            charge(m);
        }
        return nodes_[n].key == u ? nodes_[n].slot : KeyTrie::npos;
    }

    std::uint32_t insert(const Value& key, std::uint32_t slot, Metrics* m) override {
        const std::uint64_t u = encode(key.as_int());
        if (root_ == kNone) {
            root_ = new_leaf(u, slot);
            ++count_;
            charge(m);
            return slot;
        }
        // Best-matching leaf first, then the critical bit against it.
        std::uint32_t n = root_;
        charge(m);
        while (nodes_[n].bit >= 0) {
            n = nodes_[n].child[(u >> nodes_[n].bit) & 1];
            charge(m);
        }
        const std::uint64_t diff = nodes_[n].key ^ u;
        if (diff == 0) return nodes_[n].slot;
        const int crit = 63 - std::countl_zero(diff);

        std::uint32_t* link = &root_;
        while (nodes_[*link].bit > crit) {
            auto& node = nodes_[*link];
            link = &node.child[(u >> node.bit) & 1];
            charge(m);
        }
        const std::uint32_t leaf = new_leaf(u, slot);
        Node inner;
        inner.bit = crit;
        const int side = static_cast<int>((u >> crit) & 1);
        inner.child[side] = leaf;
        inner.child[1 - side] = *link;
        // `link` may dangle after push_back; recompute through its owner.
        const std::uint32_t displaced = *link;
        const std::uint32_t idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(inner);
        relink(displaced, idx, u);
        ++count_;
        return slot;
    }

    void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const override {
        if (root_ == kNone) return;
        std::vector<std::uint32_t> stack{root_};
        while (!stack.empty()) {
            const std::uint32_t n = stack.back();
            stack.pop_back();
            const Node& node = nodes_[n];
            if (node.bit < 0) {
                fn(Value::integer(decode(node.key)), node.slot);
            } else {
                stack.push_back(node.child[1]);
                stack.push_back(node.child[0]);
            }
        }
    }

private:
    static constexpr std::uint32_t kNone = KeyTrie::npos;
    static constexpr std::uint64_t kSign = std::uint64_t{1} << 63;

    struct Node {
        std::uint64_t key = 0;
        std::uint32_t slot = KeyTrie::npos;
        int bit = -1; // -1 marks a leaf
        std::uint32_t child[2] = {kNone, kNone};
    };

    static std::uint64_t encode(std::int64_t k) { return static_cast<std::uint64_t>(k) ^ kSign; }
    static std::int64_t decode(std::uint64_t u) { return static_cast<std::int64_t>(u ^ kSign); }

    std::uint32_t new_leaf(std::uint64_t u, std::uint32_t slot) {
        Node leaf;
        leaf.key = u;
        leaf.slot = slot;
        nodes_.push_back(leaf);
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    // Replace the edge pointing at `displaced` (on the path of `u`) by `with`.
    void relink(std::uint32_t displaced, std::uint32_t with, std::uint64_t u) {
        if (root_ == displaced) {
            root_ = with;
            return;
        }
        std::uint32_t n = root_;
        for (;;) {
            auto& node = nodes_[n];
            std::uint32_t& next = node.child[(u >> node.bit) & 1];
            if (next == displaced) {
                next = with;
                return;
            }
            n = next;
        }
    }

    std::vector<Node> nodes_;
    std::uint32_t root_ = kNone;
    std::size_t count_ = 0;
};

// Radix tree on bytes. Children are kept sorted by their first byte, so a
// depth-first walk that emits a node's own slot before its children yields
// keys in bytewise lexicographic order.
class StrTrie final : public KeyTrie::Impl {
public:
    StrTrie() { nodes_.emplace_back(); }

    std::size_t size() const override { return count_; }

    std::uint32_t find(const Value& key, Metrics* m) const override {
        const std::string& s = key.as_str();
        std::size_t pos = 0;
        std::uint32_t n = 0;
        charge(m);
        for (;;) {
            if (pos == s.size()) return nodes_[n].slot;
            const std::uint32_t c = child(n, static_cast<unsigned char>(s[pos]));
            if (c == kNone) return KeyTrie::npos;
            charge(m);
            const std::string& label = nodes_[c].label;
            if (s.compare(pos, label.size(), label) != 0) return KeyTrie::npos;
            pos += label.size();
            n = c;
        }
    }

    std::uint32_t insert(const Value& key, std::uint32_t slot, Metrics* m) override {
        const std::string& s = key.as_str();
        std::size_t pos = 0;
        std::uint32_t n = 0;
        charge(m);
        for (;;) {
            if (pos == s.size()) {
                if (nodes_[n].slot == KeyTrie::npos) {
                    nodes_[n].slot = slot;
                    ++count_;
                }
                return nodes_[n].slot;
            }
            const unsigned char b = static_cast<unsigned char>(s[pos]);
            const std::uint32_t c = child(n, b);
            charge(m);
            if (c == kNone) {
                const std::uint32_t leaf = add_node(s.substr(pos), slot);
                attach(n, b, leaf);
                ++count_;
                return slot;
            }
            const std::string& label = nodes_[c].label;
            std::size_t common = 0;
            while (common < label.size() && pos + common < s.size() && label[common] == s[pos + common]) ++common;
            if (common == label.size()) {
                pos += common;
                n = c;
                continue;
            }
            // Split the edge at `common`.
            const std::uint32_t mid = add_node(label.substr(0, common), KeyTrie::npos);
            nodes_[c].label.erase(0, common);
            replace_child(n, b, mid);
            attach(mid, static_cast<unsigned char>(nodes_[c].label[0]), c);
            pos += common;
            if (pos == s.size()) {
                nodes_[mid].slot = slot;
            } else {
                const std::uint32_t leaf = add_node(s.substr(pos), slot);
                attach(mid, static_cast<unsigned char>(s[pos]), leaf);
            }
            ++count_;
            return slot;
        }
    }

    void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const override {
        std::string prefix;
        walk(0, prefix, fn);
    }

private:
    static constexpr std::uint32_t kNone = KeyTrie::npos;

    struct Node {
        std::string label;
        std::uint32_t slot = KeyTrie::npos;
        std::vector<std::pair<unsigned char, std::uint32_t>> children;
    };

    std::uint32_t child(std::uint32_t n, unsigned char b) const {
        const auto& ch = nodes_[n].children;
        auto it = std::lower_bound(ch.begin(), ch.end(), b, [](const auto& e, unsigned char x) { return e.first < x; });
        return (it != ch.end() && it->first == b) ? it->second : kNone;
    }

    std::uint32_t add_node(std::string label, std::uint32_t slot) {
        Node node;
        node.label = std::move(label);
        node.slot = slot;
        nodes_.push_back(std::move(node));
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    void attach(std::uint32_t n, unsigned char b, std::uint32_t c) {
        auto& ch = nodes_[n].children;
        auto it = std::lower_bound(ch.begin(), ch.end(), b, [](const auto& e, unsigned char x) { return e.first < x; });
        ch.insert(it, {b, c});
    }

    void replace_child(std::uint32_t n, unsigned char b, std::uint32_t c) {
        for (auto& e : nodes_[n].children)
            if (e.first == b) e.second = c;
    }

    void walk(std::uint32_t n, std::string& prefix, const std::function<void(const Value&, std::uint32_t)>& fn) const {
        const std::size_t before = prefix.size();
        prefix += nodes_[n].label;
        if (nodes_[n].slot != KeyTrie::npos) fn(Value::string(prefix), nodes_[n].slot);
        for (const auto& [b, c] : nodes_[n].children) walk(c, prefix, fn);
        prefix.resize(before);
    }

    std::vector<Node> nodes_;
    std::size_t count_ = 0;
};

// cp+: (A + B) => U is a pair of maps.
class SumTrie final : public KeyTrie::Impl {
public:
    SumTrie(const PrimSet& set) : left_(set.left()), right_(set.right()) {}

    std::size_t size() const override { return left_.size() + right_.size(); }
    std::uint32_t find(const Value& key, Metrics* m) const override {
        charge(m);
        return (key.is_right() ? right_ : left_).find(key.inner(), m);
    }
    std::uint32_t insert(const Value& key, std::uint32_t slot, Metrics* m) override {
        charge(m);
        return (key.is_right() ? right_ : left_).insert(key.inner(), slot, m);
    }
    void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const override {
        left_.for_each([&](const Value& k, std::uint32_t s) { fn(Value::left(k), s); });
        right_.for_each([&](const Value& k, std::uint32_t s) { fn(Value::right(k), s); });
    }
    std::string render(const std::function<std::string(std::uint32_t)>& leaf) const override {
        return "cp₊⁻¹(" + left_.render(leaf) + ", " + right_.render(leaf) + ")";
    }

private:
    KeyTrie left_, right_;
};

// cpx: (A x B) => U is curried into A => (B => U). The outer trie's slots
// index the inner tries.
class ProdTrie final : public KeyTrie::Impl {
public:
    ProdTrie(const PrimSet& set) : outer_(set.left()), second_(set.right()) {}

    std::size_t size() const override { return count_; }
    std::uint32_t find(const Value& key, Metrics* m) const override {
        const std::uint32_t o = outer_.find(key.first(), m);
        if (o == KeyTrie::npos) return KeyTrie::npos;
        return inner_[o].find(key.second(), m);
    }
    std::uint32_t insert(const Value& key, std::uint32_t slot, Metrics* m) override {
        const std::uint32_t fresh = static_cast<std::uint32_t>(inner_.size());
        const std::uint32_t o = outer_.insert(key.first(), fresh, m);
        if (o == fresh) inner_.emplace_back(second_);
        const std::size_t before = inner_[o].size();
        const std::uint32_t s = inner_[o].insert(key.second(), slot, m);
        count_ += inner_[o].size() - before;
        return s;
    }
    void for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const override {
        outer_.for_each([&](const Value& a, std::uint32_t o) {
            inner_[o].for_each([&](const Value& b, std::uint32_t s) { fn(Value::pair(a, b), s); });
        });
    }
    std::string render(const std::function<std::string(std::uint32_t)>& leaf) const override {
        return "cp×⁻¹(" + outer_.render([&](std::uint32_t o) { return inner_[o].render(leaf); }) + ")";
    }

private:
    KeyTrie outer_;
    PrimSetPtr second_;
    std::vector<KeyTrie> inner_;
    std::size_t count_ = 0;
};

std::unique_ptr<KeyTrie::Impl> make_impl(const PrimSet& set) {
    switch (set.kind()) {
    case PrimSet::Kind::Empty: return std::make_unique<EmptyTrie>();
    case PrimSet::Kind::Unit: return std::make_unique<UnitTrie>();
    case PrimSet::Kind::Bool: return std::make_unique<BoolTrie>();
    case PrimSet::Kind::Int64: return std::make_unique<IntTrie>();
    case PrimSet::Kind::Str: return std::make_unique<StrTrie>();
    case PrimSet::Kind::Sum: return std::make_unique<SumTrie>(set);
    case PrimSet::Kind::Prod: return std::make_unique<ProdTrie>(set);
    }
    throw SpaceError("unknown set kind");
}

} // namespace

KeyTrie::KeyTrie(PrimSetPtr set) : set_(std::move(set)) {
    if (!set_) throw SpaceError("trie over null set");
    impl_ = make_impl(*set_);
}
KeyTrie::KeyTrie(KeyTrie&&) noexcept = default;
KeyTrie& KeyTrie::operator=(KeyTrie&&) noexcept = default;
KeyTrie::~KeyTrie() = default;

std::size_t KeyTrie::size() const { return impl_->size(); }

std::uint32_t KeyTrie::find(const Value& key, Metrics* m) const {
    if (m) ++m->lookups;
    return impl_->find(key, m);
}

std::uint32_t KeyTrie::insert(const Value& key, std::uint32_t slot, Metrics* m) {
    if (!key.belongs_to(*set_)) throw SpaceError("value " + key.to_string() + " is not in " + set_->to_string());
    return impl_->insert(key, slot, m);
}

void KeyTrie::for_each(const std::function<void(const Value&, std::uint32_t)>& fn) const { impl_->for_each(fn); }

std::string KeyTrie::render(const std::function<std::string(std::uint32_t)>& leaf) const { return impl_->render(leaf); }

} // namespace polyalg
