#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace chordwise {

// Set of vertices drawn from a fixed universe [0, n), stored as a bitset.
// All set operations cost O(n/64) words. Binary operations require both
// operands to share the same universe. Iteration yields members in
// ascending order; the ordering operators compare the ascending member
// sequences lexicographically, which is the canonical order used for
// deterministic output everywhere in this library.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(int universe)
        : universe_(universe), words_(static_cast<std::size_t>((universe + 63) / 64), 0) {
        assert(universe >= 0);
    }

    VertexSet(int universe, std::initializer_list<int> members) : VertexSet(universe) {
        for (int v : members) insert(v);
    }

    int universe() const { return universe_; }

    bool contains(int v) const {
        assert(v >= 0 && v < universe_);
        return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
    }

    void insert(int v) {
        assert(v >= 0 && v < universe_);
        words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void erase(int v) {
        assert(v >= 0 && v < universe_);
        words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    int size() const {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    void clear() {
        for (std::uint64_t& w : words_) w = 0;
    }

    VertexSet& operator|=(const VertexSet& o) {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    VertexSet& operator&=(const VertexSet& o) {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    // Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    VertexSet plus(int v) const {
        VertexSet r(*this);
        r.insert(v);
        return r;
    }

    VertexSet minus(int v) const {
        VertexSet r(*this);
        r.erase(v);
        return r;
    }

    bool is_subset_of(const VertexSet& o) const {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool is_proper_subset_of(const VertexSet& o) const {
        return is_subset_of(o) && *this != o;
    }

    bool intersects(const VertexSet& o) const {
        assert(universe_ == o.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool operator==(const VertexSet& o) const {
        return universe_ == o.universe_ && words_ == o.words_;
    }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

    // -1 when the set is empty.
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }

    // Smallest member strictly greater than v, or -1.
    int next(int v) const {
        assert(v >= 0);
        int b = v + 1;
        if (b >= universe_) return -1;
        std::size_t i = static_cast<std::size_t>(b) >> 6;
        std::uint64_t w = words_[i] & (~std::uint64_t{0} << (b & 63));
        while (true) {
            if (w) return static_cast<int>(i * 64 + std::countr_zero(w));
            if (++i >= words_.size()) return -1;
            w = words_[i];
        }
    }

    template <class F>
    void for_each(F f) const {
        for (int v = first(); v >= 0; v = next(v)) f(v);
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    // Lexicographic comparison of the ascending member sequences:
    // {0,3} < {1}, {1} < {1,2}, {} < {0}.
    int lex_compare(const VertexSet& o) const {
        assert(universe_ == o.universe_);
        int i = first(), j = o.first();
        while (i >= 0 && j >= 0) {
            if (i != j) return i < j ? -1 : 1;
            i = next(i);
            j = o.next(j);
        }
        if (i < 0 && j < 0) return 0;
        return i < 0 ? -1 : 1;
    }

    bool operator<(const VertexSet& o) const { return lex_compare(o) < 0; }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(universe_);
        for (std::uint64_t w : words_) h = (h ^ w) * 0x100000001b3ull;
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const {
        std::string s = "{";
        bool sep = false;
        for_each([&](int v) {
            if (sep) s += ',';
            s += std::to_string(v);
            sep = true;
        });
        s += '}';
        return s;
    }

private:
    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace chordwise
