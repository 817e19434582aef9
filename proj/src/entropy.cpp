#include "chordwise/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "chordwise/errors.hpp"

namespace chordwise {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::uint32_t x : v) h = (h ^ x) * 0x100000001b3ull;
        return static_cast<std::size_t>(h);
    }
};

double entropy_from_counts(const std::vector<std::size_t>& counts, std::size_t n) {
    // H = ln N - (sum c ln c) / N; empty cells never appear in `counts`.
    double acc = 0.0;
    for (std::size_t c : counts) acc += static_cast<double>(c) * std::log(static_cast<double>(c));
    return std::log(static_cast<double>(n)) - acc / static_cast<double>(n);
}

}  // namespace

double subset_entropy(const Dataset& data, const VertexSet& s) {
    const std::size_t n = data.n_rows();
    if (n == 0) throw EmptyDataset("entropy of a dataset with no rows");
    std::vector<int> cols = s.members();
    if (cols.empty()) return 0.0;

    // Cells are keyed by a mixed-radix code when the joint domain fits in 64
    // bits, otherwise by the raw code tuple.
    std::uint64_t radix = 1;
    bool packed = true;
    for (int c : cols) {
        std::uint64_t d = static_cast<std::uint64_t>(data.domain_size(c));
        if (d != 0 && radix > ~std::uint64_t{0} / d) {
            packed = false;
            break;
        }
        radix *= d;
    }

    std::vector<std::size_t> counts;
    if (packed) {
        std::unordered_map<std::uint64_t, std::size_t> groups;
        groups.reserve(n * 2);
        for (std::size_t r = 0; r < n; ++r) {
            std::uint64_t key = 0;
            for (int c : cols)
                key = key * static_cast<std::uint64_t>(data.domain_size(c)) + data.code(c, r);
            ++groups[key];
        }
        counts.reserve(groups.size());
        for (const auto& [k, c] : groups) counts.push_back(c);
    } else {
        std::unordered_map<std::vector<std::uint32_t>, std::size_t, VecHash> groups;
        groups.reserve(n * 2);
        std::vector<std::uint32_t> key(cols.size());
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t i = 0; i < cols.size(); ++i) key[i] = data.code(cols[i], r);
            ++groups[key];
        }
        counts.reserve(groups.size());
        for (const auto& [k, c] : groups) counts.push_back(c);
    }
    return entropy_from_counts(counts, n);
}

double EntropyCache::get(const Dataset& data, const VertexSet& s) {
    auto it = values_.find(s);
    if (it != values_.end()) return it->second;
    double h = subset_entropy(data, s);
    values_.emplace(s, h);
    ++step_misses_;
    step_missed_sets_.push_back(s);
    return h;
}

double add_delta(EntropyCache& cache, const Dataset& data, const VertexSet& sep, int a, int b) {
    assert(!sep.contains(a) && !sep.contains(b) && a != b);
    VertexSet sa = sep.plus(a);
    VertexSet sb = sep.plus(b);
    VertexSet sab = sa.plus(b);
    return cache.get(data, sa) + cache.get(data, sb) - cache.get(data, sab) -
           cache.get(data, sep);
}

double delete_delta(EntropyCache& cache, const Dataset& data, const VertexSet& clique, int a,
                    int b) {
    if (!clique.contains(a) || !clique.contains(b))
        throw NotInClique("edge endpoints not inside the clique");
    VertexSet sep = clique.minus(a).minus(b);
    return add_delta(cache, data, sep, a, b);
}

ScoreState ScoreState::from_junction_tree(const JunctionTree& jt, const Dataset& data,
                                          EntropyCache& cache) {
    ScoreState st;
    st.cliques = jt.cliques;
    for (const VertexSet& s : jt.separators) st.add_separator(s);
    st.h_model = model_entropy(jt, data, cache);
    return st;
}

void ScoreState::remove_separator(const VertexSet& s) {
    auto it = separators.find(s);
    if (it == separators.end() || it->second <= 0)
        throw SeparatorNotPresent("separator " + s.to_string() + " not in the multiset");
    if (--it->second == 0) separators.erase(it);
}

void ScoreState::remove_clique(const VertexSet& c) {
    auto it = std::find(cliques.begin(), cliques.end(), c);
    if (it == cliques.end())
        throw InternalInconsistency("clique " + c.to_string() + " not in the score state");
    cliques.erase(it);
}

void apply_junction_diff(ScoreState& state, const VertexSet& c_a, const VertexSet& c_b,
                         const VertexSet& c_ab, const VertexSet& s_ab, EntropyCache& cache,
                         const Dataset& data, int a, int b) {
    if (state.separators.find(s_ab) == state.separators.end())
        throw SeparatorNotPresent("separator " + s_ab.to_string() + " not in the multiset");

    const bool absorb_a = c_a.is_subset_of(c_ab);
    const bool absorb_b = c_b.is_subset_of(c_ab);

    state.cliques.push_back(c_ab);
    if (absorb_a)
        state.remove_clique(c_a);
    else
        state.add_separator(c_ab & c_a);
    if (absorb_b)
        state.remove_clique(c_b);
    else
        state.add_separator(c_ab & c_b);
    state.remove_separator(s_ab);

    state.h_model -= add_delta(cache, data, s_ab, a, b);
}

void apply_delete_diff(ScoreState& state, const VertexSet& c, int a, int b, bool kept_a_side,
                       bool kept_b_side, EntropyCache& cache, const Dataset& data) {
    VertexSet side_a = c.minus(b);  // contains a
    VertexSet side_b = c.minus(a);
    VertexSet sep = c.minus(a).minus(b);

    state.remove_clique(c);
    if (kept_a_side)
        state.cliques.push_back(side_a);
    else
        state.remove_separator(side_a);
    if (kept_b_side)
        state.cliques.push_back(side_b);
    else
        state.remove_separator(side_b);
    state.add_separator(sep);

    state.h_model += delete_delta(cache, data, c, a, b);
}

double model_entropy(const JunctionTree& jt, const Dataset& data, EntropyCache& cache) {
    double h = 0.0;
    for (const VertexSet& c : jt.cliques) h += cache.get(data, c);
    for (const VertexSet& s : jt.separators) h -= cache.get(data, s);
    return h;
}

}  // namespace chordwise
