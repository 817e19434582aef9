#pragma once

#include <cstddef>
#include <map>
#include <unordered_map>
#include <vector>

#include "chordwise/clique_graph.hpp"
#include "chordwise/dataset.hpp"
#include "chordwise/vertex_set.hpp"

namespace chordwise {

// Empirical Shannon entropy (natural log) of the dataset projected onto the
// columns in s. Zero-probability cells contribute zero; no smoothing.
// H(∅) = 0. Throws EmptyDataset when the dataset has no rows.
double subset_entropy(const Dataset& data, const VertexSet& s);

// Memo table for subset entropies keyed by column set. Tracks, per step, how
// many entropies had to be computed and which sets they were; selection code
// calls begin_step() at step boundaries so budget assertions can read the
// counters afterwards.
class EntropyCache {
public:
    double get(const Dataset& data, const VertexSet& s);

    bool contains(const VertexSet& s) const { return values_.count(s) != 0; }
    std::size_t size() const { return values_.size(); }

    void begin_step() {
        step_misses_ = 0;
        step_missed_sets_.clear();
    }
    std::size_t step_misses() const { return step_misses_; }
    const std::vector<VertexSet>& step_missed_sets() const { return step_missed_sets_; }

private:
    std::unordered_map<VertexSet, double, VertexSetHash> values_;
    std::size_t step_misses_ = 0;
    std::vector<VertexSet> step_missed_sets_;
};

// Entropy decrease from adding edge (a, b) whose minimal separator is sep:
// the conditional mutual information
//   H(sep+a) + H(sep+b) - H(sep+a+b) - H(sep),
// nonnegative up to rounding. Requires a, b not in sep.
double add_delta(EntropyCache& cache, const Dataset& data, const VertexSet& sep, int a, int b);

// Entropy increase from deleting edge (a, b) out of the (unique) maximal
// clique `clique` containing it; same four terms with sep = clique - {a,b}.
// Throws NotInClique when a or b is not a member of `clique`.
double delete_delta(EntropyCache& cache, const Dataset& data, const VertexSet& clique, int a,
                    int b);

// Clique and separator multisets of a junction tree together with the model
// entropy H = sum H(clique) - sum H(separator), maintained incrementally.
struct ScoreState {
    std::vector<VertexSet> cliques;
    std::map<VertexSet, int> separators;  // multiset as count map
    double h_model = 0.0;

    static ScoreState from_junction_tree(const JunctionTree& jt, const Dataset& data,
                                         EntropyCache& cache);

    void add_separator(const VertexSet& s) { ++separators[s]; }
    // Throws SeparatorNotPresent when no copy of s is in the multiset.
    void remove_separator(const VertexSet& s);
    // Throws InternalInconsistency when c is not present.
    void remove_clique(const VertexSet& c);
};

// Applies the junction-tree difference of adding edge (a, b): c_ab is the
// new clique, c_a / c_b the witness cliques that contained a / b before the
// update, s_ab the separator. The four cases are keyed on whether c_a or c_b
// is contained in c_ab (and therefore stops being maximal). h_model
// decreases by add_delta.
void apply_junction_diff(ScoreState& state, const VertexSet& c_a, const VertexSet& c_b,
                         const VertexSet& c_ab, const VertexSet& s_ab, EntropyCache& cache,
                         const Dataset& data, int a, int b);

// Reverse update for deleting edge (a, b) out of clique c. kept_a_side tells
// whether c - {b} stays maximal, kept_b_side whether c - {a} does; the side
// that is absorbed gives up one separator copy instead. h_model increases by
// delete_delta.
void apply_delete_diff(ScoreState& state, const VertexSet& c, int a, int b, bool kept_a_side,
                       bool kept_b_side, EntropyCache& cache, const Dataset& data);

double model_entropy(const JunctionTree& jt, const Dataset& data, EntropyCache& cache);

}  // namespace chordwise
