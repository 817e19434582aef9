#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chordwise/clique_graph.hpp"
#include "chordwise/dataset.hpp"
#include "chordwise/engine.hpp"
#include "chordwise/graph.hpp"
#include "chordwise/vertex_set.hpp"

namespace chordwise {

// Reference implementations used to cross-check the incremental engine.
// Deliberately naive: each answer is recomputed from first principles.

// Non-edges whose addition keeps the graph chordal; ascending pairs.
std::vector<std::pair<int, int>> brute_eligible_additions(const Graph& g);

// Edges lying in exactly one maximal clique; ascending pairs.
std::vector<std::pair<int, int>> brute_eligible_deletions(const Graph& g);

// A minimal a-b separator: the neighborhood of b's component in g - N(a)
// (and symmetrically from b), lexicographically smaller one on divergence.
// For addition-eligible pairs of a chordal graph the minimal separator is
// unique, so the choice only matters for other pairs. Empty when a and b are
// already disconnected. Throws AreAdjacent.
VertexSet brute_minimal_separator(const Graph& g, int a, int b);

// Random chordal graph: a random elimination order with each later pair made
// adjacent with probability `density`, then triangulated by elimination
// fill-in. The order is a perfect elimination order of the result.
Graph random_chordal_graph(std::mt19937_64& rng, int n, double density);

// Random categorical dataset. Domain sizes are uniform in [2, max_domain]
// (or 1 if max_domain < 2). With probability `dependence`, a row's value in
// column c copies column c-1 (mod domain size), which makes neighboring
// columns informative about each other; otherwise values are uniform.
Dataset random_categorical_dataset(std::mt19937_64& rng, int n_cols, std::size_t n_rows,
                                   int max_domain, double dependence);

// Running intersection: for every clique pair, their intersection is
// contained in every clique on the tree path between them.
bool has_running_intersection(const JunctionTree& jt);

struct TrajectoryOptions {
    int n = 8;
    int steps = 30;             // maximum number of applied edge changes
    double start_density = 0.3; // density of the random chordal start graph
    double add_bias = 0.7;      // probability of adding when both directions are possible
    bool check_separators = true;
    bool check_scores = false;  // maintain a ScoreState and compare to scratch recomputes
    std::size_t data_rows = 200;
    int max_domain = 3;
    double data_dependence = 0.5;
    FaultInjection faults;      // injected engine faults the checks must expose
};

struct OracleReport {
    bool ok = true;
    int failed_step = -1;  // 0 = initial state, k = after the k-th change
    std::string reason;
};

// Drives a random add/delete trajectory through a StepwiseEngine and
// cross-checks every step against the brute-force references: eligibility in
// both directions, clique-graph equivalence with a fresh rebuild plus its
// internal invariants, junction-tree running intersection and size, pair
// separators, and (optionally) incremental score maintenance. Stops at the
// first divergence.
OracleReport verify_trajectory(std::uint64_t seed, const TrajectoryOptions& opt);

}  // namespace chordwise
