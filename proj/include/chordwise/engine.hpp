#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chordwise/clique_graph.hpp"
#include "chordwise/dataset.hpp"
#include "chordwise/entropy.hpp"
#include "chordwise/graph.hpp"
#include "chordwise/vertex_set.hpp"

namespace chordwise {

struct SelectionConfig {
    enum class Mode { forward, backward, alternating };

    Mode mode = Mode::forward;
    int max_steps = std::numeric_limits<int>::max();
    double min_delta = 1e-9;
    std::optional<int> max_clique_size;  // additions with |sep|+2 > limit are skipped
};

enum class StepAction { add, remove };

struct StepRecord {
    int step = 0;  // 1-based
    StepAction action = StepAction::add;
    int va = -1, vb = -1;  // va < vb
    VertexSet separator;
    // Entropy decrease (add) or increase (remove); nonnegative up to rounding.
    double delta = 0.0;
    // Entropy-cache misses while scoring and applying this step, and the
    // column sets they were computed for (budget checks need their shape).
    std::size_t entropies_computed = 0;
    std::vector<VertexSet> entropy_sets_computed;
    // Number of pair deltas actually evaluated (cache misses in the
    // per-candidate delta memo) while scoring this step.
    std::size_t deltas_evaluated = 0;
    double h_model_after = 0.0;
    // Endpoint neighbor counts before and after the edge change. Entropy
    // budget checks use the before counts (the looser bound).
    int degree_a_before = 0, degree_b_before = 0;
    int degree_a_after = 0, degree_b_after = 0;
};

// Result of one incremental addition.
struct AddOutcome {
    CliqueId new_clique = -1;
    VertexSet separator;
    VertexSet witness_a, witness_b;  // cliques containing a resp. b before the update
    bool absorbed_a = false, absorbed_b = false;
    std::vector<EdgeKey> removed_edges;  // stale edges dropped (witness edge included)
    std::vector<EdgeKey> added_edges;    // new edges still present after absorption
};

// Result of one incremental deletion.
struct DeleteOutcome {
    VertexSet containing_clique;
    VertexSet separator;
    bool kept_a_side = false, kept_b_side = false;
    std::vector<VertexSet> new_cliques;
};

// Test-only switches that disable parts of the incremental update so the
// reference oracle can demonstrate it catches divergence.
struct FaultInjection {
    bool skip_stale_edge_removal = false;
};

// Per-edge clique membership counts; an edge is deletable exactly when it
// lies in a single maximal clique.
struct DeleteEligibility {
    std::vector<std::vector<int>> membership_count;

    bool deletable(int a, int b) const {
        return membership_count[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 1;
    }
};

// Addition-eligible pairs read off the clique graph: (x, y) is eligible
// exactly when some edge (C1, C2) has x in C1, y in C2 and (x, y) is not a
// model edge. Stateless counterpart of the engine's maintained matrix.
std::vector<std::pair<int, int>> eligible_additions(const CliqueGraph& cg, const Graph& g);

DeleteEligibility delete_eligibility(const CliqueGraph& cg, const Graph& g);
std::vector<std::pair<int, int>> eligible_deletions(const CliqueGraph& cg, const Graph& g);

// Maintains a chordal graph, its clique graph and the addition-eligibility
// matrix across single-edge changes. Additions run the incremental O(n^2)
// update; deletions do a local node update plus an edge re-derivation sweep.
class StepwiseEngine {
public:
    explicit StepwiseEngine(Graph g, FaultInjection faults = {});

    const Graph& graph() const { return g_; }
    const CliqueGraph& clique_graph() const { return cg_; }

    // When enabled, every apply_* revalidates the full clique graph and
    // throws InternalInconsistency on divergence.
    void set_validate_each_step(bool v) { validate_steps_ = v; }

    bool addition_eligible(int a, int b) const;
    std::vector<std::pair<int, int>> eligible_additions() const;  // ascending pairs

    // Clique-graph edge certifying the pair's eligibility. Falls back to a
    // full edge scan when the stored witness went stale. Throws NotEligible.
    EdgeKey addition_witness(int a, int b);
    // The pair's minimal separator (the witness edge's separator).
    const VertexSet& addition_separator(int a, int b);

    DeleteEligibility delete_eligibility() const;
    std::vector<std::pair<int, int>> eligible_deletions() const;
    // The unique maximal clique containing model edge (a, b); NotEligible
    // when the edge is absent or lies in more than one clique.
    const VertexSet& deletion_clique(int a, int b) const;

    AddOutcome apply_add(int a, int b);
    DeleteOutcome apply_delete(int a, int b);

private:
    void init_eligibility();
    void set_pair(int a, int b, EdgeKey witness);
    void clear_pair(int a, int b);
    bool witness_ok(const EdgeKey& e, int a, int b) const;

    Graph g_;
    CliqueGraph cg_;
    FaultInjection faults_;
    bool validate_steps_ = false;

    std::vector<VertexSet> elig_;  // symmetric boolean matrix as bitset rows
    std::vector<std::vector<EdgeKey>> witness_;
};

// One selection run. Stopping: forward steps need delta >= min_delta,
// removals need delta <= min_delta; alternating repeats forward and backward
// phases until a full cycle changes nothing, guarded against revisiting a
// (graph, action) pair.
struct RunResult {
    Graph final_graph;
    std::vector<StepRecord> steps;
    ScoreState score;
    double h_model_start = 0.0;
    std::vector<double> step_wall_s;
};

RunResult run_selection(const Graph& g0, const Dataset& data, const SelectionConfig& config);

}  // namespace chordwise
