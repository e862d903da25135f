#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "betabound/bounds.hpp"
#include "betabound/data.hpp"

namespace betabound {

// One frontier item: covariate indices already included in the model
// (I_w) and the disjoint indices still eligible for extension (I_z).
// Both are kept sorted ascending.
struct Node {
    std::vector<int> included;
    std::vector<int> candidates;
};

// Running extrema of the adjusted slope plus the subsets achieving them.
struct Extrema {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<int> argmin_subset;
    std::vector<int> argmax_subset;
};

struct SearchResult {
    Extrema extrema;
    std::uint64_t nodes_popped = 0;
    std::uint64_t nodes_pruned = 0;  // popped nodes that were not expanded
    std::uint64_t nodes_pushed = 0;
    std::chrono::duration<double, std::milli> elapsed{0};
    bool partial = false;  // true when a node budget stopped the search early
};

enum class QueueDiscipline { fifo, lifo };

struct SearchOptions {
    std::optional<std::uint64_t> node_budget;
    QueueDiscipline discipline = QueueDiscipline::fifo;
    // Expands every node regardless of its envelope; the full expansion
    // tree then has exactly 2^(p+1) - 1 nodes.
    bool force_expand = false;
    // Called when a popped node is not expanded, with the node and the
    // global extrema at that moment. Test instrumentation.
    std::function<void(const Node&, const Extrema&)> on_prune;
    // Called with every envelope the search evaluates (used by the CLI's
    // --grid-check audit). Not called under force_expand.
    std::function<void(const BoundInputs&, const Envelope&)> on_envelope;
};

// True when the node's envelope reaches strictly outside the running
// extrema, i.e. some extension could still move a bound.
bool has_potential(const Envelope& env, const Extrema& ext);

// The candidate with the largest |corr(z_i_res, x_res) * corr(z_i_res, y_res)|;
// ties and all-zero columns resolve to the smallest covariate index.
// z_res columns must line up with `candidates`.
int select_branch_var(const Vector& x_res, const Vector& y_res,
                      const LabeledMatrix& z_res, const std::vector<int>& candidates);

// min/max absorb beta; the witness subset is recorded whenever a bound
// strictly moves. Comparisons are exact, no epsilon.
void update_extrema(Extrema& ext, double beta, const std::vector<int>& subset);

// FIFO branch and bound over (I_w, I_z) nodes. Returns the exact minimum
// and maximum of the adjusted slope over all 2^p covariate subsets, with
// witness subsets and node accounting. Residuals are recomputed from each
// node's index sets; queue items hold only the two index vectors.
SearchResult branch_and_bound(const Dataset& data, const SearchOptions& opts = {});

// Fits every one of the 2^p models outright. Exact reference for the
// branch and bound result; nodes_popped equals 2^p.
SearchResult brute_force(const Dataset& data, const SearchOptions& opts = {});

inline constexpr int kBruteForceCap = 25;

// Subsets a brute-force run must fit; fails when p exceeds the cap.
std::uint64_t brute_force_model_count(int p, int cap = kBruteForceCap);

}  // namespace betabound
