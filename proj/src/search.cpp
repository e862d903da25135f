#include "betabound/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace betabound {

bool has_potential(const Envelope& env, const Extrema& ext) {
    return env.lower < ext.lower || env.upper > ext.upper;
}

int select_branch_var(const Vector& x_res, const Vector& y_res,
                      const LabeledMatrix& z_res, const std::vector<int>& candidates) {
    if (candidates.empty()) throw InvalidInput("select_branch_var: no candidates");
    if (z_res.cols() != static_cast<Eigen::Index>(candidates.size())) {
        throw InvalidInput("select_branch_var: column/candidate mismatch");
    }
    const double nx = x_res.norm();
    const double ny = y_res.norm();
    int best = candidates[0];
    double best_score = -1.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const Vector col = z_res.col(static_cast<Eigen::Index>(k));
        const double nz = col.norm();
        // A column that residualizes to zero scores 0 and is only picked
        // when every candidate does.
        const double score =
            nz == 0.0 ? 0.0
                      : std::abs(col.dot(x_res) * col.dot(y_res)) / (nz * nz * nx * ny);
        if (score > best_score) {
            best_score = score;
            best = candidates[k];
        }
    }
    return best;
}

void update_extrema(Extrema& ext, double beta, const std::vector<int>& subset) {
    if (beta < ext.lower) {
        ext.lower = beta;
        ext.argmin_subset = subset;
    }
    if (beta > ext.upper) {
        ext.upper = beta;
        ext.argmax_subset = subset;
    }
}

namespace {

std::vector<int> without(const std::vector<int>& sorted, int value) {
    std::vector<int> out;
    out.reserve(sorted.size() - 1);
    for (int v : sorted) {
        if (v != value) out.push_back(v);
    }
    return out;
}

std::vector<int> with_inserted(const std::vector<int>& sorted, int value) {
    std::vector<int> out = sorted;
    out.insert(std::upper_bound(out.begin(), out.end(), value), value);
    return out;
}

}  // namespace

SearchResult branch_and_bound(const Dataset& data, const SearchOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    SearchResult result;

    // Both extrema start at the slope of the covariate-free model.
    const double beta_empty = simple_slope(data.x, data.y);
    result.extrema = {beta_empty, beta_empty, {}, {}};

    std::deque<Node> frontier;
    std::vector<int> all(static_cast<std::size_t>(data.p()));
    for (int j = 0; j < data.p(); ++j) all[static_cast<std::size_t>(j)] = j;
    frontier.push_back(Node{{}, all});
    result.nodes_pushed = 1;

    while (!frontier.empty()) {
        if (opts.node_budget && result.nodes_popped >= *opts.node_budget) {
            result.partial = true;
            break;
        }
        Node node;
        if (opts.discipline == QueueDiscipline::fifo) {
            node = std::move(frontier.front());
            frontier.pop_front();
        } else {
            node = std::move(frontier.back());
            frontier.pop_back();
        }
        ++result.nodes_popped;

        const ProjectionContext ctx(data.s.select(node.included));
        const Vector x_res = ctx.residual(data.x);
        const Vector y_res = ctx.residual(data.y);
        update_extrema(result.extrema, simple_slope(x_res, y_res), node.included);

        // A node with no candidates has no extensions left to bound.
        bool expand = false;
        LabeledMatrix z_res;
        if (!node.candidates.empty()) {
            z_res = ctx.residualize(data.s.select(node.candidates));
            if (opts.force_expand) {
                expand = true;
            } else {
                const BoundInputs inputs = bound_inputs(x_res, y_res, z_res);
                const Envelope env = envelope(inputs);
                if (opts.on_envelope) opts.on_envelope(inputs, env);
                expand = has_potential(env, result.extrema);
            }
        }

        if (!expand) {
            ++result.nodes_pruned;
            if (opts.on_prune) opts.on_prune(node, result.extrema);
            continue;
        }

        const int star = select_branch_var(x_res, y_res, z_res, node.candidates);
        const std::vector<int> remaining = without(node.candidates, star);
        frontier.push_back(Node{node.included, remaining});
        frontier.push_back(Node{with_inserted(node.included, star), remaining});
        result.nodes_pushed += 2;
    }

    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

std::uint64_t brute_force_model_count(int p, int cap) {
    if (p < 0) throw InvalidInput("negative covariate count");
    if (p > cap) {
        throw NodeBudgetExceeded("brute force over 2^" + std::to_string(p) +
                                 " models exceeds the cap of 2^" + std::to_string(cap));
    }
    return std::uint64_t{1} << p;
}

SearchResult brute_force(const Dataset& data, const SearchOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t total = brute_force_model_count(static_cast<int>(data.p()));

    SearchResult result;
    const double beta_empty = simple_slope(data.x, data.y);
    result.extrema = {beta_empty, beta_empty, {}, {}};

    std::vector<int> subset;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (opts.node_budget && result.nodes_popped >= *opts.node_budget) {
            result.partial = true;
            break;
        }
        subset.clear();
        for (int j = 0; j < data.p(); ++j) {
            if (mask >> j & 1) subset.push_back(j);
        }
        const double beta = multi_slope(data.x, data.y, data.s.select(subset));
        update_extrema(result.extrema, beta, subset);
        ++result.nodes_popped;
    }
    result.nodes_pushed = result.nodes_popped;

    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

}  // namespace betabound
