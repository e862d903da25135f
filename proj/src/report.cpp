#include "betabound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace betabound {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Routed through the 12-digit text form so both output formats carry the
// same decimal value.
json num12(double v) { return json::parse(fmt12(v)); }

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::bb: return "bb";
        case Mode::bf: return "bf";
        case Mode::both: return "both";
    }
    return "?";
}

std::string join(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) out += ", ";
        out += labels[i];
    }
    return out;
}

std::vector<std::string> to_labels(const std::vector<int>& subset, const LabeledMatrix& s) {
    std::vector<std::string> out;
    out.reserve(subset.size());
    for (int j : subset) out.push_back(s.label(j));
    return out;
}

}  // namespace

bool extrema_agree(const Extrema& a, const Extrema& b) {
    const auto close = [](double u, double v) {
        return std::abs(u - v) <= 1e-9 * std::max({1.0, std::abs(u), std::abs(v)});
    };
    return close(a.lower, b.lower) && close(a.upper, b.upper);
}

std::string render_json(const Report& r) {
    json out;
    out["mode"] = mode_name(r.mode);
    out["n"] = static_cast<std::int64_t>(r.n);
    out["p"] = static_cast<std::int64_t>(r.p);
    out["beta_simple"] = num12(r.beta_simple);
    out["lower"] = num12(r.primary.extrema.lower);
    out["upper"] = num12(r.primary.extrema.upper);
    out["argmin"] = r.argmin_labels;
    out["argmax"] = r.argmax_labels;
    out["nodes_popped"] = r.primary.nodes_popped;
    out["nodes_pruned"] = r.primary.nodes_pruned;
    out["nodes_pushed"] = r.primary.nodes_pushed;
    out["elapsed_ms"] = num12(r.primary.elapsed.count());
    if (r.primary.partial || (r.bf && r.bf->partial)) out["partial"] = true;
    if (r.bf) {
        out["bf"] = {
            {"lower", num12(r.bf->extrema.lower)},
            {"upper", num12(r.bf->extrema.upper)},
            {"nodes_popped", r.bf->nodes_popped},
            {"nodes_pruned", r.bf->nodes_pruned},
            {"nodes_pushed", r.bf->nodes_pushed},
            {"elapsed_ms", num12(r.bf->elapsed.count())},
        };
    }
    if (r.agreement) out["agreement"] = *r.agreement;
    return out.dump(2) + "\n";
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << "mode: " << mode_name(r.mode) << "\n";
    out << "n: " << r.n << "\n";
    out << "p: " << r.p << "\n";
    out << "beta_simple: " << fmt12(r.beta_simple) << "\n";
    out << "lower: " << fmt12(r.primary.extrema.lower) << "\n";
    out << "upper: " << fmt12(r.primary.extrema.upper) << "\n";
    out << "argmin: {" << join(r.argmin_labels) << "}\n";
    out << "argmax: {" << join(r.argmax_labels) << "}\n";
    out << "nodes_popped: " << r.primary.nodes_popped << "\n";
    out << "nodes_pruned: " << r.primary.nodes_pruned << "\n";
    out << "nodes_pushed: " << r.primary.nodes_pushed << "\n";
    out << "elapsed_ms: " << fmt12(r.primary.elapsed.count()) << "\n";
    if (r.primary.partial || (r.bf && r.bf->partial)) out << "partial: true\n";
    if (r.bf) {
        out << "bf.lower: " << fmt12(r.bf->extrema.lower) << "\n";
        out << "bf.upper: " << fmt12(r.bf->extrema.upper) << "\n";
        out << "bf.nodes_popped: " << r.bf->nodes_popped << "\n";
        out << "bf.nodes_pruned: " << r.bf->nodes_pruned << "\n";
        out << "bf.nodes_pushed: " << r.bf->nodes_pushed << "\n";
        out << "bf.elapsed_ms: " << fmt12(r.bf->elapsed.count()) << "\n";
    }
    if (r.agreement) out << "agreement: " << (*r.agreement ? "true" : "false") << "\n";
    return out.str();
}

RunOutcome run(const RunConfig& config) {
    std::vector<std::string> covs = config.cov_cols;
    if (covs.empty() && config.all_others) {
        covs = all_other_columns(config.data_path, config.y_col, config.x_col);
    }
    Dataset data = load_csv(config.data_path, config.y_col, config.x_col, covs);
    if (!config.interaction_bases.empty()) {
        data = build_interactions(data,
                                  InteractionSpec{config.interaction_bases,
                                                  config.excluded_pairs});
    }

    SearchOptions opts;
    opts.node_budget = config.node_budget;

    // Envelope audit: every envelope the search computes must contain the
    // grid oracle's envelope; tracks the largest gap seen.
    std::uint64_t audited = 0;
    double max_gap = 0.0;
    double worst_overhang = 0.0;
    if (config.grid_check) {
        const int grid_n = *config.grid_check;
        opts.on_envelope = [&, grid_n](const BoundInputs& b, const Envelope& env) {
            const Envelope grid = envelope_grid_oracle(b, grid_n);
            ++audited;
            worst_overhang = std::max({worst_overhang, grid.upper - env.upper,
                                       env.lower - grid.lower});
            max_gap = std::max({max_gap, env.upper - grid.upper, grid.lower - env.lower});
        };
    }

    Report report;
    report.mode = config.mode;
    report.n = data.n();
    report.p = data.p();
    report.beta_simple = simple_slope(data.x, data.y);

    if (config.mode == Mode::bf) {
        report.primary = brute_force(data, opts);
    } else {
        report.primary = branch_and_bound(data, opts);
        if (config.mode == Mode::both) {
            report.bf = brute_force(data, opts);
            report.agreement = extrema_agree(report.primary.extrema, report.bf->extrema);
        }
    }
    report.argmin_labels = to_labels(report.primary.extrema.argmin_subset, data.s);
    report.argmax_labels = to_labels(report.primary.extrema.argmax_subset, data.s);

    RunOutcome outcome;
    outcome.report =
        config.format == Format::json ? render_json(report) : render_text(report);

    if (config.grid_check) {
        std::ostringstream diag;
        const double scale =
            1.0 + std::abs(report.primary.extrema.lower) + std::abs(report.primary.extrema.upper);
        const bool sound = worst_overhang <= 1e-12 * scale;
        diag << "grid-check: audited " << audited << " envelopes (grid_n="
             << *config.grid_check << "), max gap " << fmt12(max_gap)
             << (sound ? "" : ", CONTAINMENT VIOLATION") << "\n";
        outcome.diagnostics += diag.str();
        if (!sound) {
            outcome.exit_code = 2;
            return outcome;
        }
    }

    if (report.primary.partial || (report.bf && report.bf->partial)) {
        outcome.diagnostics += "node budget exceeded; result covers the explored nodes only\n";
        outcome.exit_code = 3;
    }
    return outcome;
}

}  // namespace betabound
