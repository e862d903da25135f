#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "betabound/search.hpp"

namespace betabound {

enum class Mode { bb, bf, both };
enum class Format { text, json };

// Everything the CLI needs to carry out one run.
struct RunConfig {
    std::string data_path;
    std::string y_col;
    std::string x_col;
    std::vector<std::string> cov_cols;  // explicit list wins over all_others
    bool all_others = false;
    std::vector<std::string> interaction_bases;
    std::vector<std::pair<std::string, std::string>> excluded_pairs;
    Mode mode = Mode::bb;
    std::optional<std::uint64_t> node_budget;
    Format format = Format::text;
    std::optional<int> grid_check;  // audit every envelope against the grid oracle
};

// Rendered results of a run: `report` goes to stdout, `diagnostics` to
// stderr, and `exit_code` follows the CLI contract (0 ok, 2 invalid
// input, 3 node budget exceeded with a partial result).
struct RunOutcome {
    std::string report;
    std::string diagnostics;
    int exit_code = 0;
};

// The flat result record both renderers consume. Numeric values are
// printed with 12 significant digits in either format.
struct Report {
    Mode mode = Mode::bb;
    Eigen::Index n = 0;
    Eigen::Index p = 0;
    double beta_simple = 0.0;
    SearchResult primary;
    std::vector<std::string> argmin_labels;
    std::vector<std::string> argmax_labels;
    std::optional<SearchResult> bf;  // present in mode both
    std::optional<bool> agreement;   // present in mode both
};

std::string render_json(const Report& r);
std::string render_text(const Report& r);

// Loads the data, runs the requested search(es), and renders the report.
// Throws betabound errors for input and validation failures; the CLI
// maps those to exit status 2.
RunOutcome run(const RunConfig& config);

// BB and BF extrema agree within 1e-9 relative.
bool extrema_agree(const Extrema& a, const Extrema& b);

}  // namespace betabound
