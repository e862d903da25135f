#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "betabound/linalg.hpp"

namespace betabound {

// Validated, centered analysis table: response y, explanatory x, and the
// p candidate covariate columns. Column means taken before centering are
// retained so interaction terms can be built from the uncentered sources.
struct Dataset {
    Vector y;
    Vector x;
    LabeledMatrix s;
    std::string y_label;
    std::string x_label;
    double y_mean = 0.0;
    double x_mean = 0.0;
    std::vector<double> s_means;
    std::string provenance;  // source path plus the column selection

    Eigen::Index n() const { return y.size(); }
    Eigen::Index p() const { return s.cols(); }

    // Centers all columns and validates: n > p + 1 and [x | s | y] jointly
    // full rank (a rank failure names the offending column). Inputs are the
    // raw, uncentered columns.
    static Dataset from_columns(Vector y, Vector x, LabeledMatrix s,
                                std::string y_label = "y", std::string x_label = "x",
                                std::string provenance = "<memory>");
};

// Which covariate columns to combine into pairwise interaction terms, and
// which unordered label pairs to leave out.
struct InteractionSpec {
    std::vector<std::string> base_labels;
    std::vector<std::pair<std::string, std::string>> excluded_pairs;

    bool excludes(const std::string& a, const std::string& b) const;
};

// Loads a comma-separated file (header row, UTF-8, '.' decimal point).
// Rows with a missing or non-numeric value in any selected column are
// dropped; missing means an empty field, "NA", or "NaN" (case-insensitive).
// The surviving columns are centered and validated as in from_columns.
Dataset load_csv(const std::string& path, const std::string& y_col,
                 const std::string& x_col, const std::vector<std::string>& cov_cols);

// Same selection rule as the CLI's --all-others: every header column
// except y_col and x_col becomes a covariate, in file order.
std::vector<std::string> all_other_columns(const std::string& path,
                                           const std::string& y_col,
                                           const std::string& x_col);

// Appends the entrywise product of every non-excluded unordered pair of
// base columns, multiplying the UNCENTERED sources, then re-centers and
// re-validates. New columns are labeled "A×B" with A before B in base
// order. Adds C(b,2) - |excluded| columns for b bases.
Dataset build_interactions(const Dataset& d, const InteractionSpec& spec);

// Writes the centered table back as CSV with round-trip precision
// (reloading reproduces the in-memory values bit for bit).
void write_csv(const Dataset& d, std::ostream& out);

}  // namespace betabound
