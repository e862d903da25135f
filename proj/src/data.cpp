#include "betabound/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace betabound {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool is_missing(const std::string& field) {
    if (field.empty()) return true;
    const std::string low = to_lower(field);
    return low == "na" || low == "nan";
}

// Returns false for missing or unparseable fields.
bool parse_number(const std::string& field, double& out) {
    if (is_missing(field)) return false;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) fields.push_back(trim(cur));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::vector<std::string> read_header(std::ifstream& file, const std::string& path) {
    std::string line;
    if (!std::getline(file, line)) throw IoError("empty file: " + path);
    return split_line(line);
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& label) {
    const auto it = std::find(header.begin(), header.end(), label);
    if (it == header.end()) throw ColumnNotFound(label);
    return static_cast<std::size_t>(it - header.begin());
}

// Validates the joint rank of [x | s | y] so a dependency is blamed on
// the covariate (or on y) rather than on x, whose label comes first.
void validate_rank(const Vector& x, const LabeledMatrix& s, const Vector& y,
                   const std::string& x_label, const std::string& y_label) {
    LabeledMatrix joint;
    joint.values.resize(x.size(), 0);
    joint.append_column(x, x_label);
    for (Eigen::Index j = 0; j < s.cols(); ++j) joint.append_column(s.col(j), s.label(j));
    joint.append_column(y, y_label);
    ProjectionContext check(joint);  // throws RankDeficient with the label
}

}  // namespace

Dataset Dataset::from_columns(Vector y, Vector x, LabeledMatrix s,
                              std::string y_label, std::string x_label,
                              std::string provenance) {
    const Eigen::Index n = y.size();
    if (n == 0) throw InvalidInput("dataset has no rows");
    if (x.size() != n || (s.cols() > 0 && s.rows() != n)) {
        throw InvalidInput("dataset columns disagree on row count");
    }
    if (n <= s.cols() + 1) {
        throw TooFewRows("need more than p + 1 = " + std::to_string(s.cols() + 1) +
                         " rows, have " + std::to_string(n));
    }

    Dataset d;
    d.y_mean = y.mean();
    d.x_mean = x.mean();
    d.s_means.reserve(static_cast<std::size_t>(s.cols()));
    for (Eigen::Index j = 0; j < s.cols(); ++j) d.s_means.push_back(s.col(j).mean());

    d.y = center_column(y);
    d.x = center_column(x);
    d.s = s.cols() > 0 ? center_columns(s) : s;
    d.y_label = std::move(y_label);
    d.x_label = std::move(x_label);
    d.provenance = std::move(provenance);

    validate_rank(d.x, d.s, d.y, d.x_label, d.y_label);
    return d;
}

bool InteractionSpec::excludes(const std::string& a, const std::string& b) const {
    for (const auto& [p, q] : excluded_pairs) {
        if ((p == a && q == b) || (p == b && q == a)) return true;
    }
    return false;
}

Dataset load_csv(const std::string& path, const std::string& y_col,
                 const std::string& x_col, const std::vector<std::string>& cov_cols) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open file: " + path);
    const std::vector<std::string> header = read_header(file, path);

    std::vector<std::size_t> wanted;
    wanted.push_back(find_column(header, y_col));
    wanted.push_back(find_column(header, x_col));
    for (const auto& label : cov_cols) wanted.push_back(find_column(header, label));

    // Row-major staging; rows with any missing selected field are dropped.
    std::vector<std::vector<double>> kept;
    std::string line;
    while (std::getline(file, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_line(line);
        std::vector<double> row(wanted.size());
        bool complete = true;
        for (std::size_t k = 0; k < wanted.size(); ++k) {
            if (wanted[k] >= fields.size() || !parse_number(fields[wanted[k]], row[k])) {
                complete = false;
                break;
            }
        }
        if (complete) kept.push_back(std::move(row));
    }

    const Eigen::Index n = static_cast<Eigen::Index>(kept.size());
    const Eigen::Index p = static_cast<Eigen::Index>(cov_cols.size());
    if (n <= p + 1) {
        throw TooFewRows("after dropping incomplete rows: " + std::to_string(n) +
                         " rows for p = " + std::to_string(p));
    }

    Vector y(n), x(n);
    LabeledMatrix s(Eigen::MatrixXd(n, p), cov_cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i) = kept[static_cast<std::size_t>(i)][0];
        x(i) = kept[static_cast<std::size_t>(i)][1];
        for (Eigen::Index j = 0; j < p; ++j) {
            s.values(i, j) = kept[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 2];
        }
    }

    std::ostringstream prov;
    prov << path << " [y=" << y_col << " x=" << x_col << " p=" << p << "]";
    return Dataset::from_columns(std::move(y), std::move(x), std::move(s),
                                 y_col, x_col, prov.str());
}

std::vector<std::string> all_other_columns(const std::string& path,
                                           const std::string& y_col,
                                           const std::string& x_col) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open file: " + path);
    const std::vector<std::string> header = read_header(file, path);
    find_column(header, y_col);
    find_column(header, x_col);
    std::vector<std::string> covs;
    for (const auto& label : header) {
        if (label != y_col && label != x_col) covs.push_back(label);
    }
    return covs;
}

Dataset build_interactions(const Dataset& d, const InteractionSpec& spec) {
    if (spec.base_labels.empty()) return d;

    std::vector<Eigen::Index> base_idx;
    for (const auto& label : spec.base_labels) {
        Eigen::Index found = -1;
        for (Eigen::Index j = 0; j < d.s.cols(); ++j) {
            if (d.s.label(j) == label) {
                found = j;
                break;
            }
        }
        if (found < 0) throw ColumnNotFound(label);
        base_idx.push_back(found);
    }
    for (const auto& [a, b] : spec.excluded_pairs) {
        for (const auto& label : {a, b}) {
            if (std::find(spec.base_labels.begin(), spec.base_labels.end(), label) ==
                spec.base_labels.end()) {
                throw ColumnNotFound(label);
            }
        }
    }

    // Products of the uncentered source columns; everything is re-centered
    // by from_columns afterward.
    LabeledMatrix grown = d.s;
    for (std::size_t a = 0; a < base_idx.size(); ++a) {
        const Vector col_a =
            d.s.col(base_idx[a]).array() + d.s_means[static_cast<std::size_t>(base_idx[a])];
        for (std::size_t b = a + 1; b < base_idx.size(); ++b) {
            if (spec.excludes(spec.base_labels[a], spec.base_labels[b])) continue;
            const Vector col_b =
                d.s.col(base_idx[b]).array() + d.s_means[static_cast<std::size_t>(base_idx[b])];
            grown.append_column(col_a.cwiseProduct(col_b),
                                spec.base_labels[a] + "\xC3\x97" + spec.base_labels[b]);
        }
    }

    const Vector y_raw = d.y.array() + d.y_mean;
    const Vector x_raw = d.x.array() + d.x_mean;
    LabeledMatrix s_raw = grown;
    for (Eigen::Index j = 0; j < d.s.cols(); ++j) {
        s_raw.values.col(j) = d.s.col(j).array() + d.s_means[static_cast<std::size_t>(j)];
    }
    return Dataset::from_columns(y_raw, x_raw, std::move(s_raw), d.y_label, d.x_label,
                                 d.provenance + " +interactions");
}

void write_csv(const Dataset& d, std::ostream& out) {
    out.precision(17);
    out << d.y_label << ',' << d.x_label;
    for (Eigen::Index j = 0; j < d.s.cols(); ++j) out << ',' << d.s.label(j);
    out << '\n';
    for (Eigen::Index i = 0; i < d.n(); ++i) {
        out << d.y(i) << ',' << d.x(i);
        for (Eigen::Index j = 0; j < d.s.cols(); ++j) out << ',' << d.s.values(i, j);
        out << '\n';
    }
}

}  // namespace betabound
