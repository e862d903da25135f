#include "betabound/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace betabound {

LabeledMatrix::LabeledMatrix(Eigen::MatrixXd v, std::vector<std::string> l)
    : values(std::move(v)), labels(std::move(l)) {
    if (static_cast<std::size_t>(values.cols()) != labels.size()) {
        throw InvalidInput("LabeledMatrix: one label per column required");
    }
}

LabeledMatrix LabeledMatrix::empty(Eigen::Index n_rows) {
    LabeledMatrix m;
    m.values.resize(n_rows, 0);
    return m;
}

LabeledMatrix LabeledMatrix::select(const std::vector<int>& indices) const {
    LabeledMatrix out;
    out.values.resize(rows(), static_cast<Eigen::Index>(indices.size()));
    out.labels.reserve(indices.size());
    Eigen::Index j = 0;
    for (int idx : indices) {
        if (idx < 0 || idx >= cols()) {
            throw InvalidInput("column index out of range: " + std::to_string(idx));
        }
        out.values.col(j++) = values.col(idx);
        out.labels.push_back(labels[static_cast<std::size_t>(idx)]);
    }
    return out;
}

void LabeledMatrix::append_column(const Vector& v, const std::string& label) {
    if (cols() > 0 && v.size() != rows()) {
        throw InvalidInput("append_column: row count mismatch");
    }
    Eigen::MatrixXd grown(v.size(), cols() + 1);
    if (cols() > 0) grown.leftCols(cols()) = values;
    grown.col(cols()) = v;
    values = std::move(grown);
    labels.push_back(label);
}

Vector center_column(const Vector& v) {
    if (v.size() == 0) throw InvalidInput("center: empty column");
    const double mean = v.mean();
    const double scale = v.cwiseAbs().maxCoeff();
    if (std::abs(mean) <= kCenterTol * scale) return v;  // exactly idempotent
    return v.array() - mean;
}

LabeledMatrix center_columns(const LabeledMatrix& m) {
    if (m.rows() == 0) throw InvalidInput("center_columns: zero rows");
    LabeledMatrix out = m;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out.values.col(j) = center_column(m.values.col(j));
    }
    return out;
}

ProjectionContext::ProjectionContext(const LabeledMatrix& basis) : n_(basis.rows()) {
    const Eigen::Index k = basis.cols();
    q_.resize(n_, k);
    if (k == 0) return;

    double max_norm = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        max_norm = std::max(max_norm, basis.values.col(j).norm());
    }
    const double dep_tol = kRankTol * max_norm;

    for (Eigen::Index j = 0; j < k; ++j) {
        Vector q = basis.values.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < j; ++i) {
                q -= q_.col(i).dot(q) * q_.col(i);
            }
        }
        const double norm = q.norm();
        if (norm <= dep_tol) throw RankDeficient(basis.label(j));
        q_.col(j) = q / norm;
    }
}

Vector ProjectionContext::fitted(const Vector& v) const {
    if (v.size() != n_) throw InvalidInput("fitted: row count mismatch");
    if (q_.cols() == 0) return Vector::Zero(n_);
    return q_ * (q_.transpose() * v);
}

Vector ProjectionContext::residual(const Vector& v) const {
    return v - fitted(v);
}

LabeledMatrix ProjectionContext::residualize(const LabeledMatrix& targets) const {
    if (targets.rows() != n_) throw InvalidInput("residualize: row count mismatch");
    LabeledMatrix out = targets;
    for (Eigen::Index j = 0; j < targets.cols(); ++j) {
        out.values.col(j) = residual(targets.values.col(j));
    }
    return out;
}

double simple_slope(const Vector& x_res, const Vector& y_res) {
    if (x_res.size() != y_res.size()) throw InvalidInput("simple_slope: size mismatch");
    const double xx = x_res.squaredNorm();
    if (std::sqrt(xx) <= kRankTol) {
        throw DegenerateExplanatory("explanatory vector is numerically zero");
    }
    return x_res.dot(y_res) / xx;
}

double multi_slope(const Vector& x, const Vector& y, const LabeledMatrix& covs) {
    if (x.size() != y.size() || (covs.cols() > 0 && covs.rows() != x.size())) {
        throw InvalidInput("multi_slope: row count mismatch");
    }
    const Eigen::Index k = covs.cols();
    // Keep the covariate-free model on the same arithmetic as simple_slope,
    // so enumeration and the search agree on it bit for bit.
    if (k == 0) return simple_slope(x, y);
    Eigen::MatrixXd design(x.size(), 1 + k);
    design.col(0) = x;
    if (k > 0) design.rightCols(k) = covs.values;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(kRankTol);
    if (qr.rank() < design.cols()) {
        throw RankDeficient("<design matrix of multi_slope>");
    }
    return qr.solve(y)(0);
}

double r_squared(const ProjectionContext& ctx, const Vector& v) {
    const double vv = v.squaredNorm();
    if (vv == 0.0) throw DegenerateInput("r_squared: zero vector");
    const double r2 = ctx.fitted(v).squaredNorm() / vv;
    return std::clamp(r2, 0.0, 1.0);
}

double r_squared(const LabeledMatrix& basis, const Vector& v) {
    return r_squared(ProjectionContext(basis), v);
}

double correlation(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("correlation: size mismatch");
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw DegenerateInput("correlation: zero-norm input");
    return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

double stddev(const Vector& centered) {
    if (centered.size() == 0) throw InvalidInput("stddev: empty vector");
    return centered.norm() / std::sqrt(static_cast<double>(centered.size()));
}

}  // namespace betabound
