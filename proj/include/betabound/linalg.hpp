#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "betabound/errors.hpp"

namespace betabound {

using Vector = Eigen::VectorXd;

// Scale-relative tolerances used throughout. A column is considered
// centered when |mean| <= kCenterTol * max|entry|, dependent when its
// orthogonalized remainder is <= kRankTol * (largest column norm), and
// orthogonal to a basis when the inner product is <= kOrthTol * ||v||.
inline constexpr double kCenterTol = 1e-10;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kOrthTol = 1e-8;

// A dense column collection with one text label per column.
struct LabeledMatrix {
    Eigen::MatrixXd values;           // n rows, k columns
    std::vector<std::string> labels;  // size k

    LabeledMatrix() : values(0, 0) {}
    LabeledMatrix(Eigen::MatrixXd v, std::vector<std::string> l);

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
    Vector col(Eigen::Index j) const { return values.col(j); }
    const std::string& label(Eigen::Index j) const { return labels[static_cast<std::size_t>(j)]; }

    // Empty matrix with a fixed row count (so projections know n).
    static LabeledMatrix empty(Eigen::Index n_rows);

    // Column subset in the order given by `indices` (0-based).
    LabeledMatrix select(const std::vector<int>& indices) const;

    void append_column(const Vector& v, const std::string& label);
};

// Subtracts each column's mean. Columns already centered within
// kCenterTol are returned bit-identical, which makes the operation
// exactly idempotent. Throws InvalidInput on a zero-row matrix.
LabeledMatrix center_columns(const LabeledMatrix& m);
Vector center_column(const Vector& v);

// Orthogonal projector onto the span of a fixed set of basis columns.
// Built by modified Gram-Schmidt with one reorthogonalization pass;
// the inverse-free factorization stays accurate for strongly correlated
// columns where forming (w^t w)^{-1} would not.
class ProjectionContext {
public:
    // Throws RankDeficient (naming the offending column) when the basis
    // columns are numerically dependent. An empty basis is valid and
    // projects everything to zero.
    explicit ProjectionContext(const LabeledMatrix& basis);

    Eigen::Index rows() const { return n_; }
    Eigen::Index basis_size() const { return q_.cols(); }

    // Orthogonal projection of v onto span(basis).
    Vector fitted(const Vector& v) const;

    // v minus its projection; orthogonal to every basis column.
    Vector residual(const Vector& v) const;

    // Columnwise residuals; labels are preserved.
    LabeledMatrix residualize(const LabeledMatrix& targets) const;

private:
    Eigen::Index n_;
    Eigen::MatrixXd q_;  // orthonormal, spans the same column space
};

// Least-squares slope of y_res on x_res through the origin:
// <x,y> / <x,x>. Both inputs are centered or residual vectors.
// Throws DegenerateExplanatory when x_res is numerically zero.
double simple_slope(const Vector& x_res, const Vector& y_res);

// Coefficient of x when y is regressed on [x | covs], computed by a
// column-pivoted Householder QR of the full design matrix. This is the
// reference route used by the brute-force search; the branch and bound
// search reaches the same coefficient through residualization instead.
double multi_slope(const Vector& x, const Vector& y, const LabeledMatrix& covs);

// ||fitted(v)||^2 / ||v||^2 in [0, 1]. Throws DegenerateInput on zero v.
double r_squared(const ProjectionContext& ctx, const Vector& v);
double r_squared(const LabeledMatrix& basis, const Vector& v);

// <a,b> / (||a|| ||b||) in [-1, 1]. Throws DegenerateInput on zero norm.
double correlation(const Vector& a, const Vector& b);

// Population (1/n) standard deviation of a centered vector.
double stddev(const Vector& centered);

}  // namespace betabound
