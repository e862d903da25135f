#pragma once

// Test-only oracles and data generators. The oracles deliberately follow
// the textbook definitions (dense projector, normal equations solved by
// elimination) so they share no code path with the library's
// orthogonalization- and QR-based routines.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "betabound/data.hpp"
#include "betabound/linalg.hpp"

namespace testutil {

using betabound::Dataset;
using betabound::LabeledMatrix;
using betabound::Vector;

inline bool rel_close(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Solves A b = rhs by Gaussian elimination with partial pivoting.
inline Vector solve_by_elimination(Eigen::MatrixXd a, Vector rhs) {
    const Eigen::Index k = a.rows();
    if (a.cols() != k || rhs.size() != k) throw std::invalid_argument("square system required");
    for (Eigen::Index col = 0; col < k; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < k; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (a(pivot, col) == 0.0) throw std::runtime_error("singular system");
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            std::swap(rhs(pivot), rhs(col));
        }
        for (Eigen::Index r = col + 1; r < k; ++r) {
            const double f = a(r, col) / a(col, col);
            a.row(r).tail(k - col) -= f * a.row(col).tail(k - col);
            rhs(r) -= f * rhs(col);
        }
    }
    Vector b(k);
    for (Eigen::Index r = k; r-- > 0;) {
        double acc = rhs(r);
        for (Eigen::Index c = r + 1; c < k; ++c) acc -= a(r, c) * b(c);
        b(r) = acc / a(r, r);
    }
    return b;
}

// Normal-equation fitted values: w (w^t w)^{-1} w^t v by elimination.
inline Vector normal_equation_fitted(const Eigen::MatrixXd& w, const Vector& v) {
    if (w.cols() == 0) return Vector::Zero(v.size());
    const Eigen::MatrixXd gram = w.transpose() * w;
    const Vector b = solve_by_elimination(gram, w.transpose() * v);
    return w * b;
}

// The explicit projector matrix I - w (w^t w)^{-1} w^t.
inline Eigen::MatrixXd dense_residual_projector(const Eigen::MatrixXd& w) {
    const Eigen::Index n = w.rows();
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
    if (w.cols() == 0) return p;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vector col = p.col(j);
        p.col(j) = col - normal_equation_fitted(w, col);
    }
    return p;
}

inline Vector gaussian(std::mt19937_64& rng, Eigen::Index n, double sd = 1.0) {
    std::normal_distribution<double> dist(0.0, sd);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(rng);
    return v;
}

inline LabeledMatrix random_columns(std::mt19937_64& rng, Eigen::Index n, int k,
                                    const std::string& prefix = "s") {
    LabeledMatrix m;
    m.values.resize(n, k);
    for (int j = 0; j < k; ++j) {
        m.values.col(j) = gaussian(rng, n);
        m.labels.push_back(prefix + std::to_string(j + 1));
    }
    return m;
}

// A dataset whose covariates mix confounder-like columns (tied to both x
// and y), instrument-like columns (tied to x only), outcome-side columns,
// and pure noise, with randomized loadings and scales.
inline Dataset random_instance(std::mt19937_64& rng, Eigen::Index n, int p) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> kind_of(0, 3);

    const Vector u = gaussian(rng, n);       // shared confounder
    const Vector ex = gaussian(rng, n);      // x-specific part
    const Vector x = 0.8 * u + ex;
    const Vector ey = gaussian(rng, n);
    const double beta_true = unif(rng);
    const Vector y = beta_true * x + 0.9 * u + ey;

    LabeledMatrix s;
    s.values.resize(n, p);
    for (int j = 0; j < p; ++j) {
        Vector col = 0.4 * gaussian(rng, n);
        switch (kind_of(rng)) {
            case 0: col += unif(rng) * u; break;                    // confounder-like
            case 1: col += unif(rng) * ex; break;                   // instrument-like
            case 2: col += unif(rng) * ey; break;                   // outcome-side
            default: break;                                         // noise
        }
        col *= std::exp(0.5 * unif(rng));
        s.values.col(j) = col;
        s.labels.push_back("s" + std::to_string(j + 1));
    }
    return Dataset::from_columns(y, x, std::move(s));
}

// Covariates drawn as noisy copies of two latent factors that drive x
// and y in opposite directions: extensions matter, yet once one copy of
// each factor is included the rest are nearly redundant.
inline Dataset correlated_instance(std::mt19937_64& rng, Eigen::Index n, int p,
                                   double noise = 0.1) {
    const Vector u = gaussian(rng, n);
    const Vector v = gaussian(rng, n);
    const Vector x = u + v + 0.5 * gaussian(rng, n);
    const Vector y = 0.5 * x + u - v + 0.5 * gaussian(rng, n);

    LabeledMatrix s;
    s.values.resize(n, p);
    for (int j = 0; j < p; ++j) {
        const Vector& base = (j % 2 == 0) ? u : v;
        s.values.col(j) = base + noise * gaussian(rng, n);
        s.labels.push_back("s" + std::to_string(j + 1));
    }
    return Dataset::from_columns(y, x, std::move(s));
}

}  // namespace testutil
