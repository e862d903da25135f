#pragma once

#include "betabound/linalg.hpp"

namespace betabound {

// rx2_max is kept this far below 1 so the 1 - rx^2 denominator stays
// positive. When the clamp fires the node's envelope is effectively
// unbounded and it will always show potential.
inline constexpr double kDivTol = 1e-12;

// The five scalars that drive the envelope for a node (w, z):
// the residual sigma ratio and correlation of x and y given w, and the
// joint R^2 caps of the remaining candidates against each of them.
struct BoundInputs {
    double sigma_ratio = 1.0;  // sigma(y - yhat_w) / sigma(x - xhat_w), > 0
    double rho = 0.0;          // corr(x - xhat_w, y - yhat_w), in [-1, 1]
    double rx2_max = 0.0;      // R^2 of candidates vs x residual, in [0, 1 - kDivTol]
    double ry2_max = 0.0;      // R^2 of candidates vs y residual, in [0, 1]
};

// Interval [lower, upper] containing the adjusted slope of every model
// that extends the node's included set with any subset of candidates.
struct Envelope {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double beta) const { return lower <= beta && beta <= upper; }
    double width() const { return upper - lower; }
};

// Computes sigma_ratio and rho from the residualized x and y, and the
// R^2 caps from the joint span of all residualized candidate columns.
// z_res may be empty (both caps zero).
BoundInputs bound_inputs(const Vector& x_res, const Vector& y_res,
                         const LabeledMatrix& z_res);

// Exact extrema of
//   f(rx2, ry2, rhohat) = sigma_ratio * (rho - sqrt(rx2 ry2) rhohat) / (1 - rx2)
// over rhohat in [-1,1], rx2 in [0, rx2_max], ry2 in [0, ry2_max],
// computed in constant time. f is linear in rhohat (optima at +-1) and
// monotone in sqrt(ry2) at the optimal rhohat (optimum at the cap), so the
// problem reduces to one dimension in r = sqrt(rx2): evaluate both interval
// endpoints plus any stationary point, a root of c r^2 +- 2 rho r + c = 0
// with c = sqrt(ry2_max), that falls inside the interval.
Envelope envelope(const BoundInputs& b);

// Brute-force check of the same objective over a grid_n x grid_n x 2
// lattice (uniform grids in rx2 and ry2, rhohat in {-1, +1}). The result
// is contained in the exact envelope and converges to it as grid_n grows.
Envelope envelope_grid_oracle(const BoundInputs& b, int grid_n);

}  // namespace betabound
