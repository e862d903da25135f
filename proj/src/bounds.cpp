#include "betabound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace betabound {

BoundInputs bound_inputs(const Vector& x_res, const Vector& y_res,
                         const LabeledMatrix& z_res) {
    BoundInputs b;
    const double nx = x_res.norm();
    const double ny = y_res.norm();
    if (nx == 0.0 || ny == 0.0) throw DegenerateInput("bound_inputs: zero residual");
    b.sigma_ratio = ny / nx;
    b.rho = correlation(x_res, y_res);
    if (z_res.cols() > 0) {
        ProjectionContext span(z_res);
        b.rx2_max = std::min(r_squared(span, x_res), 1.0 - kDivTol);
        b.ry2_max = r_squared(span, y_res);
    }
    return b;
}

namespace {

// max over r in [0, r_cap] of (rho + c*r) / (1 - r^2), with c >= 0 and
// r_cap < 1. Candidates are the endpoints and any interior root of the
// stationary equation c r^2 + 2 rho r + c = 0. The discriminant is formed
// as (|rho|-c)(|rho|+c) and the roots via the q-formula, which keeps
// precision near |rho| = c where the two stationary points coalesce.
double max_over_r(double rho, double c, double r_cap) {
    const auto value = [&](double r) { return (rho + c * r) / (1.0 - r * r); };
    double best = std::max(value(0.0), value(r_cap));
    if (c > 0.0) {
        const double disc = (std::abs(rho) - c) * (std::abs(rho) + c);
        if (disc >= 0.0) {
            const double q = -(rho + std::copysign(std::sqrt(disc), rho));
            const double roots[2] = {q / c, q != 0.0 ? c / q : 0.0};
            for (double r : roots) {
                if (r > 0.0 && r < r_cap) best = std::max(best, value(r));
            }
        }
    }
    return best;
}

}  // namespace

Envelope envelope(const BoundInputs& b) {
    const double r_cap = std::sqrt(std::min(b.rx2_max, 1.0 - kDivTol));
    const double c = std::sqrt(std::clamp(b.ry2_max, 0.0, 1.0));
    Envelope env;
    env.upper = b.sigma_ratio * max_over_r(b.rho, c, r_cap);
    // The objective at rhohat = +1 is the negation of the rhohat = -1
    // objective with rho negated, so the minimum follows by symmetry.
    env.lower = -b.sigma_ratio * max_over_r(-b.rho, c, r_cap);
    return env;
}

Envelope envelope_grid_oracle(const BoundInputs& b, int grid_n) {
    if (grid_n < 2) throw InvalidInput("envelope_grid_oracle: grid_n must be >= 2");
    Envelope env;
    env.lower = std::numeric_limits<double>::infinity();
    env.upper = -std::numeric_limits<double>::infinity();
    const double rx2_step = b.rx2_max / (grid_n - 1);
    const double ry2_step = b.ry2_max / (grid_n - 1);
    for (int i = 0; i < grid_n; ++i) {
        const double rx2 = i * rx2_step;
        const double rx = std::sqrt(rx2);
        const double denom = 1.0 - rx2;
        for (int j = 0; j < grid_n; ++j) {
            const double cross = rx * std::sqrt(j * ry2_step);
            for (double rhohat : {-1.0, 1.0}) {
                const double f = b.sigma_ratio * (b.rho - cross * rhohat) / denom;
                env.lower = std::min(env.lower, f);
                env.upper = std::max(env.upper, f);
            }
        }
    }
    return env;
}

}  // namespace betabound
