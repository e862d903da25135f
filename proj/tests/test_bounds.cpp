#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "betabound/bounds.hpp"
#include "betabound/linalg.hpp"
#include "helpers.hpp"

using namespace betabound;
using testutil::rel_close;

namespace {

Envelope env(double sigma, double rho, double rx2, double ry2) {
    BoundInputs b;
    b.sigma_ratio = sigma;
    b.rho = rho;
    b.rx2_max = rx2;
    b.ry2_max = ry2;
    return envelope(b);
}

}  // namespace

TEST_CASE("zero caps pin the envelope to the simple slope") {
    const Envelope e = env(2.0, 0.5, 0.0, 0.0);
    CHECK(e.lower == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.upper == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero explanatory cap leaves a symmetric band from the response cap") {
    // rx2_max = 0 forces r_x = 0: slope = sigma*(rho - 0*ry*rhohat) ... but
    // rhohat sweeps the sign, and the extreme of -r_x*r_y*rhohat at r_x = 0
    // vanishes, so the band collapses to sigma*rho regardless of ry2_max.
    const Envelope e = env(1.5, -0.4, 0.0, 0.8);
    CHECK(e.lower == doctest::Approx(-0.6).epsilon(1e-14));
    CHECK(e.upper == doctest::Approx(-0.6).epsilon(1e-14));
}

TEST_CASE("frozen worked example") {
    // sigma = 1, rho = 1/2, both caps 1/4. Hand derivation: the upper
    // objective (rho - r^2)/(1 - r^2) ... with rhohat = -1 and ry at cap,
    // g(r) = (1/2 + r/2)/(1 - r^2) = 1/(2(1-r)), increasing, so r = 1/2
    // and the maximum is 1. Lower: rhohat = +1, h(r) = (1/2 - r/2)/(1-r^2)
    // = 1/(2(1+r)), decreasing, so r = 1/2 gives 1/3.
    const Envelope e = env(1.0, 0.5, 0.25, 0.25);
    CHECK(e.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(e.upper == doctest::Approx(1.0).epsilon(1e-12));

    BoundInputs b;
    b.sigma_ratio = 1.0;
    b.rho = 0.5;
    b.rx2_max = 0.25;
    b.ry2_max = 0.25;
    const Envelope g = envelope_grid_oracle(b, 2001);
    CHECK(std::abs(g.lower - e.lower) < 1e-3);
    CHECK(std::abs(g.upper - e.upper) < 1e-3);
}

TEST_CASE("sign symmetry: negating rho mirrors the envelope") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        BoundInputs b;
        b.sigma_ratio = 0.2 + 3.0 * unit(rng);
        b.rho = 2.0 * unit(rng) - 1.0;
        b.rx2_max = 0.95 * unit(rng);
        b.ry2_max = unit(rng);
        BoundInputs m = b;
        m.rho = -b.rho;
        const Envelope e = envelope(b);
        const Envelope f = envelope(m);
        CHECK(rel_close(e.lower, -f.upper, 1e-12));
        CHECK(rel_close(e.upper, -f.lower, 1e-12));
    }
}

TEST_CASE("envelope always contains the unadjusted point") {
    // the empty candidate subset realizes slope = sigma * rho
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        BoundInputs b;
        b.sigma_ratio = 0.1 + 5.0 * unit(rng);
        b.rho = 2.0 * unit(rng) - 1.0;
        b.rx2_max = 0.98 * unit(rng);
        b.ry2_max = unit(rng);
        const Envelope e = envelope(b);
        const double point = b.sigma_ratio * b.rho;
        CHECK(e.lower <= point + 1e-12);
        CHECK(e.upper >= point - 1e-12);
    }
}

TEST_CASE("envelope dominates a fine grid") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        BoundInputs b;
        b.sigma_ratio = 0.2 + 2.0 * unit(rng);
        b.rho = 2.0 * unit(rng) - 1.0;
        b.rx2_max = 0.9 * unit(rng);
        b.ry2_max = unit(rng);
        const Envelope e = envelope(b);
        const Envelope g = envelope_grid_oracle(b, 301);
        // grid optima can never escape the analytic envelope
        CHECK(g.lower >= e.lower - 1e-10 * (1.0 + std::abs(e.lower)));
        CHECK(g.upper <= e.upper + 1e-10 * (1.0 + std::abs(e.upper)));
    }
}

TEST_CASE("grid converges to the analytic envelope") {
    BoundInputs b;
    b.sigma_ratio = 1.7;
    b.rho = -0.35;
    b.rx2_max = 0.6;
    b.ry2_max = 0.45;
    const Envelope e = envelope(b);
    double prev_gap = 1e300;
    for (int grid_n : {11, 101, 1001}) {
        const Envelope g = envelope_grid_oracle(b, grid_n);
        const double gap =
            std::max(std::abs(g.lower - e.lower), std::abs(g.upper - e.upper));
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap < 5e-3);
}

TEST_CASE("grid oracle rejects a degenerate grid") {
    BoundInputs b;
    CHECK_THROWS_AS(envelope_grid_oracle(b, 1), InvalidInput);
}

TEST_CASE("envelope widens monotonically in the caps") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        BoundInputs small;
        small.sigma_ratio = 0.2 + 2.0 * unit(rng);
        small.rho = 2.0 * unit(rng) - 1.0;
        small.rx2_max = 0.5 * unit(rng);
        small.ry2_max = 0.5 * unit(rng);
        BoundInputs big = small;
        big.rx2_max += 0.4 * unit(rng);
        big.ry2_max += 0.4 * unit(rng);
        const Envelope a = envelope(small);
        const Envelope c = envelope(big);
        CHECK(c.lower <= a.lower + 1e-12);
        CHECK(c.upper >= a.upper - 1e-12);
    }
}

TEST_CASE("bound_inputs on hand-checkable vectors") {
    // x_res = e1 - e2, y_res = 2(e1 - e2): rho = 1, sigma = 2.
    // Single candidate z = e3 - e4 orthogonal to both: caps are 0.
    Vector x(4), y(4), z(4);
    x << 1, -1, 0, 0;
    y << 2, -2, 0, 0;
    z << 0, 0, 1, -1;
    LabeledMatrix zm;
    zm.values.resize(4, 1);
    zm.values.col(0) = z;
    zm.labels = {"z"};
    const BoundInputs b = bound_inputs(x, y, zm);
    CHECK(b.sigma_ratio == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.rho == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.rx2_max == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(b.ry2_max == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("bound_inputs caps match the dense projector oracle") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = 18;
        const Dataset d = testutil::random_instance(rng, n, 4);
        const Vector x = d.x;
        const Vector y = d.y;
        const BoundInputs b = bound_inputs(x, y, d.s);

        const Eigen::MatrixXd res_proj = testutil::dense_residual_projector(d.s.values);
        const double rx2 = 1.0 - (res_proj * x).squaredNorm() / x.squaredNorm();
        const double ry2 = 1.0 - (res_proj * y).squaredNorm() / y.squaredNorm();
        CHECK(std::abs(b.rx2_max - rx2) < 1e-10);
        CHECK(std::abs(b.ry2_max - ry2) < 1e-10);
        CHECK(rel_close(b.sigma_ratio, y.norm() / x.norm(), 1e-12));
        CHECK(rel_close(b.rho, x.dot(y) / (x.norm() * y.norm()), 1e-12));
    }
}

TEST_CASE("bound_inputs clamps a full-span explanatory cap below one") {
    // x inside span(z): rx2 would be exactly 1 and the envelope division
    // would blow up; the cap must come back strictly below 1.
    std::mt19937_64 rng(17);
    const Eigen::Index n = 10;
    LabeledMatrix z = testutil::random_columns(rng, n, 2, "z");
    const Vector x = center_column(Vector(z.col(0) + 0.5 * z.col(1)));
    const Vector y = center_column(testutil::gaussian(rng, n));
    const BoundInputs b = bound_inputs(x, y, z);
    CHECK(b.rx2_max < 1.0);
    const Envelope e = envelope(b);
    CHECK(std::isfinite(e.lower));
    CHECK(std::isfinite(e.upper));
}

// Soundness on data: every one of the 2^p adjusted slopes must lie inside
// the envelope computed at the root. Single-candidate subsets achieve
// rhohat = +/-1 exactly, so they sit on the boundary up to representation
// error; the slack below absorbs only that.
TEST_CASE("every subset slope lies inside the root envelope") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 12; ++trial) {
        const Eigen::Index n = 24;
        const int p = 5;
        const Dataset d = testutil::random_instance(rng, n, p);
        const BoundInputs b = bound_inputs(d.x, d.y, d.s);
        const Envelope e = envelope(b);
        const double scale = std::max({1.0, std::abs(e.lower), std::abs(e.upper)});
        for (int mask = 0; mask < (1 << p); ++mask) {
            std::vector<int> subset;
            for (int j = 0; j < p; ++j) {
                if (mask & (1 << j)) subset.push_back(j);
            }
            const double slope = multi_slope(d.x, d.y, d.s.select(subset));
            CHECK(slope >= e.lower - 1e-9 * scale);
            CHECK(slope <= e.upper + 1e-9 * scale);
        }
    }
}

// Same property at interior nodes: fix a conditioning set, bound the rest.
TEST_CASE("conditional envelopes stay sound") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 26;
        const Dataset d = testutil::random_instance(rng, n, 6);
        const std::vector<int> iw = {1, 4};
        const std::vector<int> iz = {0, 2, 3, 5};
        const ProjectionContext ctx(d.s.select(iw));
        const Vector x_res = ctx.residual(d.x);
        const Vector y_res = ctx.residual(d.y);
        const LabeledMatrix z_res = ctx.residualize(d.s.select(iz));
        const Envelope e = envelope(bound_inputs(x_res, y_res, z_res));
        const double scale = std::max({1.0, std::abs(e.lower), std::abs(e.upper)});
        const int pz = static_cast<int>(iz.size());
        for (int mask = 0; mask < (1 << pz); ++mask) {
            std::vector<int> subset = iw;
            for (int j = 0; j < pz; ++j) {
                if (mask & (1 << j)) subset.push_back(iz[static_cast<size_t>(j)]);
            }
            const double slope = multi_slope(d.x, d.y, d.s.select(subset));
            CHECK(slope >= e.lower - 1e-9 * scale);
            CHECK(slope <= e.upper + 1e-9 * scale);
        }
    }
}

TEST_CASE("bound_inputs with no candidates leaves both caps at zero") {
    Vector x(3), y(3);
    x << 1, -1, 0;
    y << 0, 1, -1;
    const BoundInputs b = bound_inputs(x, y, LabeledMatrix::empty(3));
    CHECK(b.rx2_max == 0.0);
    CHECK(b.ry2_max == 0.0);
    const Envelope e = envelope(b);
    CHECK(e.lower == e.upper);
}

TEST_CASE("bound_inputs rejects zero residuals") {
    Vector x(3), y(3);
    x << 1, -1, 0;
    y << 0, 0, 0;
    CHECK_THROWS_AS(bound_inputs(x, y, LabeledMatrix::empty(3)), DegenerateInput);
    CHECK_THROWS_AS(bound_inputs(y, x, LabeledMatrix::empty(3)), DegenerateInput);
}
