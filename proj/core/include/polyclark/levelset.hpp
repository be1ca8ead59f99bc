#pragma once

#include <complex>
#include <vector>

#include "polyclark/clark.hpp"
#include "polyclark/rif.hpp"

namespace polyclark {

// One sample point of the level curve {p = alpha q} on the 2-torus,
// parametrized by the angle of the second coordinate.
struct LevelSetPoint {
    double theta2;
    std::complex<double> zeta1;
    double grad_norm;   // |grad phi| at the point
    double density;     // 2 pi / ((2 pi)^2 |grad phi|)
    double arclen;      // sqrt(|d zeta1 / d theta2|^2 + 1) * dtheta2
    int branch;
};

struct LevelSetSample {
    std::complex<double> alpha;
    std::vector<LevelSetPoint> points;
    int n_theta = 0;
    int excluded = 0;       // points dropped for |grad phi| < 1e-10 or non-finite density
    int branch_events = 0;  // grid steps where the branch count changed
};

struct TraceOptions {
    FiberOptions fiber;       // circle root tolerances for the per-angle solve
    double grad_floor = 1e-10;
};

// Traces {zeta in T^2 : p(zeta) = alpha q(zeta)} over a uniform theta2 grid:
// unimodular roots zeta1 of p(., e^{i theta2}) - alpha q(., e^{i theta2}),
// matched to the nearest root at the previous angle; arclength from the
// finite-difference derivative along each branch.
LevelSetSample trace_level_set(const RationalInnerFn& phi, std::complex<double> alpha,
                               int n_theta, const TraceOptions& opts = {});

// sum over points of density * arclen * f(point)
std::complex<double> integrate_coarea(const LevelSetSample& sample, const BoundaryFn& f);

}  // namespace polyclark
