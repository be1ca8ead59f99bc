#pragma once

#include <complex>
#include <vector>

#include "polyclark/unipoly.hpp"

namespace polyclark {

// Unimodular roots of a univariate polynomial after filtering, polishing and
// projection onto the unit circle. `residual` is max |P(root)| over the
// retained (projected) roots.
struct CircleRoots {
    std::vector<std::complex<double>> roots;
    std::vector<int> multiplicity;
    double residual = 0.0;
};

struct RootOptions {
    double tol_circle = 1e-8;    // |1 - |root|| filter for unimodularity
    double cluster_tol = 1e-7;   // roots closer than this merge into one
    int max_iterations = 200;
    int max_restarts = 4;
    double residual_bound = 1e-9;  // relative to coeff_norm, after polishing
};

// All complex roots by Aberth-Ehrlich simultaneous iteration with randomly
// perturbed restarts; falls back to companion-matrix eigenvalues if the
// iteration stalls. Throws std::runtime_error on non-convergence (message
// carries the worst residual) and std::invalid_argument on the zero
// polynomial.
std::vector<std::complex<double>> all_roots(const UniPoly& p, const RootOptions& opt = {});

// Roots with |1 - |root|| <= tol_circle, Newton-polished against P and then
// projected to exact modulus 1. Near-coincident roots are merged with their
// multiplicities summed.
CircleRoots roots_on_circle(const UniPoly& p, double tol_circle = 1e-8);
CircleRoots roots_on_circle(const UniPoly& p, const RootOptions& opt);

}  // namespace polyclark
