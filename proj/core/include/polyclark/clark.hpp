#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polyclark/rif.hpp"

namespace polyclark {

// One point mass of a fiber Clark measure: the unimodular fiber coordinate
// w, the boundary point w * zeta_rep, and the positive weight 1/|psi'(w)|
// where psi is the fiber restriction of phi.
struct Atom {
    std::complex<double> w;
    std::vector<std::complex<double>> point;
    double weight;
};

// Clark measure of the restriction of phi to one circular fiber of the
// Silov boundary. Fibers that graze the common zero set of p and q are
// marked skipped and carry no atoms.
struct FiberMeasure {
    std::vector<std::complex<double>> rep;
    std::vector<Atom> atoms;
    bool skipped = false;

    double mass() const;
};

struct FiberOptions {
    double tol_circle = 1e-8;
    // a root of p_f - alpha q_f closer than this to a root of q_f is a
    // common zero of the fiber pair and is dropped; the reduced atom list
    // is the vague limit of the neighbouring fiber measures
    double common_root_tol = 1e-6;
    // each atom must satisfy |p - alpha q| <= this * coefficient scale
    double concentration_tol = 1e-6;
};

FiberMeasure fiber_clark_measure(const RationalInnerFn& phi, std::complex<double> alpha,
                                 const std::vector<std::complex<double>>& zeta_rep,
                                 const FiberOptions& opts = {});

// Quadrature-weighted family of fiber measures approximating mu_alpha.
struct SampledClarkMeasure {
    std::complex<double> alpha;
    DomainKind domain = DomainKind::polydisc;
    std::vector<FiberMeasure> fibers;      // non-skipped fibers only
    std::vector<double> quad_weights;      // positive, sum to 1
    int grid_size = 0;                     // fibers requested
    int skipped = 0;                       // fibers dropped and renormalized away
    std::uint64_t seed = 0;

    double total_mass() const;
};

struct AssembleOptions {
    FiberOptions fiber;
    // fraction of skipped fibers above which assembly aborts
    double max_skipped_fraction = 1e-3;
    int workers = 1;
};

// Fiber representatives (1, e^{i t_2}, ..., e^{i t_n}) on a uniform product
// grid over [0, 2pi)^{n-1} with deterministic per-cell jitter; equal
// quadrature weights, renormalized over non-skipped fibers.
SampledClarkMeasure assemble_polydisc(const RationalInnerFn& phi, std::complex<double> alpha,
                                      int grid_size, std::uint64_t jitter_seed,
                                      const AssembleOptions& opts = {});

// Fiber representatives are Haar-random unitaries, equal weights 1/n_samples.
SampledClarkMeasure assemble_matrix_ball(const RationalInnerFn& phi, std::complex<double> alpha,
                                         int n_samples, std::uint64_t seed,
                                         const AssembleOptions& opts = {});

using BoundaryFn = std::function<std::complex<double>(const std::vector<std::complex<double>>&)>;

// sum over fibers of quad weight * sum over atoms of weight * f(point), in
// fixed (grid, atom) order
std::complex<double> integrate(const SampledClarkMeasure& mu, const BoundaryFn& f);

// lhs: Poisson-Szego integral of mu at z (product Poisson kernel on the
// polydisc; constant kernel 1 at z = 0 on the matrix ball). rhs:
// (1 - |phi(z)|^2) / |alpha - phi(z)|^2.
struct PoissonCheck {
    double lhs;
    double rhs;
};

PoissonCheck poisson_check(const SampledClarkMeasure& mu, const RationalInnerFn& phi,
                           const std::vector<std::complex<double>>& z);

// lhs: average over a uniform unimodular alpha grid of integrate(mu_alpha, f).
// rhs: integral of f against the normalized invariant boundary measure
// (product trapezoid quadrature on the torus; Haar Monte Carlo on U(2)).
struct DisintegrationCheck {
    std::complex<double> lhs;
    std::complex<double> rhs;
};

DisintegrationCheck disintegration_check(const RationalInnerFn& phi, const BoundaryFn& f,
                                         int n_alpha, int grid_size, std::uint64_t seed,
                                         const AssembleOptions& opts = {});

// integral of f against the normalized invariant measure on the Silov
// boundary (exposed for tests and the CLI)
std::complex<double> boundary_average(const RationalInnerFn& phi, const BoundaryFn& f,
                                      int grid_size, std::uint64_t seed);

}  // namespace polyclark
