#pragma once

#include <complex>
#include <string>
#include <vector>

#include "polyclark/clark.hpp"
#include "polyclark/levelset.hpp"
#include "polyclark/multipoly.hpp"
#include "polyclark/rif.hpp"

namespace polyclark {

// Cylinder obstruction for density of holomorphic polynomials in
// L^2(mu_alpha) on the bidisc: a full circle in direction z_j sits inside
// {p = alpha q} iff the content of p - alpha q in z_j has a unimodular root.
struct VariableObstruction {
    int j = 0;
    MultiPoly content;  // content of p - alpha q in z_j (polynomial in the other variable)
    std::vector<std::complex<double>> unimodular_roots;
    bool triggers = false;
};

struct ObstructionVerdict {
    std::vector<VariableObstruction> per_variable;
    bool dense = false;
};

struct DensityOptions {
    double tol_rank = 1e-8;        // Sylvester SVD threshold for contents
    double content_root_tol = 1e-6;  // unimodularity filter on content roots
};

ObstructionVerdict obstruction_detect(const RationalInnerFn& phi, std::complex<double> alpha,
                                      const DensityOptions& opts = {});

// r_j = (alpha q2 - p2) / (p1 - alpha q1) from the splits p = p1 + z_j p2,
// q = q1 + z_j q2; on the level set it agrees with conj(zeta_j). The
// denominator depends only on z' (the other variables).
struct RjFunction {
    int j = 0;
    MultiPoly numerator;
    MultiPoly denominator;
    int denominator_degree = 0;
    // certified distance from the denominator zero set to the closed unit
    // polydisc in z' (capped at 0.999)
    double eps = 0.0;
    double validation_pass_rate = 0.0;
    int validation_atoms = 0;

    std::complex<double> value(const std::vector<std::complex<double>>& z) const;
    // numerator(z) / denominator(rho z')
    std::complex<double> value_ray(const std::vector<std::complex<double>>& z, double rho) const;
};

struct BuildRjOptions {
    int n_theta = 1024;          // trace resolution for validation
    double validate_tol = 1e-8;  // |r_j - conj(zeta_j)| per atom
    double pass_rate = 0.99;
    DensityOptions density;
};

// Throws std::runtime_error (with a witness root) if the denominator
// vanishes on the closed polydisc in z', and std::invalid_argument if the
// obstruction detector predicts not_dense.
RjFunction build_rj(const RationalInnerFn& phi, std::complex<double> alpha, int j,
                    const BuildRjOptions& opts = {});

// Dilation bound and L^2 convergence for the ray approximants
// r_{j,rho}(zeta) = numerator(zeta)/denominator(rho zeta').
struct RayBoundReport {
    std::vector<double> rho;
    std::vector<double> sup_ratio;    // sup over atoms of |r_rho| / |r_j|
    std::vector<double> l2_distance;  // ||r_rho - r_j|| in L^2(mu)
    double eps = 0.0;
    int denominator_degree = 0;
    double ratio_bound = 0.0;  // (2/eps)^k
    bool ratio_bound_holds = false;
    bool l2_monotone = false;
    std::string bound_note;
};

RayBoundReport rj_ray_bound_check(const RjFunction& r, const SampledClarkMeasure& mu,
                                  const std::vector<double>& rho_list);

// Quantitative instance of the one-variable lower bound: for p nonvanishing
// on the convex hull of B(0, eps) and {1}, min_{x in [0,1]} |p(x)|/|p(1)|
// is at least (eps/2)^deg(p). The precondition is verified by dense
// sampling of the hull boundary; violations throw with a witness.
struct LemmaLowerBound {
    double min_ratio = 0.0;
    double bound = 0.0;
    bool holds() const { return min_ratio >= bound; }
};

LemmaLowerBound lemma_lower_bound_test(const UniPoly& p, double eps, int n_x);

// Least-squares distance from conj(z_{target_var}) to the span of the
// holomorphic monomial basis in L^2(mu): box degree <= N per variable on
// the polydisc, total degree <= N on the matrix ball. The normal equations
// are solved by eigendecomposition with a relative spectral cutoff.
struct GramSystem {
    int N = 0;
    int target_var = 0;
    int basis_size = 0;
    double target_norm2 = 0.0;
    double residual = 0.0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    std::vector<std::complex<double>> coefficients;
    std::vector<std::vector<int>> basis_exponents;
};

struct GramOptions {
    double spectral_cutoff = 1e-10;  // relative to the largest Gram eigenvalue
    int workers = 1;
};

GramSystem gram_residual(const SampledClarkMeasure& mu, int target_var, int N,
                         const GramOptions& opts = {});

}  // namespace polyclark
