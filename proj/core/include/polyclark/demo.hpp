#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "polyclark/clark.hpp"
#include "polyclark/density.hpp"
#include "polyclark/matrixball.hpp"

namespace polyclark {

// Pointwise fit of the conjugate matrix entries by the holomorphic
// expressions valid on unitaries with determinant alpha:
//   conj(a) = d/alpha, conj(b) = -c/alpha, conj(c) = -b/alpha, conj(d) = a/alpha.
// mu must be the Clark measure of phi = det on the matrix ball.
struct AdjugateProbe {
    double max_residual_a = 0.0;
    double max_residual_b = 0.0;
    double max_residual_c = 0.0;
    double max_residual_d = 0.0;
    double gram_residual_conj_a = 0.0;  // cross-check at N = 1
    double max_residual() const {
        return std::max(std::max(max_residual_a, max_residual_b),
                        std::max(max_residual_c, max_residual_d));
    }
};

AdjugateProbe adjugate_identity_probe(const SampledClarkMeasure& mu, int workers = 1);

// End-to-end reproduction on the 2x2 matrix ball: innerness sampling of
// phi = (ad - bc - d)/(1 - a), the closed-form torus family inside the
// level set, the rank-3 Jacobian identity, and the density contrast
// against phi = det.
struct DemoConfig {
    int n_inner_samples = 100000;
    int n_gamma = 64;
    int n_x1 = 10;
    int n_jacobian_points = 100;
    int n_measure_samples = 10000;
    int gram_degree = 6;
    std::complex<double> alpha{1.0, 0.0};
    std::uint64_t seed = 2024;
    int workers = 1;
};

struct DemoReport {
    // innerness
    int inner_samples = 0;
    int inner_violations = 0;
    int inner_near_pole = 0;  // samples with |1 - a| <= 1e-3, not counted
    // torus family
    double family_max_unitarity = 0.0;
    double family_max_level_residual = 0.0;
    double family_max_membership = 0.0;
    // jacobian
    int jacobian_points = 0;
    double jacobian_max_rel_err = 0.0;
    // density contrast
    double i22_conj_entry_residual = 0.0;  // min over entries, at gram_degree
    double det_conj_entry_residual = 0.0;  // conj(a) at N = 1
    AdjugateProbe adjugate;

    bool innerness_pass = false;
    bool family_pass = false;
    bool jacobian_pass = false;
    bool density_contrast_pass = false;
    bool all_pass() const {
        return innerness_pass && family_pass && jacobian_pass && density_contrast_pass;
    }
};

DemoReport run_demo_i22(const DemoConfig& cfg = {});

}  // namespace polyclark
