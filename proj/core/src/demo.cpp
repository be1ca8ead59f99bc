#include "polyclark/demo.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polyclark/parallel.hpp"
#include "polyclark/rng.hpp"

namespace polyclark {

namespace {
using Complex = std::complex<double>;
}

AdjugateProbe adjugate_identity_probe(const SampledClarkMeasure& mu, int workers) {
    if (mu.domain != DomainKind::matrix_ball_2x2)
        throw std::invalid_argument("adjugate_identity_probe: matrix-ball measure required");

    AdjugateProbe probe;
    const Complex alpha = mu.alpha;
    for (const auto& fm : mu.fibers) {
        for (const auto& atom : fm.atoms) {
            const Complex a = atom.point[0], b = atom.point[1];
            const Complex c = atom.point[2], d = atom.point[3];
            probe.max_residual_a = std::max(probe.max_residual_a, std::abs(std::conj(a) - d / alpha));
            probe.max_residual_b = std::max(probe.max_residual_b, std::abs(std::conj(b) + c / alpha));
            probe.max_residual_c = std::max(probe.max_residual_c, std::abs(std::conj(c) + b / alpha));
            probe.max_residual_d = std::max(probe.max_residual_d, std::abs(std::conj(d) - a / alpha));
        }
    }
    GramOptions gopts;
    gopts.workers = workers;
    probe.gram_residual_conj_a = gram_residual(mu, 1, 1, gopts).residual;
    return probe;
}

DemoReport run_demo_i22(const DemoConfig& cfg) {
    if (cfg.n_inner_samples < 1 || cfg.n_gamma < 1 || cfg.n_x1 < 1)
        throw std::invalid_argument("run_demo_i22: sample counts must be positive");
    if (std::abs(std::abs(cfg.alpha) - 1.0) > 1e-12)
        throw std::invalid_argument("run_demo_i22: |alpha| must be 1");

    DemoReport rep;

    // innerness of phi = (ad - bc - d)/(1 - a) over Haar samples
    {
        const std::size_t n = static_cast<std::size_t>(cfg.n_inner_samples);
        std::vector<unsigned char> violation(n, 0), near_pole(n, 0);
        parallel_for(n, cfg.workers, [&](std::size_t i) {
            SplitMix64 rng = substream(cfg.seed, 21, i);
            MatrixPoint m = haar_unitary(rng);
            if (std::abs(1.0 - m.a) <= 1e-3) {
                near_pole[i] = 1;
                return;
            }
            double dev = std::abs(std::abs(phi_i22(m)) - 1.0);
            if (dev > 1e-6) violation[i] = 1;
        });
        rep.inner_samples = cfg.n_inner_samples;
        for (std::size_t i = 0; i < n; ++i) {
            rep.inner_violations += violation[i];
            rep.inner_near_pole += near_pole[i];
        }
        rep.innerness_pass = (rep.inner_violations == 0);
    }

    // closed-form torus family inside {p = alpha q}
    {
        for (int k = 0; k < cfg.n_x1; ++k) {
            SplitMix64 rng = substream(cfg.seed, 22, static_cast<std::uint64_t>(k));
            double r = 0.95 * std::sqrt(rng.uniform());
            Complex x1 = (k == 0) ? Complex(0.0) : std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
            TorusFamily fam = torus_family(x1, cfg.alpha, cfg.n_gamma);
            rep.family_max_unitarity = std::max(rep.family_max_unitarity, fam.max_unitarity_residual);
            rep.family_max_level_residual =
                std::max(rep.family_max_level_residual, fam.max_level_residual);
            rep.family_max_membership =
                std::max(rep.family_max_membership, fam.max_membership_residual);
        }
        rep.family_pass = rep.family_max_unitarity <= 1e-10 &&
                          rep.family_max_level_residual <= 1e-10 &&
                          rep.family_max_membership <= 1e-12;
    }

    // numeric vs closed-form Jacobian determinant at random admissible points
    {
        rep.jacobian_points = cfg.n_jacobian_points;
        for (int k = 0; k < cfg.n_jacobian_points; ++k) {
            SplitMix64 rng = substream(cfg.seed, 23, static_cast<std::uint64_t>(k));
            double rho = 0.1 + 0.8 * rng.uniform();
            double theta = 0.1 + 6.0 * rng.uniform();
            double phi_angle = 0.1 + 6.0 * rng.uniform();
            JacobianCheck jc = jacobian_rank_check(rho, theta, phi_angle, cfg.alpha);
            double scale = std::max(std::abs(jc.closed_form), 1e-3);
            rep.jacobian_max_rel_err =
                std::max(rep.jacobian_max_rel_err,
                         std::abs(jc.numeric_det - jc.closed_form) / scale);
        }
        rep.jacobian_pass = rep.jacobian_max_rel_err <= 1e-5;
    }

    // density contrast: conjugate entries stay far from H^2 for phi_i22 but
    // are fit exactly for phi = det
    {
        AssembleOptions aopts;
        aopts.workers = cfg.workers;
        RationalInnerFn i22 = rifs::i22();
        RationalInnerFn det2 = rifs::det2();
        SampledClarkMeasure mu_i22 =
            assemble_matrix_ball(i22, cfg.alpha, cfg.n_measure_samples, cfg.seed, aopts);
        SampledClarkMeasure mu_det =
            assemble_matrix_ball(det2, cfg.alpha, cfg.n_measure_samples, cfg.seed + 1, aopts);

        GramOptions gopts;
        gopts.workers = cfg.workers;
        double min_res = std::numeric_limits<double>::infinity();
        for (int var = 1; var <= 4; ++var)
            min_res = std::min(min_res, gram_residual(mu_i22, var, cfg.gram_degree, gopts).residual);
        rep.i22_conj_entry_residual = min_res;

        rep.adjugate = adjugate_identity_probe(mu_det, cfg.workers);
        rep.det_conj_entry_residual = rep.adjugate.gram_residual_conj_a;
        rep.density_contrast_pass =
            rep.i22_conj_entry_residual >= 0.1 && rep.det_conj_entry_residual <= 1e-2;
    }

    return rep;
}

}  // namespace polyclark
