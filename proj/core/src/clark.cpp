#include "polyclark/clark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polyclark/matrixball.hpp"
#include "polyclark/parallel.hpp"
#include "polyclark/rng.hpp"
#include "polyclark/roots.hpp"

namespace polyclark {

namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double FiberMeasure::mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight;
    return m;
}

double SampledClarkMeasure::total_mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < fibers.size(); ++i) m += quad_weights[i] * fibers[i].mass();
    return m;
}

FiberMeasure fiber_clark_measure(const RationalInnerFn& phi, Complex alpha,
                                 const std::vector<Complex>& zeta_rep,
                                 const FiberOptions& opts) {
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
        throw std::invalid_argument("fiber_clark_measure: |alpha| must be 1");
    if (static_cast<int>(zeta_rep.size()) != phi.nvars())
        throw std::invalid_argument("fiber_clark_measure: rep dimension mismatch");

    FiberMeasure fm;
    fm.rep = zeta_rep;

    const UniPoly pf = restrict_to_fiber(phi.p(), zeta_rep);
    const UniPoly qf = restrict_to_fiber(phi.q(), zeta_rep);
    const UniPoly target = pf - qf * alpha;

    if (target.is_constant()) {
        // phi is constant on this fiber (including p_f = alpha q_f
        // identically): no usable atoms, skip and renormalize
        fm.skipped = true;
        return fm;
    }

    CircleRoots roots = roots_on_circle(target, opts.tol_circle);

    // roots of q_f, used to recognize common zeros of p and q on the fiber
    std::vector<Complex> q_roots;
    if (!qf.is_constant() && !qf.is_zero()) q_roots = all_roots(qf);

    const UniPoly dpf = pf.derivative();
    const UniPoly dqf = qf.derivative();

    // every fiber of a fixed phi carries the same total Clark mass, the
    // Poisson value at the fiber centre; no atom can exceed it
    const Complex phi0 = phi.value_at_zero();
    const double fiber_mass = (1.0 - std::norm(phi0)) / std::norm(alpha - phi0);

    for (auto w : roots.roots) {
        // a root this close to the zero set of q_f is a common zero of the
        // fiber pair (p_f vanishes there too, since p_f = alpha q_f at
        // roots); it belongs to the singular set, not to the measure
        double q_dist = std::numeric_limits<double>::infinity();
        for (auto qr : q_roots) q_dist = std::min(q_dist, std::abs(w - qr));
        if (q_dist <= opts.common_root_tol) continue;

        Complex pv = pf(w);
        Complex qv = qf(w);
        if (std::abs(pv) == 0.0 || std::abs(qv) == 0.0) {
            fm.skipped = true;
            fm.atoms.clear();
            return fm;
        }
        // |psi(w)| = 1 at an atom, so |psi'(w)| = |p_f'/p_f - q_f'/q_f|;
        // this form stays accurate when q_f is small but nonzero
        double speed = std::abs(dpf(w) / pv - dqf(w) / qv);
        if (!(speed > 1e-14) || 1.0 / speed > fiber_mass * (1.0 + 1e-6)) {
            // flat or numerically inconsistent fiber restriction
            fm.skipped = true;
            fm.atoms.clear();
            return fm;
        }
        Atom atom;
        atom.w = w;
        atom.point.resize(zeta_rep.size());
        for (std::size_t k = 0; k < zeta_rep.size(); ++k) atom.point[k] = w * zeta_rep[k];
        atom.weight = 1.0 / speed;

        // concentration check: the atom must lie on {p = alpha q}
        Complex resid = eval(phi.p(), atom.point) - alpha * eval(phi.q(), atom.point);
        if (std::abs(resid) > opts.concentration_tol * std::max(phi.coeff_scale(), 1e-300)) {
            std::ostringstream os;
            os << "fiber_clark_measure: atom off the level set, |p - alpha q| = "
               << std::abs(resid);
            throw std::runtime_error(os.str());
        }
        fm.atoms.push_back(std::move(atom));
    }

    if (static_cast<int>(fm.atoms.size()) > phi.max_degree()) {
        std::ostringstream os;
        os << "fiber_clark_measure: " << fm.atoms.size() << " atoms exceed max degree "
           << phi.max_degree();
        throw std::runtime_error(os.str());
    }
    return fm;
}

namespace {

SampledClarkMeasure assemble_impl(const RationalInnerFn& phi, Complex alpha, int n_fibers,
                                  std::uint64_t seed, const AssembleOptions& opts,
                                  const std::function<std::vector<Complex>(std::size_t)>& rep_at) {
    SampledClarkMeasure mu;
    mu.alpha = alpha;
    mu.domain = phi.domain();
    mu.grid_size = n_fibers;
    mu.seed = seed;

    std::vector<FiberMeasure> all(n_fibers);
    std::vector<std::string> errors(n_fibers);
    parallel_for(static_cast<std::size_t>(n_fibers), opts.workers, [&](std::size_t i) {
        try {
            all[i] = fiber_clark_measure(phi, alpha, rep_at(i), opts.fiber);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& msg : errors)
        if (!msg.empty()) throw std::runtime_error("assemble: fiber failed: " + msg);

    for (auto& fm : all) {
        if (fm.skipped) {
            ++mu.skipped;
            continue;
        }
        mu.fibers.push_back(std::move(fm));
    }
    if (mu.fibers.empty()) throw std::runtime_error("assemble: all fibers skipped");
    double frac = static_cast<double>(mu.skipped) / n_fibers;
    if (frac > opts.max_skipped_fraction) {
        std::ostringstream os;
        os << "assemble: skipped fiber fraction " << frac << " exceeds "
           << opts.max_skipped_fraction << " (" << mu.skipped << " of " << n_fibers << ")";
        throw std::runtime_error(os.str());
    }
    mu.quad_weights.assign(mu.fibers.size(), 1.0 / static_cast<double>(mu.fibers.size()));
    return mu;
}

}  // namespace

SampledClarkMeasure assemble_polydisc(const RationalInnerFn& phi, Complex alpha, int grid_size,
                                      std::uint64_t jitter_seed, const AssembleOptions& opts) {
    if (phi.domain() != DomainKind::polydisc)
        throw std::invalid_argument("assemble_polydisc: domain is not a polydisc");
    if (grid_size < 16) throw std::invalid_argument("assemble_polydisc: grid_size must be >= 16");

    const int n = phi.nvars();
    const int angles = n - 1;
    // total fibers = grid_size^(n-1); grid_size counts cells per angle
    std::size_t total = 1;
    for (int k = 0; k < angles; ++k) {
        total *= static_cast<std::size_t>(grid_size);
        if (total > 16000000)
            throw std::invalid_argument(
                "assemble_polydisc: grid_size^(nvars-1) fibers is too large");
    }

    auto rep_at = [&, n, angles, grid_size, jitter_seed](std::size_t idx) {
        std::vector<Complex> rep(n);
        rep[0] = 1.0;
        std::size_t rem = idx;
        for (int k = 0; k < angles; ++k) {
            std::size_t cell = rem % grid_size;
            rem /= grid_size;
            double u = substream(jitter_seed, 101 + k, idx).uniform();
            double theta = kTwoPi * (static_cast<double>(cell) + u) / grid_size;
            rep[k + 1] = Complex(std::cos(theta), std::sin(theta));
        }
        return rep;
    };
    return assemble_impl(phi, alpha, static_cast<int>(total), jitter_seed, opts, rep_at);
}

SampledClarkMeasure assemble_matrix_ball(const RationalInnerFn& phi, Complex alpha, int n_samples,
                                         std::uint64_t seed, const AssembleOptions& opts) {
    if (phi.domain() != DomainKind::matrix_ball_2x2)
        throw std::invalid_argument("assemble_matrix_ball: domain is not the matrix ball");
    if (n_samples < 1000)
        throw std::invalid_argument("assemble_matrix_ball: n_samples must be >= 1000");

    auto rep_at = [seed](std::size_t idx) {
        SplitMix64 rng = substream(seed, 7, idx);
        return haar_unitary(rng).flatten();
    };
    return assemble_impl(phi, alpha, n_samples, seed, opts, rep_at);
}

Complex integrate(const SampledClarkMeasure& mu, const BoundaryFn& f) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < mu.fibers.size(); ++i) {
        Complex fiber_sum = 0.0;
        for (const auto& atom : mu.fibers[i].atoms) fiber_sum += atom.weight * f(atom.point);
        acc += mu.quad_weights[i] * fiber_sum;
    }
    return acc;
}

PoissonCheck poisson_check(const SampledClarkMeasure& mu, const RationalInnerFn& phi,
                           const std::vector<Complex>& z) {
    if (static_cast<int>(z.size()) != phi.nvars())
        throw std::invalid_argument("poisson_check: point dimension mismatch");

    PoissonCheck out{};
    if (phi.domain() == DomainKind::polydisc) {
        for (auto zj : z)
            if (std::abs(zj) > 0.9)
                throw std::invalid_argument("poisson_check: require |z_j| <= 0.9");
        Complex lhs = integrate(mu, [&z](const std::vector<Complex>& zeta) {
            Complex k = 1.0;
            for (std::size_t j = 0; j < zeta.size(); ++j)
                k *= (1.0 - std::norm(z[j])) / std::norm(zeta[j] - z[j]);
            return k;
        });
        out.lhs = lhs.real();
    } else {
        for (auto zj : z)
            if (std::abs(zj) > 0.0)
                throw std::invalid_argument(
                    "poisson_check: only z = 0 is supported on the matrix ball");
        out.lhs = mu.total_mass();
    }
    Complex pv = phi.value(z);
    out.rhs = (1.0 - std::norm(pv)) / std::norm(mu.alpha - pv);
    return out;
}

Complex boundary_average(const RationalInnerFn& phi, const BoundaryFn& f, int grid_size,
                         std::uint64_t seed) {
    if (phi.domain() == DomainKind::polydisc) {
        // product rectangle rule on T^n (trapezoid on a periodic function)
        const int n = phi.nvars();
        std::size_t total = 1;
        for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(grid_size);
        Complex acc = 0.0;
        std::vector<Complex> zeta(n);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            for (int k = 0; k < n; ++k) {
                std::size_t cell = rem % grid_size;
                rem /= grid_size;
                double theta = kTwoPi * static_cast<double>(cell) / grid_size;
                zeta[k] = Complex(std::cos(theta), std::sin(theta));
            }
            acc += f(zeta);
        }
        return acc / static_cast<double>(total);
    }
    // Haar Monte Carlo on U(2)
    Complex acc = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        SplitMix64 rng = substream(seed, 7, static_cast<std::uint64_t>(i));
        acc += f(haar_unitary(rng).flatten());
    }
    return acc / static_cast<double>(grid_size);
}

DisintegrationCheck disintegration_check(const RationalInnerFn& phi, const BoundaryFn& f,
                                         int n_alpha, int grid_size, std::uint64_t seed,
                                         const AssembleOptions& opts) {
    if (n_alpha < 1) throw std::invalid_argument("disintegration_check: n_alpha must be >= 1");
    DisintegrationCheck out{};
    Complex acc = 0.0;
    for (int k = 0; k < n_alpha; ++k) {
        double t = kTwoPi * k / n_alpha;
        Complex alpha(std::cos(t), std::sin(t));
        SampledClarkMeasure mu =
            (phi.domain() == DomainKind::polydisc)
                ? assemble_polydisc(phi, alpha, grid_size, seed, opts)
                : assemble_matrix_ball(phi, alpha, grid_size, seed, opts);
        acc += integrate(mu, f);
    }
    out.lhs = acc / static_cast<double>(n_alpha);
    // the rectangle rule converges spectrally for smooth f, so the grid per
    // dimension can stay moderate beyond the bidisc
    int bgrid;
    if (phi.domain() == DomainKind::polydisc)
        bgrid = (phi.nvars() <= 2) ? std::max(grid_size, 64) : std::min(std::max(grid_size, 64), 128);
    else
        bgrid = std::max(grid_size, 4096);
    out.rhs = boundary_average(phi, f, bgrid, seed);
    return out;
}

}  // namespace polyclark
