#include "polyclark/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polyclark/rng.hpp"

namespace polyclark {

namespace {

using Complex = std::complex<double>;

// value and derivative in one Horner pass
std::pair<Complex, Complex> eval_with_derivative(const std::vector<Complex>& c, Complex w) {
    Complex p = c.back(), dp = 0.0;
    for (auto it = std::next(c.rbegin()); it != c.rend(); ++it) {
        dp = dp * w + p;
        p = p * w + *it;
    }
    return {p, dp};
}

// Cauchy-style inclusion radius for initial guesses
double root_radius(const std::vector<Complex>& c) {
    double lead = std::abs(c.back());
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) m = std::max(m, std::abs(c[k]));
    return 1.0 + m / lead;
}

bool aberth(const std::vector<Complex>& c, std::vector<Complex>& roots, int max_iter) {
    const int n = static_cast<int>(roots.size());
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < n; ++i) {
            auto [p, dp] = eval_with_derivative(c, roots[i]);
            if (std::abs(p) == 0.0) continue;
            Complex ratio = (dp != 0.0) ? p / dp : Complex(0.0);
            Complex sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = roots[i] - roots[j];
                if (std::abs(d) < 1e-100) d = Complex(1e-100);
                sum += 1.0 / d;
            }
            Complex denom = 1.0 - ratio * sum;
            Complex step = (std::abs(denom) > 1e-100 && dp != 0.0) ? ratio / denom : ratio;
            if (dp == 0.0) {
                // stationary iterate; nudge off the critical point
                step = Complex(1e-8, 1e-8) * (1.0 + std::abs(roots[i]));
            }
            roots[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(roots[i])));
        }
        if (max_step < 1e-15) return true;
    }
    return false;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

double worst_residual(const std::vector<Complex>& c, const std::vector<Complex>& roots) {
    double r = 0.0;
    for (auto w : roots) {
        Complex p = c.back();
        for (auto it = std::next(c.rbegin()); it != c.rend(); ++it) p = p * w + *it;
        r = std::max(r, std::abs(p));
    }
    return r;
}

void newton_polish(const std::vector<Complex>& c, Complex& w, int steps = 12) {
    for (int k = 0; k < steps; ++k) {
        auto [p, dp] = eval_with_derivative(c, w);
        if (std::abs(dp) < 1e-300) break;
        Complex step = p / dp;
        w -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(w))) break;
    }
}

}  // namespace

std::vector<Complex> all_roots(const UniPoly& p, const RootOptions& opt) {
    if (p.is_zero()) throw std::invalid_argument("all_roots: zero polynomial");
    std::vector<Complex> c = p.coeffs();
    // strip exact roots at the origin
    int zeros_at_origin = 0;
    double scale = p.coeff_norm();
    while (c.size() > 1 && std::abs(c.front()) <= 1e-300 * scale) {
        c.erase(c.begin());
        ++zeros_at_origin;
    }
    std::vector<Complex> roots(zeros_at_origin, 0.0);
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return roots;
    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }

    const double radius = root_radius(c);
    SplitMix64 rng(0x9d2c5680u);  // fixed stream: restarts are deterministic
    std::vector<Complex> iter(n);
    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        for (int i = 0; i < n; ++i) {
            double angle = 2.0 * std::numbers::pi * (i + 0.5) / n + 0.41;
            double r = (restart == 0) ? std::min(radius, 1.2)
                                      : radius * (0.4 + 0.8 * rng.uniform());
            double jitter = (restart == 0) ? 0.0 : 0.5 * rng.uniform();
            iter[i] = std::polar(r, angle + jitter);
        }
        if (aberth(c, iter, opt.max_iterations)) {
            double res = worst_residual(c, iter);
            if (res <= 1e-6 * std::max(p.coeff_norm(), 1e-300)) {
                roots.insert(roots.end(), iter.begin(), iter.end());
                return roots;
            }
        }
    }

    // companion-matrix fallback
    std::vector<Complex> eig = companion_roots(c);
    for (auto& w : eig) newton_polish(c, w);
    double res = worst_residual(c, eig);
    if (res > 1e-5 * std::max(p.coeff_norm(), 1e-300)) {
        std::ostringstream os;
        os << "all_roots: no convergence after " << opt.max_restarts
           << " restarts and companion fallback; worst residual " << res;
        throw std::runtime_error(os.str());
    }
    roots.insert(roots.end(), eig.begin(), eig.end());
    return roots;
}

CircleRoots roots_on_circle(const UniPoly& p, double tol_circle) {
    RootOptions opt;
    opt.tol_circle = tol_circle;
    return roots_on_circle(p, opt);
}

CircleRoots roots_on_circle(const UniPoly& p, const RootOptions& opt) {
    if (p.is_zero()) throw std::invalid_argument("roots_on_circle: zero polynomial");
    CircleRoots out;
    if (p.is_constant()) return out;

    std::vector<Complex> candidates = all_roots(p, opt);
    const std::vector<Complex>& c = p.coeffs();

    const double loose = std::max(opt.tol_circle, 1e-5);
    const double res_bound = opt.residual_bound * std::max(p.coeff_norm(), 1e-300);
    std::vector<Complex> kept;
    for (auto w : candidates) {
        if (std::abs(w) == 0.0 || std::abs(1.0 - std::abs(w)) > loose) continue;
        newton_polish(c, w);
        if (std::abs(w) == 0.0) continue;
        Complex projected = w / std::abs(w);
        // accept if the polished root sits on the circle, or if it is a
        // near-multiple root whose projection still annihilates P
        if (std::abs(1.0 - std::abs(w)) > opt.tol_circle && std::abs(p(projected)) > res_bound)
            continue;
        kept.push_back(projected);
    }
    // deterministic order: by argument
    std::sort(kept.begin(), kept.end(), [](Complex a, Complex b) {
        return std::arg(a) < std::arg(b);
    });
    // merge clusters (multiple roots polish to the same point)
    for (auto w : kept) {
        if (!out.roots.empty() && std::abs(w - out.roots.back()) <= opt.cluster_tol) {
            out.multiplicity.back() += 1;
        } else {
            out.roots.push_back(w);
            out.multiplicity.push_back(1);
        }
    }
    // wrap-around cluster at angle +-pi
    if (out.roots.size() > 1 &&
        std::abs(out.roots.front() - out.roots.back()) <= opt.cluster_tol) {
        out.multiplicity.front() += out.multiplicity.back();
        out.roots.pop_back();
        out.multiplicity.pop_back();
    }

    out.residual = 0.0;
    for (auto w : out.roots) out.residual = std::max(out.residual, std::abs(p(w)));
    double bound = opt.residual_bound * std::max(p.coeff_norm(), 1e-300);
    if (out.residual > bound) {
        std::ostringstream os;
        os << "roots_on_circle: residual " << out.residual << " exceeds bound " << bound;
        throw std::runtime_error(os.str());
    }
    return out;
}

}  // namespace polyclark
