#include "polyclark/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polyclark/roots.hpp"

namespace polyclark {

namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Column {
    std::vector<Complex> roots;
    std::vector<int> branch;
};

double min_separation(const std::vector<Complex>& roots) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            sep = std::min(sep, std::abs(roots[i] - roots[j]));
    return sep;
}

// nearest root in `col` to z within `guard`; -1 if none
int nearest_within(const Column& col, Complex z, double guard) {
    int best = -1;
    double best_d = guard;
    for (std::size_t k = 0; k < col.roots.size(); ++k) {
        double d = std::abs(z - col.roots[k]);
        if (d <= best_d) {
            best_d = d;
            best = static_cast<int>(k);
        }
    }
    return best;
}

}  // namespace

LevelSetSample trace_level_set(const RationalInnerFn& phi, Complex alpha, int n_theta,
                               const TraceOptions& opts) {
    if (phi.domain() != DomainKind::polydisc || phi.nvars() != 2)
        throw std::invalid_argument("trace_level_set: bivariate polydisc only");
    if (n_theta < 16) throw std::invalid_argument("trace_level_set: n_theta must be >= 16");
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
        throw std::invalid_argument("trace_level_set: |alpha| must be 1");

    const MultiPoly h = phi.p() - phi.q() * alpha;
    if (h.is_zero()) throw std::invalid_argument("trace_level_set: p - alpha q is zero");
    const double dtheta = kTwoPi / n_theta;
    const double scale = std::max(phi.coeff_scale(), 1e-300);

    LevelSetSample out;
    out.alpha = alpha;
    out.n_theta = n_theta;

    // solve the circle roots column by column
    std::vector<Column> cols(n_theta);
    int next_branch = 0;
    for (int i = 0; i < n_theta; ++i) {
        double theta = dtheta * i;
        Complex zeta2(std::cos(theta), std::sin(theta));
        UniPoly target = partial_evaluate(h, 1, {Complex(0.0), zeta2});
        Column col;
        if (!target.is_constant()) {
            CircleRoots cr = roots_on_circle(target, opts.fiber.tol_circle);
            col.roots = cr.roots;
        }
        col.branch.assign(col.roots.size(), -1);
        if (i > 0) {
            const Column& prev = cols[i - 1];
            if (col.roots.size() != prev.roots.size()) ++out.branch_events;
            double guard = 0.5 * std::min(min_separation(prev.roots), min_separation(col.roots));
            if (!std::isfinite(guard)) guard = std::numbers::pi;
            for (std::size_t k = 0; k < col.roots.size(); ++k) {
                int m = nearest_within(prev, col.roots[k], guard);
                col.branch[k] = (m >= 0) ? prev.branch[m] : next_branch++;
            }
        } else {
            for (std::size_t k = 0; k < col.roots.size(); ++k) col.branch[k] = next_branch++;
        }
        cols[i] = std::move(col);
    }

    for (int i = 0; i < n_theta; ++i) {
        const Column& col = cols[i];
        const Column& prev = cols[(i + n_theta - 1) % n_theta];
        const Column& next = cols[(i + 1) % n_theta];
        double theta = dtheta * i;
        Complex zeta2(std::cos(theta), std::sin(theta));

        for (std::size_t k = 0; k < col.roots.size(); ++k) {
            Complex z1 = col.roots[k];
            double guard = 0.5 * min_separation(col.roots);
            if (!std::isfinite(guard)) guard = std::numbers::pi;

            // finite-difference derivative along the branch (central when
            // both neighbours resolve, one-sided otherwise)
            int ip = nearest_within(prev, z1, guard);
            int in = nearest_within(next, z1, guard);
            Complex dz;
            if (ip >= 0 && in >= 0) {
                dz = (next.roots[in] - prev.roots[ip]) / (2.0 * dtheta);
            } else if (in >= 0) {
                dz = (next.roots[in] - z1) / dtheta;
            } else if (ip >= 0) {
                dz = (z1 - prev.roots[ip]) / dtheta;
            } else {
                dz = 0.0;
            }

            std::vector<Complex> point{z1, zeta2};
            Complex resid = eval(phi.p(), point) - alpha * eval(phi.q(), point);
            if (std::abs(resid) > 1e-8 * scale) {
                std::ostringstream os;
                os << "trace_level_set: point off the level set, residual " << std::abs(resid);
                throw std::runtime_error(os.str());
            }

            double gn = phi.grad_norm(point);
            double density = kTwoPi / (kTwoPi * kTwoPi * gn);
            if (!(gn >= opts.grad_floor) || !std::isfinite(density)) {
                ++out.excluded;
                continue;
            }
            LevelSetPoint lp;
            lp.theta2 = theta;
            lp.zeta1 = z1;
            lp.grad_norm = gn;
            lp.density = density;
            lp.arclen = std::sqrt(std::norm(dz) + 1.0) * dtheta;
            lp.branch = col.branch[k];
            out.points.push_back(lp);
        }
    }
    return out;
}

Complex integrate_coarea(const LevelSetSample& sample, const BoundaryFn& f) {
    Complex acc = 0.0;
    for (const auto& pt : sample.points) {
        Complex zeta2(std::cos(pt.theta2), std::sin(pt.theta2));
        acc += pt.density * pt.arclen * f({pt.zeta1, zeta2});
    }
    return acc;
}

}  // namespace polyclark
