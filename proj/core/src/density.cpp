#include "polyclark/density.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polyclark/gcd.hpp"
#include "polyclark/parallel.hpp"
#include "polyclark/roots.hpp"

namespace polyclark {

namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

UniPoly as_unipoly_in(const MultiPoly& p, int var) {
    std::vector<Complex> coeffs(std::max(p.degree_in(var) + 1, 1), 0.0);
    for (const auto& [exp, c] : p.terms()) coeffs[exp[var - 1]] += c;
    return UniPoly(std::move(coeffs));
}

}  // namespace

ObstructionVerdict obstruction_detect(const RationalInnerFn& phi, Complex alpha,
                                      const DensityOptions& opts) {
    if (phi.domain() != DomainKind::polydisc || phi.nvars() != 2)
        throw std::invalid_argument("obstruction_detect: bivariate polydisc only");
    MultiPoly h = phi.p() - phi.q() * alpha;
    if (h.is_zero())
        throw std::invalid_argument("obstruction_detect: p - alpha q is identically zero");

    ObstructionVerdict verdict;
    bool any = false;
    for (int j = 1; j <= 2; ++j) {
        VariableObstruction vo;
        vo.j = j;
        vo.content = content_in_variable(h, j, opts.tol_rank);
        if (!vo.content.is_constant()) {
            const int other = (j == 1) ? 2 : 1;
            CircleRoots cr = roots_on_circle(as_unipoly_in(vo.content, other),
                                             opts.content_root_tol);
            vo.unimodular_roots = cr.roots;
            vo.triggers = !cr.roots.empty();
        }
        any = any || vo.triggers;
        verdict.per_variable.push_back(std::move(vo));
    }
    verdict.dense = !any;
    return verdict;
}

Complex RjFunction::value(const std::vector<Complex>& z) const {
    return eval(numerator, z) / eval(denominator, z);
}

Complex RjFunction::value_ray(const std::vector<Complex>& z, double rho) const {
    std::vector<Complex> zr(z);
    for (std::size_t k = 0; k < zr.size(); ++k)
        if (static_cast<int>(k) != j - 1) zr[k] *= rho;
    return eval(numerator, z) / eval(denominator, zr);
}

RjFunction build_rj(const RationalInnerFn& phi, Complex alpha, int j,
                    const BuildRjOptions& opts) {
    if (phi.domain() != DomainKind::polydisc || phi.nvars() != 2)
        throw std::invalid_argument("build_rj: bivariate polydisc only");
    if (j < 1 || j > 2) throw std::invalid_argument("build_rj: bad variable index");

    ObstructionVerdict verdict = obstruction_detect(phi, alpha, opts.density);
    if (!verdict.dense)
        throw std::invalid_argument(
            "build_rj: obstruction detector predicts not_dense; r_j is not defined");

    auto [p1, p2] = split_in_variable(phi.p(), j);
    auto [q1, q2] = split_in_variable(phi.q(), j);

    RjFunction r;
    r.j = j;
    r.numerator = q2 * alpha - p2;
    r.denominator = p1 - q1 * alpha;
    const int other = (j == 1) ? 2 : 1;
    r.denominator_degree = std::max(r.denominator.total_degree(), 0);

    // the denominator lives in z' only; its roots must clear the closed disc
    UniPoly den = as_unipoly_in(r.denominator, other);
    if (den.is_zero()) throw std::runtime_error("build_rj: denominator is identically zero");
    double clearance = 0.999;
    if (!den.is_constant()) {
        for (auto root : all_roots(den)) {
            double margin = std::abs(root) - 1.0;
            if (margin <= 1e-9) {
                std::ostringstream os;
                os << "build_rj: denominator vanishes on the closed polydisc in z' "
                   << "(witness root " << root.real() << (root.imag() < 0 ? "" : "+")
                   << root.imag() << "i)";
                throw std::runtime_error(os.str());
            }
            clearance = std::min(clearance, margin);
        }
    }
    r.eps = std::min(clearance, 0.999);

    // validate r_j = conj(zeta_j) on traced level-set atoms
    LevelSetSample trace = trace_level_set(phi, alpha, opts.n_theta);
    int pass = 0, total = 0;
    for (const auto& pt : trace.points) {
        Complex zeta2(std::cos(pt.theta2), std::sin(pt.theta2));
        std::vector<Complex> zeta{pt.zeta1, zeta2};
        Complex expected = std::conj(zeta[j - 1]);
        ++total;
        if (std::abs(r.value(zeta) - expected) <= opts.validate_tol) ++pass;
    }
    r.validation_atoms = total;
    r.validation_pass_rate = (total > 0) ? static_cast<double>(pass) / total : 0.0;
    if (total == 0 || r.validation_pass_rate < opts.pass_rate) {
        std::ostringstream os;
        os << "build_rj: validation failed, pass rate " << r.validation_pass_rate << " on "
           << total << " atoms";
        throw std::runtime_error(os.str());
    }
    return r;
}

RayBoundReport rj_ray_bound_check(const RjFunction& r, const SampledClarkMeasure& mu,
                                  const std::vector<double>& rho_list) {
    RayBoundReport rep;
    rep.eps = r.eps;
    rep.denominator_degree = r.denominator_degree;
    if (r.eps <= 0.0)
        throw std::runtime_error(
            "rj_ray_bound_check: denominator zeros touch the closed polydisc; bound invalid");
    rep.ratio_bound = std::pow(2.0 / r.eps, r.denominator_degree);
    rep.bound_note =
        "ratio bound (2/eps)^k with eps the certified clearance of the denominator zero "
        "set; a clearance-independent constant is not attainable for this bound";

    rep.ratio_bound_holds = true;
    double prev_dist = std::numeric_limits<double>::infinity();
    rep.l2_monotone = true;
    for (double rho : rho_list) {
        double sup_ratio = 0.0;
        double dist2 = 0.0;
        for (std::size_t i = 0; i < mu.fibers.size(); ++i) {
            for (const auto& atom : mu.fibers[i].atoms) {
                Complex rv = r.value(atom.point);
                Complex rr = r.value_ray(atom.point, rho);
                double denom_abs = std::abs(rv);
                if (denom_abs > 1e-14) sup_ratio = std::max(sup_ratio, std::abs(rr) / denom_abs);
                dist2 += mu.quad_weights[i] * atom.weight * std::norm(rr - rv);
            }
        }
        double dist = std::sqrt(std::max(dist2, 0.0));
        rep.rho.push_back(rho);
        rep.sup_ratio.push_back(sup_ratio);
        rep.l2_distance.push_back(dist);
        if (sup_ratio > rep.ratio_bound * (1.0 + 1e-12)) rep.ratio_bound_holds = false;
        if (dist > prev_dist + 1e-12) rep.l2_monotone = false;
        prev_dist = dist;
    }
    return rep;
}

LemmaLowerBound lemma_lower_bound_test(const UniPoly& p, double eps, int n_x) {
    if (p.is_zero()) throw std::invalid_argument("lemma_lower_bound_test: zero polynomial");
    if (eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("lemma_lower_bound_test: eps must lie in (0,1)");
    if (n_x < 2) throw std::invalid_argument("lemma_lower_bound_test: n_x must be >= 2");

    // The hull of B(0, eps) and {1} is the union of segments [x, 1] over
    // |x| <= eps, so z lies in it iff |z - (1-t)|/t <= eps for some t in
    // (0, 1]. Every root must clear the hull.
    auto hull_ratio = [](Complex z) {
        double best = std::numeric_limits<double>::infinity();
        const int nt = 4096;
        for (int i = 1; i <= nt; ++i) {
            double t = static_cast<double>(i) / nt;
            best = std::min(best, std::abs(z - (1.0 - t)) / t);
        }
        return best;
    };
    if (!p.is_constant()) {
        for (auto root : all_roots(p)) {
            if (hull_ratio(root) <= eps * (1.0 + 1e-9)) {
                std::ostringstream os;
                os << "lemma_lower_bound_test: p vanishes on the hull (witness root "
                   << root.real() << (root.imag() < 0 ? "" : "+") << root.imag() << "i)";
                throw std::invalid_argument(os.str());
            }
        }
    }
    // dense sweep of the hull boundary (far arc plus tangent segments to 1)
    // as an independent certificate of the same precondition
    const int n_probe = 2048;
    const double theta0 = std::acos(eps);
    auto check = [&](Complex z) {
        if (std::abs(p(z)) <= 1e-9 * std::max(p.coeff_norm(), 1e-300)) {
            std::ostringstream os;
            os << "lemma_lower_bound_test: p vanishes on the hull boundary near " << z.real()
               << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
            throw std::invalid_argument(os.str());
        }
    };
    for (int i = 0; i <= n_probe; ++i) {
        double theta = theta0 + (kTwoPi - 2.0 * theta0) * i / n_probe;
        check(std::polar(eps, theta));
    }
    const Complex touch_up(eps * eps, eps * std::sqrt(1.0 - eps * eps));
    for (int i = 0; i <= n_probe; ++i) {
        double t = static_cast<double>(i) / n_probe;
        check(touch_up + t * (Complex(1.0, 0.0) - touch_up));
        check(std::conj(touch_up) + t * (Complex(1.0, 0.0) - std::conj(touch_up)));
    }

    const double p1 = std::abs(p(Complex(1.0, 0.0)));
    LemmaLowerBound out;
    out.bound = std::pow(eps / 2.0, std::max(p.degree(), 0));
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_x; ++i) {
        double x = static_cast<double>(i) / (n_x - 1);
        min_ratio = std::min(min_ratio, std::abs(p(Complex(x, 0.0))) / p1);
    }
    out.min_ratio = min_ratio;
    return out;
}

namespace {

std::vector<std::vector<int>> enumerate_basis(DomainKind domain, int nvars, int N) {
    std::vector<std::vector<int>> basis;
    std::vector<int> exp(nvars, 0);
    // lexicographic enumeration; box degree for the polydisc, total degree
    // for the matrix ball
    while (true) {
        int total = 0;
        for (int e : exp) total += e;
        bool ok = (domain == DomainKind::polydisc) ? true : (total <= N);
        if (ok) basis.push_back(exp);
        int k = nvars - 1;
        while (k >= 0) {
            if (exp[k] < N) {
                ++exp[k];
                break;
            }
            exp[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return basis;
}

}  // namespace

GramSystem gram_residual(const SampledClarkMeasure& mu, int target_var, int N,
                         const GramOptions& opts) {
    if (N < 1) throw std::invalid_argument("gram_residual: N must be >= 1");
    if (mu.fibers.empty()) throw std::invalid_argument("gram_residual: empty measure");
    const int nvars = static_cast<int>(mu.fibers.front().rep.size());
    if (target_var < 1 || target_var > nvars)
        throw std::invalid_argument("gram_residual: target variable out of range");

    GramSystem sys;
    sys.N = N;
    sys.target_var = target_var;
    sys.basis_exponents = enumerate_basis(mu.domain, nvars, N);
    const int b = static_cast<int>(sys.basis_exponents.size());
    sys.basis_size = b;

    // accumulate moments in fixed chunks so the reduction order does not
    // depend on the worker count
    const std::size_t n_fibers = mu.fibers.size();
    const std::size_t n_chunks = std::min<std::size_t>(64, n_fibers);
    std::vector<Eigen::MatrixXcd> g_part(n_chunks, Eigen::MatrixXcd::Zero(b, b));
    std::vector<Eigen::VectorXcd> rhs_part(n_chunks, Eigen::VectorXcd::Zero(b));
    std::vector<double> norm_part(n_chunks, 0.0);

    parallel_for(n_chunks, opts.workers, [&](std::size_t chunk) {
        Eigen::VectorXcd v(b);
        std::vector<std::vector<Complex>> pow(nvars);
        const std::size_t lo = chunk * n_fibers / n_chunks;
        const std::size_t hi = (chunk + 1) * n_fibers / n_chunks;
        for (std::size_t i = lo; i < hi; ++i) {
            for (const auto& atom : mu.fibers[i].atoms) {
                const double w = mu.quad_weights[i] * atom.weight;
                int maxdeg = N;
                for (int k = 0; k < nvars; ++k) {
                    pow[k].assign(1, Complex(1.0));
                    for (int e = 1; e <= maxdeg; ++e)
                        pow[k].push_back(pow[k].back() * atom.point[k]);
                }
                for (int m = 0; m < b; ++m) {
                    Complex t = 1.0;
                    const auto& exp = sys.basis_exponents[m];
                    for (int k = 0; k < nvars; ++k) t *= pow[k][exp[k]];
                    v(m) = t;
                }
                Complex target = std::conj(atom.point[target_var - 1]);
                // normal equations A c = b with A_{mk} = sum w conj(v_m) v_k
                g_part[chunk].noalias() += w * (v.conjugate() * v.transpose());
                rhs_part[chunk].noalias() += (w * target) * v.conjugate();
                norm_part[chunk] += w * std::norm(target);
            }
        }
    });

    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(b, b);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(b);
    double norm2 = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        gram += g_part[c];
        rhs += rhs_part[c];
        norm2 += norm_part[c];
    }
    sys.target_norm2 = norm2;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (gram + gram.adjoint()));
    const auto& ev = eig.eigenvalues();
    sys.min_eigenvalue = ev.minCoeff();
    sys.max_eigenvalue = ev.maxCoeff();
    if (sys.min_eigenvalue < -1e-10 * std::max(sys.max_eigenvalue, 1.0))
        throw std::runtime_error("gram_residual: Gram matrix is not PSD; quadrature failure");

    const double cutoff = opts.spectral_cutoff * std::max(sys.max_eigenvalue, 0.0);
    Eigen::VectorXcd proj = eig.eigenvectors().adjoint() * rhs;
    Eigen::VectorXcd scaled = Eigen::VectorXcd::Zero(b);
    for (int k = 0; k < b; ++k)
        if (ev(k) > cutoff && ev(k) > 0.0) scaled(k) = proj(k) / ev(k);
    Eigen::VectorXcd coef = eig.eigenvectors() * scaled;

    sys.coefficients.assign(coef.data(), coef.data() + b);
    double fit = (rhs.adjoint() * coef)(0, 0).real();
    sys.residual = std::sqrt(std::max(norm2 - fit, 0.0));
    return sys;
}

}  // namespace polyclark
