#include "polyclark/rif.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polyclark/matrixball.hpp"
#include "polyclark/rng.hpp"

namespace polyclark {

namespace {
using Complex = std::complex<double>;
}

RationalInnerFn::RationalInnerFn(MultiPoly p, MultiPoly q, DomainKind domain,
                                 const RifOptions& opts)
    : p_(std::move(p)), q_(std::move(q)), domain_(domain) {
    if (p_.nvars() != q_.nvars())
        throw std::invalid_argument("RationalInnerFn: p and q must share nvars");
    if (domain_ == DomainKind::matrix_ball_2x2 && p_.nvars() != 4)
        throw std::invalid_argument("RationalInnerFn: matrix_ball_2x2 needs nvars = 4");
    if (q_.is_zero()) throw std::invalid_argument("RationalInnerFn: q is zero");
    if (p_.is_zero()) throw std::invalid_argument("RationalInnerFn: p is zero");
    grad_p_ = gradient(p_);
    grad_q_ = gradient(q_);
    coeff_scale_ = std::max(p_.max_coeff_magnitude(), q_.max_coeff_magnitude());
    validate(opts);
}

int RationalInnerFn::max_degree() const {
    return std::max(p_.total_degree(), q_.total_degree());
}

Complex RationalInnerFn::value(const std::vector<Complex>& z) const {
    return eval(p_, z) / eval(q_, z);
}

Complex RationalInnerFn::value_at_zero() const {
    std::vector<Complex> zero(nvars(), 0.0);
    return value(zero);
}

std::vector<Complex> RationalInnerFn::grad(const std::vector<Complex>& z) const {
    Complex pv = eval(p_, z);
    Complex qv = eval(q_, z);
    std::vector<Complex> g(nvars());
    for (int j = 0; j < nvars(); ++j)
        g[j] = (eval(grad_p_[j], z) * qv - pv * eval(grad_q_[j], z)) / (qv * qv);
    return g;
}

double RationalInnerFn::grad_norm(const std::vector<Complex>& z) const {
    double s = 0.0;
    for (auto g : grad(z)) s += std::norm(g);
    return std::sqrt(s);
}

void RationalInnerFn::validate(const RifOptions& opts) {
    const double q_scale = std::max(q_.max_coeff_magnitude(), 1e-300);
    const double singular_cut = opts.singular_q_threshold * q_scale;

    cert_.n_boundary = opts.n_boundary_samples;
    cert_.min_q_closure = std::numeric_limits<double>::infinity();

    auto boundary_sample = [&](std::uint64_t i) -> std::vector<Complex> {
        if (domain_ == DomainKind::polydisc) {
            SplitMix64 rng = substream(opts.seed, 11, i);
            std::vector<Complex> zeta(nvars());
            for (int j = 0; j < nvars(); ++j) zeta[j] = rng.unit_circle();
            return zeta;
        }
        SplitMix64 rng = substream(opts.seed, 12, i);
        return haar_unitary(rng).flatten();
    };

    for (int i = 0; i < opts.n_boundary_samples; ++i) {
        std::vector<Complex> zeta = boundary_sample(static_cast<std::uint64_t>(i));
        Complex qv = eval(q_, zeta);
        cert_.min_q_closure = std::min(cert_.min_q_closure, std::abs(qv));
        if (std::abs(qv) <= singular_cut) {
            ++cert_.n_excluded;
            continue;
        }
        double dev = std::abs(std::abs(eval(p_, zeta) / qv) - 1.0);
        cert_.max_deviation = std::max(cert_.max_deviation, dev);
    }

    for (int i = 0; i < opts.n_interior_samples; ++i) {
        SplitMix64 rng = substream(opts.seed, 13, static_cast<std::uint64_t>(i));
        std::vector<Complex> z;
        if (domain_ == DomainKind::polydisc) {
            // independent moduli cover the whole closed polydisc
            z.resize(nvars());
            for (auto& c : z) c = rng.uniform() * rng.unit_circle();
        } else {
            // U diag(s1, s2) V* with Haar factors covers the closed ball
            MatrixPoint u = haar_unitary(rng);
            MatrixPoint v = haar_unitary(rng);
            double s1 = rng.uniform(), s2 = rng.uniform();
            Complex a = u.a * s1, b = u.b * s2, c = u.c * s1, d = u.d * s2;
            z = {a * std::conj(v.a) + b * std::conj(v.b), a * std::conj(v.c) + b * std::conj(v.d),
                 c * std::conj(v.a) + d * std::conj(v.b), c * std::conj(v.c) + d * std::conj(v.d)};
        }
        cert_.min_q_closure = std::min(cert_.min_q_closure, std::abs(eval(q_, z)));
    }

    if (cert_.min_q_closure < opts.q_hard_floor) {
        std::ostringstream os;
        os << "RationalInnerFn: q vanishes on the sampled closed domain (min |q| = "
           << cert_.min_q_closure << ")";
        throw std::invalid_argument(os.str());
    }
    if (cert_.max_deviation > opts.deviation_tol) {
        std::ostringstream os;
        os << "RationalInnerFn: not inner on sampled boundary (max ||phi|-1| = "
           << cert_.max_deviation << ")";
        throw std::invalid_argument(os.str());
    }
}

namespace rifs {

RationalInnerFn coordinate(int nvars, int j) {
    return RationalInnerFn(MultiPoly::variable(nvars, j), MultiPoly::constant(nvars, 1.0),
                           DomainKind::polydisc);
}

RationalInnerFn product(int nvars) {
    MultiPoly p = MultiPoly::constant(nvars, 1.0);
    for (int j = 1; j <= nvars; ++j) p = p * MultiPoly::variable(nvars, j);
    return RationalInnerFn(std::move(p), MultiPoly::constant(nvars, 1.0), DomainKind::polydisc);
}

RationalInnerFn favorite_rif11() {
    MultiPoly z1 = MultiPoly::variable(2, 1), z2 = MultiPoly::variable(2, 2);
    MultiPoly p = z1 * z2 * Complex(2.0) - z1 - z2;
    MultiPoly q = MultiPoly::constant(2, 2.0) - z1 - z2;
    return RationalInnerFn(std::move(p), std::move(q), DomainKind::polydisc);
}

RationalInnerFn monomial_bidisc(int e1, int e2) {
    MultiPoly p = MultiPoly::monomial(2, {e1, e2}, 1.0);
    return RationalInnerFn(std::move(p), MultiPoly::constant(2, 1.0), DomainKind::polydisc);
}

RationalInnerFn blaschke_in_z2(Complex c) {
    if (std::abs(c) >= 1.0) throw std::invalid_argument("blaschke_in_z2: |c| must be < 1");
    MultiPoly z1 = MultiPoly::variable(2, 1), z2 = MultiPoly::variable(2, 2);
    MultiPoly p = z1 * (z2 - MultiPoly::constant(2, c));
    MultiPoly q = MultiPoly::constant(2, 1.0) - z2 * std::conj(c);
    return RationalInnerFn(std::move(p), std::move(q), DomainKind::polydisc);
}

RationalInnerFn i22() {
    // variables (z1, z2, z3, z4) = (a, b, c, d)
    MultiPoly a = MultiPoly::variable(4, 1), b = MultiPoly::variable(4, 2);
    MultiPoly c = MultiPoly::variable(4, 3), d = MultiPoly::variable(4, 4);
    MultiPoly p = a * d - b * c - d;
    MultiPoly q = MultiPoly::constant(4, 1.0) - a;
    return RationalInnerFn(std::move(p), std::move(q), DomainKind::matrix_ball_2x2);
}

RationalInnerFn det2() {
    MultiPoly a = MultiPoly::variable(4, 1), b = MultiPoly::variable(4, 2);
    MultiPoly c = MultiPoly::variable(4, 3), d = MultiPoly::variable(4, 4);
    MultiPoly p = a * d - b * c;
    return RationalInnerFn(std::move(p), MultiPoly::constant(4, 1.0),
                           DomainKind::matrix_ball_2x2);
}

}  // namespace rifs

}  // namespace polyclark
