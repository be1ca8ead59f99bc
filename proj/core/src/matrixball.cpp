#include "polyclark/matrixball.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyclark {

namespace {
using Complex = std::complex<double>;
}

double MatrixPoint::unitarity_residual() const {
    // M* M - I entrywise
    Complex g11 = std::conj(a) * a + std::conj(c) * c - 1.0;
    Complex g12 = std::conj(a) * b + std::conj(c) * d;
    Complex g21 = std::conj(b) * a + std::conj(d) * c;
    Complex g22 = std::conj(b) * b + std::conj(d) * d - 1.0;
    return std::max(std::max(std::abs(g11), std::abs(g12)),
                    std::max(std::abs(g21), std::abs(g22)));
}

double MatrixPoint::op_norm() const {
    // singular values of a 2x2: sigma^2 are eigenvalues of M* M
    double t = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    double det2 = std::norm(a * d - b * c);
    double disc = std::max(t * t - 4.0 * det2, 0.0);
    return std::sqrt(0.5 * (t + std::sqrt(disc)));
}

Complex phi_i22(const MatrixPoint& m) {
    Complex denom = 1.0 - m.a;
    if (std::abs(denom) <= 1e-12)
        throw std::domain_error("phi_i22: pole at a = 1");
    return (m.a * m.d - m.b * m.c - m.d) / denom;
}

MatrixPoint haar_unitary(SplitMix64& rng) {
    // Ginibre sample
    Complex g11 = rng.complex_normal(), g12 = rng.complex_normal();
    Complex g21 = rng.complex_normal(), g22 = rng.complex_normal();
    // Gram-Schmidt QR on the two columns
    double n1 = std::sqrt(std::norm(g11) + std::norm(g21));
    Complex q11 = g11 / n1, q21 = g21 / n1;
    Complex proj = std::conj(q11) * g12 + std::conj(q21) * g22;
    Complex v12 = g12 - proj * q11, v22 = g22 - proj * q21;
    double n2 = std::sqrt(std::norm(v12) + std::norm(v22));
    Complex q12 = v12 / n2, q22 = v22 / n2;
    // absorb the phases of R's diagonal (r11 = n1 > 0 already; r22 = n2 > 0)
    // into Q: with positive diagonal nothing remains to absorb, and the
    // distribution is exactly Haar
    return MatrixPoint{q11, q12, q21, q22};
}

MatrixPoint haar_unitary(std::uint64_t seed) {
    SplitMix64 rng(seed);
    rng.next();
    return haar_unitary(rng);
}

TorusFamily torus_family(Complex x1, Complex alpha, int n_gamma) {
    if (std::abs(x1) >= 1.0)
        throw std::invalid_argument("torus_family: |x1| must be < 1");
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
        throw std::invalid_argument("torus_family: |alpha| must be 1");
    if (n_gamma < 1) throw std::invalid_argument("torus_family: n_gamma must be positive");

    TorusFamily fam;
    fam.x1 = x1;
    fam.alpha = alpha;
    const double x2 = std::sqrt(1.0 - std::norm(x1));
    const Complex y1 = x1;
    const Complex y2 = -alpha * x2;
    const Complex abar = std::conj(alpha);

    // membership condition 1 - x1 conj(y1) + alpha x2 conj(y2) = 0 and its
    // equivalent form conj(x2) y2 + alpha - alpha conj(x1) y1 = 0
    double m1 = std::abs(1.0 - x1 * std::conj(y1) + alpha * x2 * std::conj(y2));
    double m2 = std::abs(x2 * y2 + alpha - alpha * std::conj(x1) * y1);
    fam.max_membership_residual = std::max(m1, m2);

    for (int k = 0; k < n_gamma; ++k) {
        double t = 2.0 * std::numbers::pi * k / n_gamma;
        Complex gamma(std::cos(t), std::sin(t));
        MatrixPoint m;
        m.a = std::norm(x1) * (1.0 + abar * gamma) - abar * gamma;
        m.b = x1 * x2 * (1.0 + abar * gamma);
        m.c = -std::conj(x1) * x2 * (alpha + gamma);
        m.d = std::norm(x1) * (gamma + alpha) - alpha;

        Complex p = m.a * m.d - m.b * m.c - m.d;
        Complex q = 1.0 - m.a;
        fam.max_unitarity_residual = std::max(fam.max_unitarity_residual, m.unitarity_residual());
        fam.max_level_residual = std::max(fam.max_level_residual, std::abs(p - alpha * q));
        fam.max_det_residual = std::max(fam.max_det_residual, std::abs(m.det() - gamma));
        fam.gammas.push_back(gamma);
        fam.matrices.push_back(m);
    }
    return fam;
}

namespace {

// the three tracked real components of g(rho, theta, phi)
std::array<double, 3> g_components(double rho, double theta, double phi, Complex alpha) {
    Complex x1 = std::polar(rho, theta);
    Complex gamma = std::polar(1.0, phi);
    Complex abar = std::conj(alpha);
    Complex g12 = x1 * std::sqrt(1.0 - rho * rho) * (1.0 + abar * gamma);
    Complex g22 = rho * rho * (gamma + alpha) - alpha;
    return {g12.real(), g22.real(), g22.imag()};
}

}  // namespace

JacobianCheck jacobian_rank_check(double rho, double theta, double phi_angle,
                                  Complex alpha, double fd_step) {
    if (rho <= 0.0 || rho >= 1.0)
        throw std::invalid_argument("jacobian_rank_check: rho must lie in (0,1)");

    const double h = fd_step;
    double jac[3][3];
    const double base[3] = {rho, theta, phi_angle};
    for (int v = 0; v < 3; ++v) {
        double plus[3] = {base[0], base[1], base[2]};
        double minus[3] = {base[0], base[1], base[2]};
        plus[v] += h;
        minus[v] -= h;
        auto fp = g_components(plus[0], plus[1], plus[2], alpha);
        auto fm = g_components(minus[0], minus[1], minus[2], alpha);
        for (int comp = 0; comp < 3; ++comp) jac[comp][v] = (fp[comp] - fm[comp]) / (2.0 * h);
    }
    JacobianCheck out;
    out.numeric_det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                      jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                      jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);

    Complex abar = std::conj(alpha);
    Complex inner = std::polar(1.0, theta) + abar * std::polar(1.0, theta + phi_angle);
    out.closed_form = 2.0 * std::pow(rho, 4) * std::sqrt(1.0 - rho * rho) * inner.imag() *
                      (1.0 + (abar * std::polar(1.0, phi_angle)).real());
    return out;
}

}  // namespace polyclark
