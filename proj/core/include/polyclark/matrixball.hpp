#pragma once

#include <complex>
#include <vector>

#include "polyclark/rng.hpp"

namespace polyclark {

// 2x2 complex matrix, row-major entries (a b; c d). Boundary points of the
// operator-norm ball are unitaries. As a polynomial evaluation point the
// matrix flattens to (a, b, c, d).
struct MatrixPoint {
    std::complex<double> a, b, c, d;

    std::vector<std::complex<double>> flatten() const { return {a, b, c, d}; }
    std::complex<double> det() const { return a * d - b * c; }
    double unitarity_residual() const;  // max-entry norm of M* M - I
    double op_norm() const;             // largest singular value
};

// phi(a b; c d) = (ad - bc - d) / (1 - a); inner on the 2x2 matrix ball.
// Throws std::domain_error at the pole |1 - a| <= 1e-12.
std::complex<double> phi_i22(const MatrixPoint& m);

// Haar-distributed unitary: QR of a standard complex Gaussian matrix with
// the phases of R's diagonal absorbed into Q.
MatrixPoint haar_unitary(SplitMix64& rng);
MatrixPoint haar_unitary(std::uint64_t seed);

// Closed-form family of unitaries with determinant gamma lying on
// {p = alpha q} for p = ad - bc - d, q = 1 - a; parametrized by x1 in the
// open unit disc and gamma on a uniform unimodular grid.
struct TorusFamily {
    std::complex<double> x1;
    std::complex<double> alpha;
    std::vector<std::complex<double>> gammas;
    std::vector<MatrixPoint> matrices;
    double max_unitarity_residual = 0.0;
    double max_level_residual = 0.0;    // |p(M) - alpha q(M)|
    double max_det_residual = 0.0;      // |det(M) - gamma|
    double max_membership_residual = 0.0;  // |1 - x1 conj(y1) + alpha x2 conj(y2)|
};

TorusFamily torus_family(std::complex<double> x1, std::complex<double> alpha, int n_gamma);

// Jacobian of (Re g12, Re g22, Im g22) in (rho, theta, phi) for the family
// above with x1 = rho e^{i theta}, gamma = e^{i phi}: central-difference
// determinant next to the closed form
//   2 rho^4 sqrt(1-rho^2) Im(e^{i theta} + conj(alpha) e^{i(theta+phi)})
//     * (1 + Re(conj(alpha) e^{i phi})).
struct JacobianCheck {
    double numeric_det = 0.0;
    double closed_form = 0.0;
};

JacobianCheck jacobian_rank_check(double rho, double theta, double phi_angle,
                                  std::complex<double> alpha, double fd_step = 1e-5);

}  // namespace polyclark
