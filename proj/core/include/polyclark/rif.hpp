#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "polyclark/multipoly.hpp"

namespace polyclark {

enum class DomainKind { polydisc, matrix_ball_2x2 };

struct InnernessCertificate {
    double max_deviation = 0.0;   // max ||phi| - 1| over boundary samples off the singular set
    double min_q_closure = 0.0;   // min |q| over closed-domain samples
    int n_boundary = 0;
    int n_excluded = 0;           // boundary samples skipped as singular-adjacent
};

struct RifOptions {
    int n_boundary_samples = 4096;
    int n_interior_samples = 2048;
    std::uint64_t seed = 0x5eedULL;
    double deviation_tol = 1e-6;
    double q_hard_floor = 1e-10;
    // boundary samples with |q| below this (relative to q's coefficient
    // scale) count as singular-adjacent and are excluded from the deviation
    double singular_q_threshold = 1e-3;
};

// Validated rational inner function phi = p/q on the polydisc or on the 2x2
// matrix ball (nvars = 4, variables (a,b,c,d) row-major). Construction
// samples the Silov boundary and the closed domain; it throws
// std::invalid_argument if |phi| strays from 1 off the singular set or if q
// comes too close to vanishing.
class RationalInnerFn {
public:
    RationalInnerFn(MultiPoly p, MultiPoly q, DomainKind domain, const RifOptions& opts = {});

    const MultiPoly& p() const { return p_; }
    const MultiPoly& q() const { return q_; }
    int nvars() const { return p_.nvars(); }
    DomainKind domain() const { return domain_; }
    const InnernessCertificate& certificate() const { return cert_; }
    int max_degree() const;  // max(deg p, deg q); fiber atom bound

    std::complex<double> value(const std::vector<std::complex<double>>& z) const;
    std::complex<double> value_at_zero() const;

    // complex gradient (d phi / d z_1, ..., d phi / d z_n) by the quotient rule
    std::vector<std::complex<double>> grad(const std::vector<std::complex<double>>& z) const;
    double grad_norm(const std::vector<std::complex<double>>& z) const;

    // scale used by residual checks: coefficient magnitude of p and q
    double coeff_scale() const { return coeff_scale_; }

private:
    void validate(const RifOptions& opts);

    MultiPoly p_, q_;
    std::vector<MultiPoly> grad_p_, grad_q_;
    DomainKind domain_;
    InnernessCertificate cert_;
    double coeff_scale_ = 1.0;
};

// ready-made test functions
namespace rifs {
RationalInnerFn coordinate(int nvars, int j);                       // phi = z_j
RationalInnerFn product(int nvars);                                 // phi = z_1 ... z_n
RationalInnerFn favorite_rif11();                                   // (2 z1 z2 - z1 - z2)/(2 - z1 - z2)
RationalInnerFn monomial_bidisc(int e1, int e2);                    // z1^e1 z2^e2
RationalInnerFn blaschke_in_z2(std::complex<double> c);             // z1 * (z2 - c)/(1 - conj(c) z2)
RationalInnerFn i22();                                              // (ad - bc - d)/(1 - a) on the matrix ball
RationalInnerFn det2();                                             // ad - bc on the matrix ball
}  // namespace rifs

}  // namespace polyclark
