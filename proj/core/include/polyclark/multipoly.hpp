#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "polyclark/unipoly.hpp"

namespace polyclark {

using Complex = std::complex<double>;

// Sparse multivariate polynomial with complex coefficients. Terms are keyed
// by exponent multi-index in lexicographic order, so iteration (and hence
// every summation below) is deterministic. Coefficients with magnitude
// below kCoeffFloor are dropped on normalization.
class MultiPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Complex>;

    static constexpr double kCoeffFloor = 1e-14;

    MultiPoly() : nvars_(1) {}
    explicit MultiPoly(int nvars);
    MultiPoly(int nvars, TermMap terms);

    static MultiPoly zero(int nvars) { return MultiPoly(nvars); }
    static MultiPoly constant(int nvars, Complex c);
    // the monomial z_j (1-based j)
    static MultiPoly variable(int nvars, int j);
    static MultiPoly monomial(int nvars, const Exponents& exp, Complex c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;

    // max total degree of stored terms; -1 for the zero polynomial
    int total_degree() const;
    // max exponent of variable j (1-based); -1 for zero
    int degree_in(int j) const;

    Complex coeff(const Exponents& exp) const;
    double max_coeff_magnitude() const;

    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    MultiPoly operator+(const MultiPoly& rhs) const;
    MultiPoly operator-(const MultiPoly& rhs) const;
    MultiPoly operator*(const MultiPoly& rhs) const;
    MultiPoly operator*(Complex scalar) const;
    MultiPoly operator-() const;

    bool same_terms(const MultiPoly& rhs, double tol = 0.0) const;

    std::string to_string() const;

private:
    void normalize();

    int nvars_;
    TermMap terms_;
};

// Value of p at z; per-variable powers are cached and terms accumulated in
// map order, so the summation order is deterministic.
Complex eval(const MultiPoly& p, const std::vector<Complex>& z);

// (d p / d z_1, ..., d p / d z_n), exact coefficient arithmetic.
std::vector<MultiPoly> gradient(const MultiPoly& p);

// Unique decomposition p = p1 + z_j * p2 with p1 free of z_j (1-based j).
std::pair<MultiPoly, MultiPoly> split_in_variable(const MultiPoly& p, int j);

// Univariate restriction w -> p(w * zeta): coefficient of w^k is the sum of
// coeff(gamma) * zeta^gamma over |gamma| = k.
UniPoly restrict_to_fiber(const MultiPoly& p, const std::vector<Complex>& zeta);

// Substitutes fixed values for all variables except z_j (1-based); returns
// the resulting univariate polynomial in z_j. values[k] is used for variable
// k+1 and ignored at k = j-1.
UniPoly partial_evaluate(const MultiPoly& p, int j, const std::vector<Complex>& values);

}  // namespace polyclark
