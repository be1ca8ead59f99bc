#pragma once

#include <complex>
#include <vector>

namespace polyclark {

// Dense univariate polynomial, coefficients ascending in degree, trailing
// (near-)zeros trimmed. The zero polynomial has an empty coefficient list.
class UniPoly {
public:
    static constexpr double kCoeffFloor = 1e-14;

    UniPoly() = default;
    explicit UniPoly(std::vector<std::complex<double>> coeffs);
    UniPoly(std::initializer_list<std::complex<double>> coeffs);

    static UniPoly constant(std::complex<double> c) { return UniPoly({c}); }
    // monic w - r
    static UniPoly linear_root(std::complex<double> r) { return UniPoly({-r, {1.0, 0.0}}); }
    static UniPoly from_roots(const std::vector<std::complex<double>>& roots);

    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    std::complex<double> leading() const;
    double coeff_norm() const;  // max |c_k|

    std::complex<double> operator()(std::complex<double> w) const;  // Horner
    UniPoly derivative() const;

    UniPoly operator+(const UniPoly& rhs) const;
    UniPoly operator-(const UniPoly& rhs) const;
    UniPoly operator*(const UniPoly& rhs) const;
    UniPoly operator*(std::complex<double> scalar) const;

    // monic rescaling (no-op on the zero polynomial)
    UniPoly monic() const;

private:
    void trim();

    std::vector<std::complex<double>> coeffs_;
};

}  // namespace polyclark
