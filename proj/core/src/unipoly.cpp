#include "polyclark/unipoly.hpp"

#include <algorithm>
#include <cmath>

namespace polyclark {

UniPoly::UniPoly(std::vector<std::complex<double>> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

UniPoly::UniPoly(std::initializer_list<std::complex<double>> coeffs) : coeffs_(coeffs) {
    trim();
}

UniPoly UniPoly::from_roots(const std::vector<std::complex<double>>& roots) {
    UniPoly p = constant(1.0);
    for (auto r : roots) p = p * linear_root(r);
    return p;
}

std::complex<double> UniPoly::leading() const {
    return coeffs_.empty() ? std::complex<double>(0.0) : coeffs_.back();
}

double UniPoly::coeff_norm() const {
    double m = 0.0;
    for (auto c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

std::complex<double> UniPoly::operator()(std::complex<double> w) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return UniPoly();
    std::vector<std::complex<double>> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& rhs) const {
    std::vector<std::complex<double>> s(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) s[k] += coeffs_[k];
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) s[k] += rhs.coeffs_[k];
    return UniPoly(std::move(s));
}

UniPoly UniPoly::operator-(const UniPoly& rhs) const {
    std::vector<std::complex<double>> s(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) s[k] += coeffs_[k];
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) s[k] -= rhs.coeffs_[k];
    return UniPoly(std::move(s));
}

UniPoly UniPoly::operator*(const UniPoly& rhs) const {
    if (is_zero() || rhs.is_zero()) return UniPoly();
    std::vector<std::complex<double>> s(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) s[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return UniPoly(std::move(s));
}

UniPoly UniPoly::operator*(std::complex<double> scalar) const {
    std::vector<std::complex<double>> s(coeffs_);
    for (auto& c : s) c *= scalar;
    return UniPoly(std::move(s));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (1.0 / coeffs_.back());
}

void UniPoly::trim() {
    double scale = 0.0;
    for (auto c : coeffs_) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) {
        coeffs_.clear();
        return;
    }
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kCoeffFloor * scale) coeffs_.pop_back();
}

}  // namespace polyclark
