#include "polyclark/gcd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace polyclark {

namespace {

using Complex = std::complex<double>;

// Matrix of (x, y) -> x*a + y*b on coefficient vectors, with deg x <= dx and
// deg y <= dy; columns are the shifted copies of a then b.
Eigen::MatrixXcd convolution_pair_matrix(const UniPoly& a, const UniPoly& b, int dx, int dy) {
    const int m = a.degree(), n = b.degree();
    const int rows = std::max(m + dx, n + dy) + 1;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(rows, dx + dy + 2);
    for (int shift = 0; shift <= dx; ++shift)
        for (int k = 0; k <= m; ++k) s(k + shift, shift) = a.coeffs()[k];
    for (int shift = 0; shift <= dy; ++shift)
        for (int k = 0; k <= n; ++k) s(k + shift, dx + 1 + shift) = b.coeffs()[k];
    return s;
}

}  // namespace

UniPoly approx_gcd(const UniPoly& a, const UniPoly& b, double tol_rank) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("approx_gcd: zero input");
    if (a.is_constant() || b.is_constant()) return UniPoly::constant(1.0);

    // scale out coefficient magnitudes so tol_rank acts relatively
    UniPoly an = a * (1.0 / a.coeff_norm());
    UniPoly bn = b * (1.0 / b.coeff_norm());
    const int m = an.degree(), n = bn.degree();

    // Sylvester matrix: (x, y) -> x*a + y*b with deg x < n, deg y < m
    Eigen::MatrixXcd syl = convolution_pair_matrix(an, bn, n - 1, m - 1);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(syl);
    const auto& sv = svd.singularValues();
    const double cutoff = tol_rank * sv(0);
    int deficiency = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= cutoff) ++deficiency;
    const int d = std::min(deficiency, std::min(m, n));
    if (d == 0) return UniPoly::constant(1.0);

    // Reduced Sylvester matrix with cofactor degrees capped at (n-d, m-d):
    // its null vector is (b_cof, -a_cof) with a = g*a_cof, b = g*b_cof.
    Eigen::MatrixXcd sd = convolution_pair_matrix(an, bn, n - d, m - d);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd2(sd, Eigen::ComputeFullV);
    Eigen::VectorXcd null_vec = svd2.matrixV().col(sd.cols() - 1);

    const int nb = n - d + 1;
    std::vector<Complex> bc(null_vec.data(), null_vec.data() + nb);
    std::vector<Complex> ac(null_vec.data() + nb, null_vec.data() + null_vec.size());
    for (auto& c : ac) c = -c;
    UniPoly b_cof{std::move(bc)};
    UniPoly a_cof{std::move(ac)};
    if (a_cof.is_zero() || b_cof.is_zero()) return UniPoly::constant(1.0);

    // joint deconvolution: min over g of |C(a_cof) g - a|^2 + |C(b_cof) g - b|^2
    const int rows_a = m + 1, rows_b = n + 1;
    Eigen::MatrixXcd lsq = Eigen::MatrixXcd::Zero(rows_a + rows_b, d + 1);
    for (int shift = 0; shift <= d; ++shift) {
        for (int k = 0; k <= a_cof.degree(); ++k)
            if (k + shift <= m) lsq(k + shift, shift) += a_cof.coeffs()[k];
        for (int k = 0; k <= b_cof.degree(); ++k)
            if (k + shift <= n) lsq(rows_a + k + shift, shift) += b_cof.coeffs()[k];
    }
    Eigen::VectorXcd rhs(rows_a + rows_b);
    for (int k = 0; k <= m; ++k) rhs(k) = an.coeffs()[k];
    for (int k = 0; k <= n; ++k) rhs(rows_a + k) = bn.coeffs()[k];
    Eigen::VectorXcd g = lsq.colPivHouseholderQr().solve(rhs);

    std::vector<Complex> gc(g.data(), g.data() + g.size());
    UniPoly gcd{std::move(gc)};
    if (gcd.is_zero()) return UniPoly::constant(1.0);
    return gcd.monic();
}

MultiPoly content_in_variable(const MultiPoly& h, int j, double tol_rank) {
    if (h.nvars() != 2)
        throw std::invalid_argument("content_in_variable: only bivariate polynomials supported");
    if (h.is_zero()) throw std::invalid_argument("content_in_variable: zero polynomial");
    if (j < 1 || j > 2) throw std::invalid_argument("content_in_variable: bad variable index");
    const int other = (j == 1) ? 2 : 1;

    // coefficients of h in powers of z_j, as univariate polynomials in z_other
    const int dj = h.degree_in(j);
    const int dother = h.degree_in(other);
    std::vector<std::vector<Complex>> coeff(dj + 1, std::vector<Complex>(dother + 1, 0.0));
    for (const auto& [exp, c] : h.terms()) coeff[exp[j - 1]][exp[other - 1]] += c;

    UniPoly content;
    for (int k = 0; k <= dj; ++k) {
        UniPoly ck{std::vector<Complex>(coeff[k])};
        if (ck.is_zero()) continue;
        content = content.is_zero() ? ck.monic() : approx_gcd(content, ck, tol_rank);
        if (content.is_constant()) return MultiPoly::constant(2, 1.0);
    }
    if (content.is_zero()) throw std::invalid_argument("content_in_variable: zero polynomial");

    MultiPoly::TermMap terms;
    for (int k = 0; k <= content.degree(); ++k) {
        MultiPoly::Exponents e(2, 0);
        e[other - 1] = k;
        terms[e] = content.coeffs()[k];
    }
    return MultiPoly(2, std::move(terms));
}

}  // namespace polyclark
