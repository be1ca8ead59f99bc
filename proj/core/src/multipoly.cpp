#include "polyclark/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polyclark {

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("MultiPoly: nvars must be positive");
}

MultiPoly::MultiPoly(int nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
    if (nvars < 1) throw std::invalid_argument("MultiPoly: nvars must be positive");
    for (const auto& [exp, c] : terms_) {
        if (static_cast<int>(exp.size()) != nvars_)
            throw std::invalid_argument("MultiPoly: exponent tuple length != nvars");
        for (int e : exp)
            if (e < 0) throw std::invalid_argument("MultiPoly: negative exponent");
    }
    normalize();
}

MultiPoly MultiPoly::constant(int nvars, Complex c) {
    MultiPoly p(nvars);
    p.terms_[Exponents(nvars, 0)] = c;
    p.normalize();
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int j) {
    if (j < 1 || j > nvars) throw std::invalid_argument("MultiPoly::variable: index out of range");
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[j - 1] = 1;
    p.terms_[e] = 1.0;
    return p;
}

MultiPoly MultiPoly::monomial(int nvars, const Exponents& exp, Complex c) {
    MultiPoly p(nvars);
    p.terms_[exp] = c;
    return MultiPoly(nvars, p.terms_);
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& exp = terms_.begin()->first;
    return std::all_of(exp.begin(), exp.end(), [](int e) { return e == 0; });
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [exp, c] : terms_)
        d = std::max(d, std::accumulate(exp.begin(), exp.end(), 0));
    return d;
}

int MultiPoly::degree_in(int j) const {
    if (j < 1 || j > nvars_) throw std::invalid_argument("MultiPoly::degree_in: index out of range");
    int d = -1;
    for (const auto& [exp, c] : terms_) d = std::max(d, exp[j - 1]);
    return d;
}

Complex MultiPoly::coeff(const Exponents& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

double MultiPoly::max_coeff_magnitude() const {
    double m = 0.0;
    for (const auto& [exp, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    if (nvars_ != rhs.nvars_) throw std::invalid_argument("MultiPoly: nvars mismatch");
    for (const auto& [exp, c] : rhs.terms_) terms_[exp] += c;
    normalize();
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
    if (nvars_ != rhs.nvars_) throw std::invalid_argument("MultiPoly: nvars mismatch");
    for (const auto& [exp, c] : rhs.terms_) terms_[exp] -= c;
    normalize();
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
    MultiPoly out(*this);
    out += rhs;
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& rhs) const {
    MultiPoly out(*this);
    out -= rhs;
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& rhs) const {
    if (nvars_ != rhs.nvars_) throw std::invalid_argument("MultiPoly: nvars mismatch");
    MultiPoly out(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Exponents e(nvars_);
            for (int k = 0; k < nvars_; ++k) e[k] = ea[k] + eb[k];
            out.terms_[e] += ca * cb;
        }
    }
    out.normalize();
    return out;
}

MultiPoly MultiPoly::operator*(Complex scalar) const {
    MultiPoly out(*this);
    for (auto& [exp, c] : out.terms_) c *= scalar;
    out.normalize();
    return out;
}

MultiPoly MultiPoly::operator-() const {
    return (*this) * Complex(-1.0);
}

bool MultiPoly::same_terms(const MultiPoly& rhs, double tol) const {
    if (nvars_ != rhs.nvars_) return false;
    MultiPoly diff = *this - rhs;
    if (tol <= 0.0) return diff.terms_.empty();
    return diff.max_coeff_magnitude() <= tol;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exp, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        for (int k = 0; k < nvars_; ++k)
            if (exp[k] > 0) os << "*z" << (k + 1) << "^" << exp[k];
    }
    return os.str();
}

void MultiPoly::normalize() {
    double scale = max_coeff_magnitude();
    double floor = kCoeffFloor * scale;
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (std::abs(it->second) <= floor) ? terms_.erase(it) : std::next(it);
}

Complex eval(const MultiPoly& p, const std::vector<Complex>& z) {
    if (static_cast<int>(z.size()) != p.nvars())
        throw std::invalid_argument("eval: point dimension != nvars");
    // power table per variable, grown on demand
    std::vector<std::vector<Complex>> pow(p.nvars(), {Complex(1.0)});
    auto power = [&](int var, int e) {
        auto& tab = pow[var];
        while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * z[var]);
        return tab[e];
    };
    Complex acc = 0.0;
    for (const auto& [exp, c] : p.terms()) {
        Complex t = c;
        for (int k = 0; k < p.nvars(); ++k)
            if (exp[k] > 0) t *= power(k, exp[k]);
        acc += t;
    }
    return acc;
}

std::vector<MultiPoly> gradient(const MultiPoly& p) {
    std::vector<MultiPoly> grad;
    grad.reserve(p.nvars());
    for (int j = 0; j < p.nvars(); ++j) {
        MultiPoly::TermMap terms;
        for (const auto& [exp, c] : p.terms()) {
            if (exp[j] == 0) continue;
            MultiPoly::Exponents e(exp);
            e[j] -= 1;
            terms[e] += c * static_cast<double>(exp[j]);
        }
        grad.emplace_back(p.nvars(), std::move(terms));
    }
    return grad;
}

std::pair<MultiPoly, MultiPoly> split_in_variable(const MultiPoly& p, int j) {
    if (j < 1 || j > p.nvars()) throw std::invalid_argument("split_in_variable: index out of range");
    MultiPoly::TermMap low, high;
    for (const auto& [exp, c] : p.terms()) {
        if (exp[j - 1] == 0) {
            low[exp] = c;
        } else {
            MultiPoly::Exponents e(exp);
            e[j - 1] -= 1;
            high[e] = c;
        }
    }
    return {MultiPoly(p.nvars(), std::move(low)), MultiPoly(p.nvars(), std::move(high))};
}

UniPoly restrict_to_fiber(const MultiPoly& p, const std::vector<Complex>& zeta) {
    if (static_cast<int>(zeta.size()) != p.nvars())
        throw std::invalid_argument("restrict_to_fiber: point dimension != nvars");
    std::vector<Complex> coeffs(std::max(p.total_degree() + 1, 1), 0.0);
    std::vector<std::vector<Complex>> pow(p.nvars(), {Complex(1.0)});
    auto power = [&](int var, int e) {
        auto& tab = pow[var];
        while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * zeta[var]);
        return tab[e];
    };
    for (const auto& [exp, c] : p.terms()) {
        Complex t = c;
        int total = 0;
        for (int k = 0; k < p.nvars(); ++k) {
            total += exp[k];
            if (exp[k] > 0) t *= power(k, exp[k]);
        }
        coeffs[total] += t;
    }
    return UniPoly(std::move(coeffs));
}

UniPoly partial_evaluate(const MultiPoly& p, int j, const std::vector<Complex>& values) {
    if (j < 1 || j > p.nvars()) throw std::invalid_argument("partial_evaluate: index out of range");
    if (static_cast<int>(values.size()) != p.nvars())
        throw std::invalid_argument("partial_evaluate: values dimension != nvars");
    std::vector<Complex> coeffs(std::max(p.degree_in(j) + 1, 1), 0.0);
    std::vector<std::vector<Complex>> pow(p.nvars(), {Complex(1.0)});
    auto power = [&](int var, int e) {
        auto& tab = pow[var];
        while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * values[var]);
        return tab[e];
    };
    for (const auto& [exp, c] : p.terms()) {
        Complex t = c;
        for (int k = 0; k < p.nvars(); ++k)
            if (k != j - 1 && exp[k] > 0) t *= power(k, exp[k]);
        coeffs[exp[j - 1]] += t;
    }
    return UniPoly(std::move(coeffs));
}

}  // namespace polyclark
