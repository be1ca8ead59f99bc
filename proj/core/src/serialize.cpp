#include "polyclark/serialize.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace polyclark {

namespace {

using Complex = std::complex<double>;
using json = nlohmann::json;

json complex_to_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

MultiPoly poly_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
    if (!j.contains("nvars") || !j["nvars"].is_number_integer())
        throw std::invalid_argument(where + "/nvars: expected an integer");
    const int nvars = j["nvars"].get<int>();
    if (nvars < 1) throw std::invalid_argument(where + "/nvars: must be positive");
    if (!j.contains("terms") || !j["terms"].is_array())
        throw std::invalid_argument(where + "/terms: expected an array");

    MultiPoly::TermMap terms;
    int idx = 0;
    for (const auto& t : j["terms"]) {
        const std::string at = where + "/terms/" + std::to_string(idx++);
        if (!t.is_object()) throw std::invalid_argument(at + ": expected an object");
        if (!t.contains("exp") || !t["exp"].is_array() ||
            static_cast<int>(t["exp"].size()) != nvars)
            throw std::invalid_argument(at + "/exp: expected an array of length nvars");
        MultiPoly::Exponents exp;
        for (const auto& e : t["exp"]) {
            if (!e.is_number_integer() || e.get<int>() < 0)
                throw std::invalid_argument(at + "/exp: exponents must be nonnegative integers");
            exp.push_back(e.get<int>());
        }
        double re = 0.0, im = 0.0;
        if (t.contains("re")) {
            if (!t["re"].is_number()) throw std::invalid_argument(at + "/re: expected a number");
            re = t["re"].get<double>();
        }
        if (t.contains("im")) {
            if (!t["im"].is_number()) throw std::invalid_argument(at + "/im: expected a number");
            im = t["im"].get<double>();
        }
        terms[exp] += Complex(re, im);
    }
    return MultiPoly(nvars, std::move(terms));
}

}  // namespace

MultiPoly parse_poly(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("polynomial literal: ") + e.what());
    }
    return poly_from_json(j, "");
}

std::string poly_to_json(const MultiPoly& p) {
    json j;
    j["nvars"] = p.nvars();
    j["terms"] = json::array();
    for (const auto& [exp, c] : p.terms()) {
        json t;
        t["exp"] = exp;
        t["re"] = c.real();
        t["im"] = c.imag();
        j["terms"].push_back(t);
    }
    return j.dump();
}

RationalInnerFn parse_rif(const std::string& json_text, const RifOptions& opts) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("phi specification: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("phi specification: expected an object");
    DomainKind domain = DomainKind::polydisc;
    if (j.contains("domain")) {
        const std::string d = j["domain"].get<std::string>();
        if (d == "polydisc")
            domain = DomainKind::polydisc;
        else if (d == "matrix_ball_2x2")
            domain = DomainKind::matrix_ball_2x2;
        else
            throw std::invalid_argument("/domain: expected polydisc or matrix_ball_2x2");
    }
    if (!j.contains("p")) throw std::invalid_argument("/p: missing polynomial literal");
    MultiPoly p = poly_from_json(j["p"], "/p");
    MultiPoly q = j.contains("q") ? poly_from_json(j["q"], "/q")
                                  : MultiPoly::constant(p.nvars(), 1.0);
    return RationalInnerFn(std::move(p), std::move(q), domain, opts);
}

std::string measure_to_json(const SampledClarkMeasure& mu) {
    json j;
    j["alpha"] = complex_to_json(mu.alpha);
    j["domain"] = (mu.domain == DomainKind::polydisc) ? "polydisc" : "matrix_ball_2x2";
    j["grid"] = mu.grid_size;
    j["fibers"] = json::array();
    for (std::size_t i = 0; i < mu.fibers.size(); ++i) {
        const auto& fm = mu.fibers[i];
        json jf;
        jf["rep"] = json::array();
        for (auto c : fm.rep) jf["rep"].push_back(complex_to_json(c));
        jf["quad_weight"] = mu.quad_weights[i];
        jf["atoms"] = json::array();
        for (const auto& atom : fm.atoms) {
            json ja;
            ja["w"] = complex_to_json(atom.w);
            ja["point"] = json::array();
            for (auto c : atom.point) ja["point"].push_back(complex_to_json(c));
            ja["weight"] = atom.weight;
            jf["atoms"].push_back(ja);
        }
        j["fibers"].push_back(jf);
    }
    j["metadata"] = {{"grid_size", mu.grid_size},
                     {"seed", mu.seed},
                     {"skipped_fibers", mu.skipped},
                     {"total_mass", mu.total_mass()}};
    return j.dump(2);
}

std::string atoms_to_csv(const SampledClarkMeasure& mu) {
    std::string out = "fiber,re_w,im_w,weight";
    const int n = mu.fibers.empty() ? 0 : static_cast<int>(mu.fibers.front().rep.size());
    for (int k = 1; k <= n; ++k)
        out += ",re_z" + std::to_string(k) + ",im_z" + std::to_string(k);
    out += "\n";
    for (std::size_t i = 0; i < mu.fibers.size(); ++i) {
        for (const auto& atom : mu.fibers[i].atoms) {
            out += std::to_string(i) + "," + fmt(atom.w.real()) + "," + fmt(atom.w.imag()) +
                   "," + fmt(atom.weight);
            for (auto c : atom.point) out += "," + fmt(c.real()) + "," + fmt(c.imag());
            out += "\n";
        }
    }
    return out;
}

std::string level_set_to_csv(const LevelSetSample& sample) {
    std::string out = "theta2,re_zeta1,im_zeta1,grad_norm,density,arclen,branch\n";
    for (const auto& pt : sample.points) {
        out += fmt(pt.theta2) + "," + fmt(pt.zeta1.real()) + "," + fmt(pt.zeta1.imag()) + "," +
               fmt(pt.grad_norm) + "," + fmt(pt.density) + "," + fmt(pt.arclen) + "," +
               std::to_string(pt.branch) + "\n";
    }
    return out;
}

}  // namespace polyclark
