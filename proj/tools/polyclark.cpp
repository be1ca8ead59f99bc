// polyclark: batch front-end for Clark-measure construction, identity
// verification, density analysis and the 2x2 matrix-ball demo. Every
// command emits a JSON report (stdout or --out) whose contents depend only
// on the configuration and the seed; wall_time_ms is the one exception.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "polyclark/clark.hpp"
#include "polyclark/demo.hpp"
#include "polyclark/density.hpp"
#include "polyclark/levelset.hpp"
#include "polyclark/serialize.hpp"

using namespace polyclark;
using json = nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RunConfig {
    std::string phi_spec;  // inline JSON or file path
    std::vector<std::string> alpha_specs;
    int grid = 512;
    int samples = 10000;
    std::uint64_t seed = 12345;
    int degree = 6;
    int workers = 1;
    double tol_circle = 1e-8;
    double tol_rank = 1e-8;
    double tol_dense = 1e-3;
    double tol_obstructed = 0.1;
    std::string out;
    std::string x1 = "0.5,0.0";
};

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex parse_complex(const std::string& text) {
    if (text == "1") return {1.0, 0.0};
    if (text == "-1") return {-1.0, 0.0};
    if (text == "i") return {0.0, 1.0};
    if (text == "-i") return {0.0, -1.0};
    if (text.rfind("angle:", 0) == 0) {
        double t = std::stod(text.substr(6));
        return std::polar(1.0, t);
    }
    auto comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

// --alpha entries: complex literals or one "count:N" grid
std::vector<Complex> parse_alphas(const std::vector<std::string>& specs) {
    std::vector<Complex> alphas;
    for (const auto& s : specs) {
        if (s.rfind("count:", 0) == 0) {
            int n = std::stoi(s.substr(6));
            if (n < 1) throw std::invalid_argument("--alpha count must be positive");
            for (int k = 0; k < n; ++k) alphas.push_back(std::polar(1.0, kTwoPi * k / n));
        } else {
            Complex a = parse_complex(s);
            if (std::abs(std::abs(a) - 1.0) > 1e-9)
                throw std::invalid_argument("--alpha must be unimodular: " + s);
            alphas.push_back(a / std::abs(a));
        }
    }
    if (alphas.empty()) alphas.push_back({1.0, 0.0});
    return alphas;
}

std::string load_phi_text(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return spec;
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("--phi: cannot open file " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RationalInnerFn load_phi(const RunConfig& cfg) {
    if (cfg.phi_spec.empty()) throw std::invalid_argument("--phi is required");
    return parse_rif(load_phi_text(cfg.phi_spec));
}

void validate_ranges(const RunConfig& cfg) {
    if (cfg.grid < 16 || cfg.grid > 8192)
        throw std::invalid_argument("--grid must lie in [16, 8192]");
    if (cfg.samples < 100 || cfg.samples > 1000000)
        throw std::invalid_argument("--samples must lie in [100, 1000000]");
    if (cfg.degree < 1 || cfg.degree > 24) throw std::invalid_argument("--degree must lie in [1, 24]");
    if (cfg.tol_circle <= 0 || cfg.tol_rank <= 0 || cfg.tol_dense <= 0 || cfg.tol_obstructed <= 0)
        throw std::invalid_argument("tolerances must be positive");
}

json config_json(const RunConfig& cfg) {
    return json{{"phi", cfg.phi_spec},
                {"alpha", cfg.alpha_specs},
                {"grid", cfg.grid},
                {"samples", cfg.samples},
                {"seed", cfg.seed},
                {"degree", cfg.degree},
                {"workers", cfg.workers},
                {"tol_circle", cfg.tol_circle},
                {"tol_rank", cfg.tol_rank},
                {"tol_dense", cfg.tol_dense},
                {"tol_obstructed", cfg.tol_obstructed}};
}

AssembleOptions assemble_options(const RunConfig& cfg) {
    AssembleOptions opts;
    opts.fiber.tol_circle = cfg.tol_circle;
    opts.workers = cfg.workers;
    return opts;
}

SampledClarkMeasure assemble(const RationalInnerFn& phi, Complex alpha, const RunConfig& cfg) {
    return (phi.domain() == DomainKind::polydisc)
               ? assemble_polydisc(phi, alpha, cfg.grid, cfg.seed, assemble_options(cfg))
               : assemble_matrix_ball(phi, alpha, cfg.samples, cfg.seed, assemble_options(cfg));
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// collects per-check pass flags and emits the final report
struct Reporter {
    json results = json::object();
    json pass = json::object();
    bool all_pass = true;

    void flag(const std::string& name, bool ok) {
        pass[name] = ok;
        all_pass = all_pass && ok;
    }

    int emit(const std::string& command, const RunConfig& cfg,
             std::chrono::steady_clock::time_point t0) {
        json report;
        report["command"] = command;
        report["config"] = config_json(cfg);
        report["results"] = results;
        report["pass"] = pass;
        report["all_pass"] = all_pass;
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        report["wall_time_ms"] = ms;
        std::string text = report.dump(2) + "\n";
        if (cfg.out.empty())
            std::cout << text;
        else
            write_file(cfg.out, text);
        return all_pass ? 0 : 1;
    }
};

double mass_tolerance(const RationalInnerFn& phi, const RunConfig& cfg) {
    return (phi.domain() == DomainKind::polydisc) ? 1e-3 : 3.0 / std::sqrt(double(cfg.samples));
}

int cmd_compute(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RationalInnerFn phi = load_phi(cfg);
    std::vector<Complex> alphas = parse_alphas(cfg.alpha_specs);

    Reporter rep;
    rep.results["measures"] = json::array();
    bool mass_ok = true;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        SampledClarkMeasure mu = assemble(phi, alphas[k], cfg);
        Complex phi0 = phi.value_at_zero();
        double expected = (1.0 - std::norm(phi0)) / std::norm(alphas[k] - phi0);
        double mass = mu.total_mass();
        bool ok = std::abs(mass - expected) <= mass_tolerance(phi, cfg) * (1.0 + expected);
        mass_ok = mass_ok && ok;
        json jm{{"alpha", complex_json(alphas[k])},
                {"total_mass", mass},
                {"expected_mass", expected},
                {"skipped_fibers", mu.skipped},
                {"atoms", [&] {
                     std::size_t n = 0;
                     for (const auto& fm : mu.fibers) n += fm.atoms.size();
                     return n;
                 }()},
                {"mass_ok", ok}};
        rep.results["measures"].push_back(jm);
        if (!cfg.out.empty()) {
            std::string stem = cfg.out + ".alpha" + std::to_string(k);
            write_file(stem + ".measure.json", measure_to_json(mu));
            write_file(stem + ".atoms.csv", atoms_to_csv(mu));
        }
    }
    rep.flag("mass_identity", mass_ok);
    return rep.emit("compute", cfg, t0);
}

int cmd_verify(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RationalInnerFn phi = load_phi(cfg);
    std::vector<Complex> alphas = parse_alphas(cfg.alpha_specs);
    const bool polydisc = phi.domain() == DomainKind::polydisc;

    Reporter rep;

    // Poisson reproduction at interior points
    std::vector<std::vector<Complex>> zs;
    if (polydisc) {
        std::vector<Complex> base(phi.nvars(), 0.0);
        zs.push_back(base);
        SplitMix64 rng(cfg.seed ^ 0xfeed);
        for (int k = 0; k < 4; ++k) {
            std::vector<Complex> z(phi.nvars());
            for (auto& c : z) c = 0.5 * rng.uniform() * rng.unit_circle();
            zs.push_back(z);
        }
    } else {
        zs.push_back(std::vector<Complex>(4, 0.0));
    }
    json poisson = json::array();
    bool poisson_ok = true;
    for (auto alpha : alphas) {
        SampledClarkMeasure mu = assemble(phi, alpha, cfg);
        for (const auto& z : zs) {
            PoissonCheck pc = poisson_check(mu, phi, z);
            double tol = polydisc ? 1e-3 * (1.0 + pc.rhs)
                                  : 3.0 / std::sqrt(double(cfg.samples)) * (1.0 + pc.rhs);
            bool ok = std::abs(pc.lhs - pc.rhs) <= tol;
            poisson_ok = poisson_ok && ok;
            json jz = json::array();
            for (auto c : z) jz.push_back(complex_json(c));
            poisson.push_back(json{{"alpha", complex_json(alpha)},
                                   {"z", jz},
                                   {"lhs", pc.lhs},
                                   {"rhs", pc.rhs},
                                   {"tol", tol},
                                   {"pass", ok}});
        }
    }
    rep.results["poisson"] = poisson;
    rep.flag("poisson", poisson_ok);

    // cross-method equivalence (bivariate polydisc only)
    if (polydisc && phi.nvars() == 2) {
        struct NamedFn {
            const char* name;
            BoundaryFn f;
        };
        std::vector<NamedFn> fs{
            {"1", [](const auto&) { return Complex(1.0); }},
            {"z1", [](const auto& z) { return z[0]; }},
            {"z1*z2", [](const auto& z) { return z[0] * z[1]; }},
            {"|z1+z2|^2", [](const auto& z) { return Complex(std::norm(z[0] + z[1])); }},
        };
        json cross = json::array();
        bool cross_ok = true;
        for (auto alpha : alphas) {
            SampledClarkMeasure mu = assemble(phi, alpha, cfg);
            LevelSetSample ls = trace_level_set(phi, alpha, 4 * cfg.grid);
            for (const auto& nf : fs) {
                Complex a = integrate(mu, nf.f);
                Complex b = integrate_coarea(ls, nf.f);
                double tol = 1e-3 * (1.0 + std::abs(a));
                bool ok = std::abs(a - b) <= tol;
                cross_ok = cross_ok && ok;
                cross.push_back(json{{"alpha", complex_json(alpha)},
                                     {"f", nf.name},
                                     {"fiber", complex_json(a)},
                                     {"coarea", complex_json(b)},
                                     {"tol", tol},
                                     {"pass", ok}});
            }
        }
        rep.results["cross_method"] = cross;
        rep.flag("cross_method", cross_ok);

        if (!cfg.out.empty()) {
            LevelSetSample ls = trace_level_set(phi, alphas.front(), 4 * cfg.grid);
            write_file(cfg.out + ".trace.csv", level_set_to_csv(ls));
        }
    }

    // Aleksandrov disintegration over an alpha grid
    {
        struct NamedFn {
            const char* name;
            BoundaryFn f;
        };
        std::vector<NamedFn> fs;
        if (polydisc) {
            fs = {{"1", [](const auto&) { return Complex(1.0); }},
                  {"z1", [](const auto& z) { return z[0]; }},
                  {"|z1+z2|^2", [](const auto& z) { return Complex(std::norm(z[0] + z[1])); }}};
        } else {
            fs = {{"1", [](const auto&) { return Complex(1.0); }},
                  {"a", [](const auto& z) { return z[0]; }}};
        }
        const int n_alpha = std::max<int>(8, static_cast<int>(alphas.size()));
        json dis = json::array();
        bool dis_ok = true;
        for (const auto& nf : fs) {
            DisintegrationCheck dc = disintegration_check(
                phi, nf.f, n_alpha, polydisc ? cfg.grid : cfg.samples, cfg.seed,
                assemble_options(cfg));
            // the Haar right-hand side on the ball is Monte Carlo with
            // error ~ 3/sqrt(N)
            double mc = polydisc ? 0.0 : 3.0 / std::sqrt(double(std::max(cfg.samples, 4096)));
            double tol = (1e-2 + mc) * (1.0 + std::abs(dc.rhs));
            bool ok = std::abs(dc.lhs - dc.rhs) <= tol;
            dis_ok = dis_ok && ok;
            dis.push_back(json{{"f", nf.name},
                               {"n_alpha", n_alpha},
                               {"lhs", complex_json(dc.lhs)},
                               {"rhs", complex_json(dc.rhs)},
                               {"tol", tol},
                               {"pass", ok}});
        }
        rep.results["disintegration"] = dis;
        rep.flag("disintegration", dis_ok);
    }
    return rep.emit("verify", cfg, t0);
}

json poly_json_echo(const MultiPoly& p) { return json::parse(poly_to_json(p)); }

int cmd_density(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RationalInnerFn phi = load_phi(cfg);
    if (phi.domain() != DomainKind::polydisc || phi.nvars() != 2)
        throw std::invalid_argument("density: bivariate polydisc only");
    std::vector<Complex> alphas = parse_alphas(cfg.alpha_specs);

    DensityOptions dopts;
    dopts.tol_rank = cfg.tol_rank;

    Reporter rep;
    rep.results["density"] = json::array();
    bool consistent = true;
    for (auto alpha : alphas) {
        ObstructionVerdict verdict = obstruction_detect(phi, alpha, dopts);
        SampledClarkMeasure mu = assemble(phi, alpha, cfg);

        json jv;
        jv["alpha"] = complex_json(alpha);
        jv["prediction"] = verdict.dense ? "dense" : "not_dense";
        jv["per_variable"] = json::array();
        for (const auto& vo : verdict.per_variable) {
            json roots = json::array();
            for (auto r : vo.unimodular_roots) roots.push_back(complex_json(r));
            jv["per_variable"].push_back(
                json{{"j", vo.j}, {"content_roots", roots}, {"triggers", vo.triggers}});
        }

        GramOptions gopts;
        gopts.workers = cfg.workers;
        double max_residual = 0.0;
        jv["residuals"] = json::array();
        for (int j = 1; j <= 2; ++j) {
            GramSystem g = gram_residual(mu, j, cfg.degree, gopts);
            max_residual = std::max(max_residual, g.residual);
            jv["residuals"].push_back(json{
                {"target", std::string("conj(z") + std::to_string(j) + ")"},
                {"N", cfg.degree},
                {"residual", g.residual}});
        }

        if (verdict.dense) {
            jv["rj"] = json::array();
            BuildRjOptions ropts;
            ropts.density = dopts;
            for (int j = 1; j <= 2; ++j) {
                RjFunction r = build_rj(phi, alpha, j, ropts);
                RayBoundReport ray = rj_ray_bound_check(r, mu, {0.9, 0.99, 0.999});
                jv["rj"].push_back(json{{"j", j},
                                        {"numerator", poly_json_echo(r.numerator)},
                                        {"denominator", poly_json_echo(r.denominator)},
                                        {"validation_pass_rate", r.validation_pass_rate},
                                        {"eps", r.eps},
                                        {"ray_l2", ray.l2_distance},
                                        {"ray_sup_ratio", ray.sup_ratio},
                                        {"ray_bound", ray.ratio_bound},
                                        {"ray_bound_holds", ray.ratio_bound_holds},
                                        {"ray_l2_monotone", ray.l2_monotone},
                                        {"bound_note", ray.bound_note}});
            }
        }

        bool ok = verdict.dense ? (max_residual <= cfg.tol_dense)
                                : (max_residual >= cfg.tol_obstructed);
        jv["dichotomy_ok"] = ok;
        consistent = consistent && ok;
        rep.results["density"].push_back(jv);
    }
    rep.flag("dichotomy", consistent);
    return rep.emit("density", cfg, t0);
}

int cmd_demo(const RunConfig& cfg, const std::string& x1_text) {
    auto t0 = std::chrono::steady_clock::now();
    Complex x1 = parse_complex(x1_text);
    if (std::abs(x1) >= 1.0) throw std::invalid_argument("--x1 must satisfy |x1| < 1");
    std::vector<Complex> alphas = parse_alphas(cfg.alpha_specs);

    DemoConfig dc;
    dc.n_measure_samples = cfg.samples;
    dc.n_inner_samples = std::min(10 * cfg.samples, 1000000);
    dc.gram_degree = cfg.degree;
    dc.seed = cfg.seed;
    dc.workers = cfg.workers;
    dc.alpha = alphas.front();

    // the explicit torus family at the requested x1 (plus the random sweep
    // inside run_demo_i22)
    TorusFamily fam = torus_family(x1, dc.alpha, 64);
    DemoReport demo = run_demo_i22(dc);

    Reporter rep;
    rep.results["innerness"] = json{{"n", demo.inner_samples},
                                    {"violations", demo.inner_violations},
                                    {"near_pole", demo.inner_near_pole}};
    rep.results["torus_family"] = json{
        {"x1", complex_json(x1)},
        {"alpha", complex_json(dc.alpha)},
        {"max_residuals",
         json{{"unitarity", std::max(fam.max_unitarity_residual, demo.family_max_unitarity)},
              {"level_set", std::max(fam.max_level_residual, demo.family_max_level_residual)},
              {"membership", std::max(fam.max_membership_residual, demo.family_max_membership)}}}};
    rep.results["jacobian"] = json{{"points", demo.jacobian_points},
                                   {"max_rel_err", demo.jacobian_max_rel_err}};
    rep.results["density"] = json{
        {"phi_i22_residuals", demo.i22_conj_entry_residual},
        {"det_residuals", demo.det_conj_entry_residual},
        {"adjugate_max_residual", demo.adjugate.max_residual()}};

    rep.flag("innerness", demo.innerness_pass);
    rep.flag("torus_family", demo.family_pass && fam.max_unitarity_residual <= 1e-10 &&
                                 fam.max_level_residual <= 1e-10);
    rep.flag("jacobian", demo.jacobian_pass);
    rep.flag("density_contrast", demo.density_contrast_pass);
    return rep.emit("demo-i22", cfg, t0);
}

int cmd_selftest(RunConfig cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Reporter rep;

    const std::string z1 = R"({"p": {"nvars": 2, "terms": [{"exp": [1,0], "re": 1}]}})";
    const std::string prod = R"({"p": {"nvars": 2, "terms": [{"exp": [1,1], "re": 1}]}})";
    const std::string rif11 =
        R"({"p": {"nvars": 2, "terms": [{"exp": [1,1], "re": 2}, {"exp": [1,0], "re": -1}, {"exp": [0,1], "re": -1}]},
            "q": {"nvars": 2, "terms": [{"exp": [0,0], "re": 2}, {"exp": [1,0], "re": -1}, {"exp": [0,1], "re": -1}]}})";

    // mass identities across the bidisc corpus
    bool mass_ok = true;
    json masses = json::array();
    for (const std::string& spec : {z1, prod, rif11}) {
        RationalInnerFn phi = parse_rif(spec);
        for (Complex alpha : {Complex(1.0, 0.0), Complex(0.0, 1.0), std::polar(1.0, 0.7)}) {
            SampledClarkMeasure mu =
                assemble_polydisc(phi, alpha, 256, cfg.seed, assemble_options(cfg));
            double mass = mu.total_mass();
            bool ok = std::abs(mass - 1.0) <= 1e-3;
            mass_ok = mass_ok && ok;
            masses.push_back(json{{"alpha", complex_json(alpha)}, {"mass", mass}, {"pass", ok}});
        }
    }
    rep.results["mass"] = masses;
    rep.flag("mass_identity", mass_ok);

    // one Poisson identity and one cross-method identity
    {
        RationalInnerFn phi = parse_rif(rif11);
        SampledClarkMeasure mu =
            assemble_polydisc(phi, Complex(0.0, 1.0), 256, cfg.seed, assemble_options(cfg));
        PoissonCheck pc = poisson_check(mu, phi, {Complex(0.3, 0.0), Complex(0.0, -0.2)});
        bool pok = std::abs(pc.lhs - pc.rhs) <= 2e-3 * (1.0 + pc.rhs);
        rep.results["poisson"] = json{{"lhs", pc.lhs}, {"rhs", pc.rhs}, {"pass", pok}};
        rep.flag("poisson", pok);

        LevelSetSample ls = trace_level_set(phi, Complex(0.0, 1.0), 1024);
        Complex a = integrate(mu, [](const auto& z) { return z[0] * z[1]; });
        Complex b = integrate_coarea(ls, [](const auto& z) { return z[0] * z[1]; });
        bool cok = std::abs(a - b) <= 2e-3 * (1.0 + std::abs(a));
        rep.results["cross_method"] =
            json{{"fiber", complex_json(a)}, {"coarea", complex_json(b)}, {"pass", cok}};
        rep.flag("cross_method", cok);
    }

    // density verdicts at alpha = 1
    {
        RationalInnerFn phi_z1 = parse_rif(z1);
        RationalInnerFn phi_prod = parse_rif(prod);
        ObstructionVerdict v1 = obstruction_detect(phi_z1, 1.0);
        ObstructionVerdict v2 = obstruction_detect(phi_prod, 1.0);
        SampledClarkMeasure m1 =
            assemble_polydisc(phi_z1, 1.0, 256, cfg.seed, assemble_options(cfg));
        SampledClarkMeasure m2 =
            assemble_polydisc(phi_prod, 1.0, 256, cfg.seed, assemble_options(cfg));
        double r1 = std::max(gram_residual(m1, 1, 4).residual, gram_residual(m1, 2, 4).residual);
        double r2 = std::max(gram_residual(m2, 1, 4).residual, gram_residual(m2, 2, 4).residual);
        bool ok = !v1.dense && v2.dense && r1 >= cfg.tol_obstructed && r2 <= cfg.tol_dense;
        rep.results["density"] = json{{"z1_prediction", v1.dense ? "dense" : "not_dense"},
                                      {"z1_residual", r1},
                                      {"prod_prediction", v2.dense ? "dense" : "not_dense"},
                                      {"prod_residual", r2},
                                      {"pass", ok}};
        rep.flag("density_dichotomy", ok);
    }

    // lower-bound property sample
    {
        SplitMix64 rng(cfg.seed ^ 0xabcd);
        bool ok = true;
        for (int t = 0; t < 20; ++t) {
            double eps = 0.1 + 0.8 * rng.uniform();
            int k = 1 + static_cast<int>(rng.next() % 4);
            std::vector<Complex> roots;
            while (static_cast<int>(roots.size()) < k) {
                Complex z(6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0);
                if (std::abs(z) > 1.0 + eps) roots.push_back(z);
            }
            LemmaLowerBound lb = lemma_lower_bound_test(UniPoly::from_roots(roots), eps, 2000);
            ok = ok && lb.holds();
        }
        rep.results["lower_bound_property"] = json{{"instances", 20}, {"pass", ok}};
        rep.flag("lower_bound_property", ok);
    }

    // reduced matrix-ball demo
    {
        DemoConfig dc;
        dc.n_inner_samples = 20000;
        dc.n_measure_samples = 2000;
        dc.n_jacobian_points = 50;
        dc.n_gamma = 32;
        dc.n_x1 = 6;
        dc.gram_degree = 3;
        dc.seed = cfg.seed;
        dc.workers = cfg.workers;
        DemoReport demo = run_demo_i22(dc);
        rep.results["demo_i22"] = json{{"innerness", demo.innerness_pass},
                                       {"torus_family", demo.family_pass},
                                       {"jacobian", demo.jacobian_pass},
                                       {"density_contrast", demo.density_contrast_pass},
                                       {"i22_residual", demo.i22_conj_entry_residual},
                                       {"det_residual", demo.det_conj_entry_residual}};
        rep.flag("demo_i22", demo.all_pass());
    }

    return rep.emit("selftest", cfg, t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clark measures of rational inner functions on polydiscs and the 2x2 matrix ball"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool needs_phi) {
        if (needs_phi) sub->add_option("--phi", cfg.phi_spec, "phi as inline JSON or a file path");
        sub->add_option("--alpha", cfg.alpha_specs,
                        "unimodular value (1, i, -1, re,im, angle:t) or count:N");
        sub->add_option("--grid", cfg.grid, "fibers per measure on the polydisc");
        sub->add_option("--samples", cfg.samples, "Haar samples on the matrix ball");
        sub->add_option("--seed", cfg.seed, "top-level seed for all randomness");
        sub->add_option("--degree", cfg.degree, "Gram basis degree N");
        sub->add_option("--out", cfg.out, "report path (stdout when absent)");
        sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
        sub->add_option("--tol-circle", cfg.tol_circle, "unimodularity filter for roots");
        sub->add_option("--tol-rank", cfg.tol_rank, "Sylvester SVD rank threshold");
        sub->add_option("--tol-dense", cfg.tol_dense, "dense-verdict residual threshold");
        sub->add_option("--tol-obstructed", cfg.tol_obstructed,
                        "not_dense-verdict residual threshold");
    };

    CLI::App* compute = app.add_subcommand("compute", "assemble mu_alpha and write atoms");
    add_common(compute, true);
    CLI::App* verify = app.add_subcommand("verify", "Poisson, cross-method and disintegration checks");
    add_common(verify, true);
    CLI::App* density = app.add_subcommand("density", "obstruction verdict, Gram residuals, r_j");
    add_common(density, true);
    CLI::App* demo = app.add_subcommand("demo-i22", "matrix-ball reproduction run");
    add_common(demo, false);
    demo->add_option("--x1", cfg.x1, "torus family base point, |x1| < 1");
    CLI::App* selftest = app.add_subcommand("selftest", "fixed deterministic battery");
    add_common(selftest, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        validate_ranges(cfg);
        if (compute->parsed()) return cmd_compute(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (density->parsed()) return cmd_density(cfg);
        if (demo->parsed()) return cmd_demo(cfg, cfg.x1);
        if (selftest->parsed()) return cmd_selftest(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
