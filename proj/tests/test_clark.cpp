#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "polyclark/clark.hpp"
#include "polyclark/levelset.hpp"
#include "polyclark/matrixball.hpp"
#include "polyclark/rng.hpp"
#include "test_util.hpp"

using namespace polyclark;

namespace {

const Complex I(0.0, 1.0);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// coefficient substitution z_j -> e^{i tau} z_j
MultiPoly rotate_var(const MultiPoly& p, int j, double tau) {
    MultiPoly::TermMap terms;
    for (const auto& [exp, c] : p.terms())
        terms[exp] = c * std::polar(1.0, tau * exp[j - 1]);
    return MultiPoly(p.nvars(), std::move(terms));
}

}  // namespace

TEST_CASE("fiber measure of z1: one atom at w = alpha with weight 1") {
    RationalInnerFn phi = rifs::coordinate(2, 1);
    SplitMix64 rng(42);
    for (int k = 0; k < 10; ++k) {
        Complex alpha = rng.unit_circle();
        Complex zeta2 = rng.unit_circle();
        FiberMeasure fm = fiber_clark_measure(phi, alpha, {1.0, zeta2});
        REQUIRE(fm.atoms.size() == 1);
        CHECK(!fm.skipped);
        CHECK(std::abs(fm.atoms[0].w - alpha) <= 1e-12);
        CHECK(std::abs(fm.atoms[0].point[0] - alpha) <= 1e-12);
        CHECK(std::abs(fm.atoms[0].point[1] - alpha * zeta2) <= 1e-12);
        CHECK(fm.atoms[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("fiber measure of z1 z2 at alpha = 1: symbolic-derivative oracle") {
    RationalInnerFn phi = rifs::product(2);
    FiberMeasure fm = fiber_clark_measure(phi, 1.0, {1.0, 1.0});
    // psi(w) = w^2, psi' = 2w, so two atoms of weight 1/2
    REQUIRE(fm.atoms.size() == 2);
    for (const auto& atom : fm.atoms) {
        CHECK(std::abs(std::abs(atom.w) - 1.0) <= 1e-14);
        CHECK(std::abs(atom.w * atom.w - 1.0) <= 1e-10);
        CHECK(atom.weight == doctest::Approx(0.5).epsilon(1e-10));
    }
}

TEST_CASE("fiber measure on the matrix ball: atom bound and mass identity") {
    RationalInnerFn phi = rifs::i22();
    SplitMix64 rng(7);
    Complex alpha = std::polar(1.0, 0.7);
    for (int k = 0; k < 20; ++k) {
        SplitMix64 sub = substream(99, 7, k);
        FiberMeasure fm = fiber_clark_measure(phi, alpha, haar_unitary(sub).flatten());
        if (fm.skipped) continue;
        CHECK(static_cast<int>(fm.atoms.size()) <= 2);
        // phi(0) = 0, so every fiber carries total mass 1
        CHECK(fm.mass() == doctest::Approx(1.0).epsilon(1e-9));
        for (const auto& atom : fm.atoms) CHECK(atom.weight > 0.0);
    }
}

TEST_CASE("RIF11 singular fiber: the common root is removed, mass survives") {
    RationalInnerFn phi = rifs::favorite_rif11();
    // rep (1,1) passes through the boundary singularity of the RIF
    FiberMeasure fm = fiber_clark_measure(phi, 1.0, {1.0, 1.0});
    CHECK(!fm.skipped);
    REQUIRE(fm.atoms.size() == 1);
    CHECK(std::abs(fm.atoms[0].w + 1.0) <= 1e-10);
    CHECK(fm.atoms[0].weight == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("assemble_polydisc: z1 has one unit atom per fiber") {
    RationalInnerFn phi = rifs::coordinate(2, 1);
    SampledClarkMeasure mu = assemble_polydisc(phi, 1.0, 64, 11);
    CHECK(mu.skipped == 0);
    CHECK(mu.fibers.size() == 64);
    double wsum = 0.0;
    for (double w : mu.quad_weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& fm : mu.fibers) {
        REQUIRE(fm.atoms.size() == 1);
        CHECK(fm.atoms[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(assemble_polydisc(phi, 1.0, 8, 11), std::invalid_argument);
}

TEST_CASE("assemble_polydisc: mass identity for the degree-(1,1) RIF") {
    RationalInnerFn phi = rifs::favorite_rif11();
    SampledClarkMeasure mu = assemble_polydisc(phi, 1.0, 512, 5);
    // phi(0) = 0: total mass (1-0)/|1-0|^2 = 1
    CHECK(std::abs(mu.total_mass() - 1.0) <= 1e-3);
    CHECK(mu.skipped <= 0.001 * 512);

    const double scale = phi.coeff_scale();
    for (const auto& fm : mu.fibers)
        for (const auto& atom : fm.atoms) {
            Complex r = eval(phi.p(), atom.point) - mu.alpha * eval(phi.q(), atom.point);
            CHECK(std::abs(r) <= 1e-6 * scale);
            CHECK(static_cast<int>(fm.atoms.size()) <= phi.max_degree());
        }
}

TEST_CASE("assemble_polydisc: z1 z2 at alpha = -1 splits mass over two atoms") {
    RationalInnerFn phi = rifs::product(2);
    SampledClarkMeasure mu = assemble_polydisc(phi, -1.0, 64, 3);
    for (const auto& fm : mu.fibers) {
        REQUIRE(fm.atoms.size() == 2);
        CHECK(fm.atoms[0].weight == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(fm.atoms[1].weight == doctest::Approx(0.5).epsilon(1e-10));
    }
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate: closed-form moments of mu_alpha for z1") {
    RationalInnerFn phi = rifs::coordinate(2, 1);
    SplitMix64 rng(17);
    Complex alpha = rng.unit_circle();
    SampledClarkMeasure mu = assemble_polydisc(phi, alpha, 256, 1);

    Complex m0 = integrate(mu, [](const auto&) { return Complex(1.0); });
    CHECK(std::abs(m0 - 1.0) <= 1e-12);

    // mu_alpha lives on {zeta_1 = alpha}
    Complex m1 = integrate(mu, [](const auto& z) { return z[0]; });
    CHECK(std::abs(m1 - alpha) <= 1e-12);

    // fiber Lebesgue symmetry kills the second coordinate
    Complex m2 = integrate(mu, [](const auto& z) { return z[1]; });
    CHECK(std::abs(m2) <= 1e-2);
}

TEST_CASE("poisson_check: closed-form kernels for z1") {
    RationalInnerFn phi = rifs::coordinate(2, 1);
    SampledClarkMeasure mu = assemble_polydisc(phi, 1.0, 512, 9);

    PoissonCheck at0 = poisson_check(mu, phi, {0.0, 0.0});
    CHECK(at0.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at0.rhs == doctest::Approx(1.0).epsilon(1e-12));

    const double t = 0.5;
    PoissonCheck att = poisson_check(mu, phi, {Complex(t, 0.0), 0.0});
    CHECK(att.rhs == doctest::Approx((1.0 + t) / (1.0 - t)).epsilon(1e-12));  // = 3
    CHECK(std::abs(att.lhs - att.rhs) <= 1e-4 * (1.0 + att.rhs));

    CHECK_THROWS_AS(poisson_check(mu, phi, {Complex(0.95, 0.0), 0.0}), std::invalid_argument);
}

TEST_CASE("poisson_check: degree-(1,1) RIF at a generic interior point") {
    RationalInnerFn phi = rifs::favorite_rif11();
    Complex alpha = I;
    SampledClarkMeasure mu = assemble_polydisc(phi, alpha, 512, 13);
    PoissonCheck pc = poisson_check(mu, phi, {Complex(0.3, 0.0), Complex(0.0, -0.2)});
    CHECK(std::abs(pc.lhs - pc.rhs) <= 1e-3 * (1.0 + pc.rhs));
}

TEST_CASE("disintegration_check: torus quadrature oracle") {
    // f = 1: all masses are 1 when phi(0) = 0
    RationalInnerFn rif = rifs::favorite_rif11();
    DisintegrationCheck d0 = disintegration_check(
        rif, [](const auto&) { return Complex(1.0); }, 8, 64, 21);
    CHECK(std::abs(d0.lhs - 1.0) <= 1e-6);
    CHECK(std::abs(d0.rhs - 1.0) <= 1e-12);

    // f = zeta_1 with phi = z1: per-alpha integral is alpha, grid average 0
    RationalInnerFn z1 = rifs::coordinate(2, 1);
    DisintegrationCheck d1 = disintegration_check(
        z1, [](const auto& z) { return z[0]; }, 64, 64, 22);
    CHECK(std::abs(d1.lhs) <= 1e-10);
    CHECK(std::abs(d1.rhs) <= 1e-12);

    // f = |zeta_1 + zeta_2|^2 with phi = z1 z2: both sides equal 2
    RationalInnerFn prod = rifs::product(2);
    DisintegrationCheck d2 = disintegration_check(
        prod, [](const auto& z) { return Complex(std::norm(z[0] + z[1])); }, 16, 128, 23);
    CHECK(std::abs(d2.lhs - 2.0) <= 1e-2);
    CHECK(std::abs(d2.rhs - 2.0) <= 1e-12);
}

TEST_CASE("rotation covariance: atoms rotate, weights are invariant") {
    RationalInnerFn phi = rifs::favorite_rif11();
    const double tau = 0.37;
    RationalInnerFn rotated(rotate_var(phi.p(), 1, tau), rotate_var(phi.q(), 1, tau),
                            DomainKind::polydisc);
    SplitMix64 rng(31);
    Complex alpha = std::polar(1.0, 1.3);
    for (int k = 0; k < 16; ++k) {
        Complex zeta2 = rng.unit_circle();
        FiberMeasure tilted = fiber_clark_measure(rotated, alpha, {1.0, zeta2});
        FiberMeasure base =
            fiber_clark_measure(phi, alpha, {1.0, zeta2 * std::polar(1.0, -tau)});
        REQUIRE(tilted.atoms.size() == base.atoms.size());
        for (const auto& ta : tilted.atoms) {
            bool matched = false;
            for (const auto& ba : base.atoms) {
                if (std::abs(ta.point[0] - ba.point[0] * std::polar(1.0, -tau)) <= 1e-9) {
                    CHECK(ta.weight == doctest::Approx(ba.weight).epsilon(1e-12));
                    matched = true;
                }
            }
            CHECK(matched);
        }
    }
}

TEST_CASE("assemble_matrix_ball: closed-form fibers of det and mass identities") {
    RationalInnerFn det2 = rifs::det2();
    SampledClarkMeasure mu = assemble_matrix_ball(det2, 1.0, 1000, 77);
    for (const auto& fm : mu.fibers) {
        REQUIRE(fm.atoms.size() == 2);  // psi(w) = w^2 det(zeta)
        CHECK(fm.atoms[0].weight == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(fm.atoms[1].weight == doctest::Approx(0.5).epsilon(1e-10));
        // atoms are unitary with determinant alpha
        for (const auto& atom : fm.atoms) {
            Complex det = atom.point[0] * atom.point[3] - atom.point[1] * atom.point[2];
            CHECK(std::abs(det - mu.alpha) <= 1e-9);
        }
    }
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-10));

    RationalInnerFn i22 = rifs::i22();
    SampledClarkMeasure mi = assemble_matrix_ball(i22, std::polar(1.0, 0.7), 2000, 78);
    CHECK(std::abs(mi.total_mass() - 1.0) <= 3.0 / std::sqrt(2000.0));

    CHECK_THROWS_AS(assemble_matrix_ball(det2, 1.0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(assemble_matrix_ball(det2, 1.0, 999, 1), std::invalid_argument);
}

TEST_CASE("higher-degree fibers and the tridisc") {
    // z1^4 z2^4: fiber restrictions have degree 8, eight atoms of weight 1/8
    RationalInnerFn m44 = rifs::monomial_bidisc(4, 4);
    SampledClarkMeasure mu = assemble_polydisc(m44, std::polar(1.0, 0.3), 64, 5);
    for (const auto& fm : mu.fibers) {
        REQUIRE(fm.atoms.size() == 8);
        for (const auto& atom : fm.atoms)
            CHECK(atom.weight == doctest::Approx(0.125).epsilon(1e-10));
    }
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-10));

    // fiber assembly is not bivariate-only
    RationalInnerFn tri = rifs::product(3);
    SampledClarkMeasure mt = assemble_polydisc(tri, 1.0, 24, 6);  // 24^2 fibers
    CHECK(mt.fibers.size() == 576);
    CHECK(mt.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    PoissonCheck pc =
        poisson_check(mt, tri, {Complex(0.2, 0.0), Complex(0.0, 0.1), Complex(-0.3, 0.0)});
    CHECK(std::abs(pc.lhs - pc.rhs) <= 1e-3 * (1.0 + pc.rhs));
}

TEST_CASE("squared RIF: quadratic boundary contact stays assemblable") {
    // phi = ((2 z1 z2 - z1 - z2)/(2 - z1 - z2))^2 written as a reduced
    // rational pair; q_f acquires a near-double root beside the circle, the
    // regime where the quotient-rule weight evaluation breaks down
    MultiPoly z1 = MultiPoly::variable(2, 1), z2 = MultiPoly::variable(2, 2);
    MultiPoly q = MultiPoly::constant(2, 4.0) - z1 * 4.0 - z2 * 4.0 + z1 * z1 +
                  z1 * z2 * 2.0 + z2 * z2;
    MultiPoly p = (z1 * z1) * (z2 * z2) * 4.0 - z1 * (z2 * z2) * 4.0 -
                  (z1 * z1) * z2 * 4.0 + z2 * z2 + z1 * z2 * 2.0 + z1 * z1;
    RationalInnerFn phi(p, q, DomainKind::polydisc);

    for (Complex alpha : {Complex(0.0, 1.0), Complex(1.0, 0.0)}) {
        SampledClarkMeasure mu = assemble_polydisc(phi, alpha, 512, 7);
        CHECK(mu.skipped == 0);
        CHECK(std::abs(mu.total_mass() - 1.0) <= 1e-6);
        LevelSetSample ls = trace_level_set(phi, alpha, 2048);
        Complex a = integrate(mu, [](const auto& z) { return z[0] * z[1]; });
        Complex b = integrate_coarea(ls, [](const auto& z) { return z[0] * z[1]; });
        CHECK(std::abs(a - b) <= 1e-3 * (1.0 + std::abs(a)));
    }

    // per-fiber masses hold right through the collision zone
    for (double theta : {0.002, 0.01, 0.05}) {
        FiberMeasure fm =
            fiber_clark_measure(phi, Complex(0.0, 1.0), {1.0, std::polar(1.0, theta)});
        CHECK(!fm.skipped);
        CHECK(fm.mass() == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("weak continuity in the fiber parameter") {
    // atom lists may reorder near branch collisions, so continuity is
    // checked through integrals of a fixed smooth f against neighbouring
    // fibers: they differ by O(grid spacing)
    RationalInnerFn phi = rifs::favorite_rif11();
    Complex alpha = std::polar(1.0, 0.9);
    auto f = [](const std::vector<Complex>& z) {
        return std::exp(0.3 * z[0]) * (1.0 + 0.5 * z[1]);
    };
    auto fiber_integral = [&](double theta) {
        FiberMeasure fm =
            fiber_clark_measure(phi, alpha, {1.0, std::polar(1.0, theta)});
        Complex acc = 0.0;
        for (const auto& atom : fm.atoms) acc += atom.weight * f(atom.point);
        return acc;
    };
    const int grid = 512;
    const double dtheta = kTwoPi / grid;
    for (int i = 0; i < grid; i += 7) {
        Complex a = fiber_integral(dtheta * i);
        Complex b = fiber_integral(dtheta * (i + 1));
        CHECK(std::abs(a - b) <= 50.0 * dtheta);
    }
}

TEST_CASE("assembly is worker-count invariant") {
    RationalInnerFn phi = rifs::favorite_rif11();
    AssembleOptions one;
    one.workers = 1;
    AssembleOptions four;
    four.workers = 4;
    SampledClarkMeasure a = assemble_polydisc(phi, I, 128, 99, one);
    SampledClarkMeasure b = assemble_polydisc(phi, I, 128, 99, four);
    REQUIRE(a.fibers.size() == b.fibers.size());
    for (std::size_t i = 0; i < a.fibers.size(); ++i) {
        REQUIRE(a.fibers[i].atoms.size() == b.fibers[i].atoms.size());
        for (std::size_t k = 0; k < a.fibers[i].atoms.size(); ++k) {
            CHECK(a.fibers[i].atoms[k].w == b.fibers[i].atoms[k].w);
            CHECK(a.fibers[i].atoms[k].weight == b.fibers[i].atoms[k].weight);
        }
    }
}
