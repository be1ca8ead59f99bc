#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "polyclark/density.hpp"
#include "polyclark/rng.hpp"
#include "test_util.hpp"

using namespace polyclark;

namespace {
const Complex I(0.0, 1.0);

bool in_hull(Complex z, double eps) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 4096; ++i) {
        double t = i / 4096.0;
        best = std::min(best, std::abs(z - (1.0 - t)) / t);
    }
    return best <= eps;
}
}  // namespace

TEST_CASE("obstruction_detect: cylinder cases and graph cases") {
    // phi = z1, alpha = 1: {1} x T is a full cylinder in z2
    ObstructionVerdict v1 = obstruction_detect(rifs::coordinate(2, 1), 1.0);
    CHECK(!v1.dense);
    CHECK(!v1.per_variable[0].triggers);
    REQUIRE(v1.per_variable[1].triggers);
    REQUIRE(v1.per_variable[1].unimodular_roots.size() == 1);
    CHECK(std::abs(v1.per_variable[1].unimodular_roots[0] - 1.0) <= 1e-8);

    // phi = z2 symmetrically
    ObstructionVerdict v2 = obstruction_detect(rifs::coordinate(2, 2), I);
    CHECK(!v2.dense);
    CHECK(v2.per_variable[0].triggers);
    CHECK(!v2.per_variable[1].triggers);

    // graph-like level sets are cylinder-free
    CHECK(obstruction_detect(rifs::product(2), 1.0).dense);
    CHECK(obstruction_detect(rifs::monomial_bidisc(2, 1), 1.0).dense);
    CHECK(obstruction_detect(rifs::monomial_bidisc(2, 1), I).dense);
    CHECK(obstruction_detect(rifs::favorite_rif11(), 1.0).dense);
    CHECK(obstruction_detect(rifs::favorite_rif11(), I).dense);
    CHECK(obstruction_detect(rifs::blaschke_in_z2(0.5), 1.0).dense);

    // degenerate phi identically alpha
    RationalInnerFn constant(MultiPoly::constant(2, I), MultiPoly::constant(2, 1.0),
                             DomainKind::polydisc);
    CHECK_THROWS_AS(obstruction_detect(constant, I), std::invalid_argument);
}

TEST_CASE("build_rj: closed-form splits for z1 z2") {
    RationalInnerFn phi = rifs::product(2);
    SplitMix64 rng(51);
    Complex alpha = rng.unit_circle();

    RjFunction r1 = build_rj(phi, alpha, 1);
    // r1 = z2 / alpha
    CHECK(r1.numerator.same_terms(-MultiPoly::variable(2, 2), 1e-15));
    CHECK(r1.denominator.same_terms(MultiPoly::constant(2, -alpha), 1e-15));
    CHECK(r1.denominator_degree == 0);
    CHECK(r1.validation_pass_rate == doctest::Approx(1.0));
    for (int k = 0; k < 8; ++k) {
        auto z = testutil::random_torus_point(rng, 2);
        CHECK(std::abs(r1.value(z) - z[1] / alpha) <= 1e-13);
    }

    RjFunction r2 = build_rj(phi, alpha, 2);
    for (int k = 0; k < 8; ++k) {
        auto z = testutil::random_torus_point(rng, 2);
        CHECK(std::abs(r2.value(z) - z[0] / alpha) <= 1e-13);
    }
}

TEST_CASE("build_rj: degree-(1,1) RIF gives r1 = z2 at alpha = 1") {
    RationalInnerFn phi = rifs::favorite_rif11();
    RjFunction r = build_rj(phi, 1.0, 1);
    // split: p1 = -z2, p2 = 2 z2 - 1, q1 = 2 - z2, q2 = -1
    // numerator = alpha q2 - p2 = -2 z2, denominator = p1 - alpha q1 = -2
    CHECK(r.numerator.same_terms(MultiPoly::variable(2, 2) * Complex(-2.0), 1e-14));
    CHECK(r.denominator.same_terms(MultiPoly::constant(2, -2.0), 1e-14));
    CHECK(r.validation_pass_rate >= 0.99);
    CHECK(r.validation_atoms > 1000);

    // r_j equals conj(zeta_j) on the level set
    SplitMix64 rng(52);
    for (int k = 0; k < 16; ++k) {
        Complex zeta2 = rng.unit_circle();
        std::vector<Complex> zeta{1.0 / zeta2, zeta2};  // zeta1 zeta2 = 1 on V_1
        CHECK(std::abs(r.value(zeta) - std::conj(zeta[0])) <= 1e-12);
    }
}

TEST_CASE("build_rj: denominator clearance for the Blaschke product") {
    RationalInnerFn phi = rifs::blaschke_in_z2(0.7);
    RjFunction r2 = build_rj(phi, 1.0, 2);
    // denominator -0.7 z1 - 1 has its root at -1/0.7
    CHECK(r2.eps == doctest::Approx(1.0 / 0.7 - 1.0).epsilon(1e-10));
    CHECK(r2.validation_pass_rate >= 0.99);

    // obstruction case refuses construction
    CHECK_THROWS_AS(build_rj(rifs::coordinate(2, 1), 1.0, 1), std::invalid_argument);
}

TEST_CASE("rj_ray_bound_check: constant denominator is a fixed ray") {
    RationalInnerFn phi = rifs::product(2);
    Complex alpha = std::polar(1.0, 0.4);
    RjFunction r = build_rj(phi, alpha, 1);
    SampledClarkMeasure mu = assemble_polydisc(phi, alpha, 128, 61);
    RayBoundReport rep = rj_ray_bound_check(r, mu, {0.9, 0.99, 0.999});
    CHECK(rep.ratio_bound == doctest::Approx(1.0));
    CHECK(rep.ratio_bound_holds);
    CHECK(rep.l2_monotone);
    for (double d : rep.l2_distance) CHECK(d <= 1e-12);
    for (double s : rep.sup_ratio) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rj_ray_bound_check: monotone L2 convergence for the RIF at alpha = i") {
    RationalInnerFn phi = rifs::favorite_rif11();
    RjFunction r = build_rj(phi, I, 1);
    CHECK(r.denominator_degree == 1);
    SampledClarkMeasure mu = assemble_polydisc(phi, I, 256, 62);
    RayBoundReport rep = rj_ray_bound_check(r, mu, {0.9, 0.99, 0.999});
    CHECK(rep.ratio_bound_holds);
    CHECK(rep.l2_monotone);
    REQUIRE(rep.l2_distance.size() == 3);
    CHECK(rep.l2_distance[2] < 0.05 * rep.l2_distance[0]);
    // direct evaluation: the distance scales like (1 - rho), about 1.4e-3 here
    CHECK(rep.l2_distance[2] <= 2e-3);
    CHECK(!rep.bound_note.empty());

    // at alpha = 1 the denominator is constant and the rays are exact
    RjFunction r1 = build_rj(phi, 1.0, 1);
    SampledClarkMeasure mu1 = assemble_polydisc(phi, 1.0, 256, 63);
    RayBoundReport rep1 = rj_ray_bound_check(r1, mu1, {0.9, 0.99, 0.999});
    CHECK(rep1.l2_distance[2] <= 1e-3);

    RjFunction bad = r;
    bad.eps = 0.0;
    CHECK_THROWS_AS(rj_ray_bound_check(bad, mu, {0.9}), std::runtime_error);
}

TEST_CASE("lemma_lower_bound_test: frozen instances") {
    // p = w - 2, eps = 1/2: min |x-2| / |1-2| = 1 >= (1/4)
    LemmaLowerBound l1 = lemma_lower_bound_test(UniPoly::linear_root(2.0), 0.5, 1001);
    CHECK(l1.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l1.bound == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(l1.holds());

    // constants meet the bound with equality
    LemmaLowerBound l2 = lemma_lower_bound_test(UniPoly::constant(3.0), 0.5, 101);
    CHECK(l2.min_ratio == doctest::Approx(1.0));
    CHECK(l2.bound == doctest::Approx(1.0));
    CHECK(l2.holds());

    LemmaLowerBound l3 =
        lemma_lower_bound_test(UniPoly::from_roots({2.0, Complex(0.0, -2.0)}), 0.9, 2000);
    CHECK(l3.holds());

    // roots inside the hull are rejected with a witness, even off the boundary
    CHECK_THROWS_AS(lemma_lower_bound_test(UniPoly::linear_root(0.5), 0.9, 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(lemma_lower_bound_test(UniPoly::linear_root(-0.5), 0.5, 100),
                    std::invalid_argument);
}

TEST_CASE("lemma_lower_bound_test: random admissible instances hold (property)") {
    SplitMix64 rng(53);
    int done = 0;
    while (done < 100) {
        double eps = 0.1 + 0.8 * rng.uniform();
        int k = 1 + static_cast<int>(rng.next() % 5);
        std::vector<Complex> roots;
        while (static_cast<int>(roots.size()) < k) {
            Complex z(6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0);
            if (!in_hull(z, eps + 0.05)) roots.push_back(z);
        }
        LemmaLowerBound lb = lemma_lower_bound_test(UniPoly::from_roots(roots), eps, 2000);
        CHECK(lb.holds());
        ++done;
    }
}

TEST_CASE("gram_residual: exact fit vs orthogonal target") {
    // conj(z1) = z2/alpha on the support of mu_1 for z1 z2
    RationalInnerFn prod = rifs::product(2);
    SampledClarkMeasure mu = assemble_polydisc(prod, 1.0, 256, 71);
    GramSystem fit = gram_residual(mu, 1, 1);
    CHECK(fit.residual <= 1e-6);
    CHECK(fit.target_norm2 == doctest::Approx(1.0).epsilon(1e-10));

    // conj(z2) is orthogonal to every holomorphic monomial for phi = z1
    RationalInnerFn z1 = rifs::coordinate(2, 1);
    SplitMix64 rng(72);
    SampledClarkMeasure m2 = assemble_polydisc(z1, rng.unit_circle(), 256, 73);
    for (int N : {1, 3}) {
        GramSystem g = gram_residual(m2, 2, N);
        CHECK(std::abs(g.residual * g.residual - 1.0) <= 1e-3);
    }
}

TEST_CASE("gram_residual is nonincreasing in N, geometric for a Moebius target") {
    RationalInnerFn phi = rifs::favorite_rif11();
    SampledClarkMeasure mu = assemble_polydisc(phi, I, 256, 74);
    std::vector<double> res;
    double prev = std::numeric_limits<double>::infinity();
    for (int N = 1; N <= 6; ++N) {
        GramSystem g = gram_residual(mu, 1, N);
        CHECK(g.residual <= prev + 1e-12);
        CHECK(g.min_eigenvalue >= -1e-10 * std::max(g.max_eigenvalue, 1.0));
        prev = g.residual;
        res.push_back(g.residual);
    }
    // conj(zeta_1) restricts to a Moebius function with pole at distance
    // sqrt(2); the tail is (1/sqrt 2)^(N+1), about 0.0915 at N = 6
    CHECK(res[5] == doctest::Approx(std::pow(0.5, 3.5)).epsilon(0.1));

    // at alpha = 1 the fit z2 is exact at every N; the residual formula
    // bottoms out near sqrt(machine eps)
    SampledClarkMeasure mu1 = assemble_polydisc(phi, 1.0, 256, 76);
    CHECK(gram_residual(mu1, 1, 1).residual <= 1e-6);
}

TEST_CASE("dichotomy smoke test: verdicts match residual separation") {
    // not_dense: max residual over conjugate coordinates stays large
    RationalInnerFn z1 = rifs::coordinate(2, 1);
    SampledClarkMeasure m1 = assemble_polydisc(z1, 1.0, 256, 75);
    double r1 = std::max(gram_residual(m1, 1, 4).residual, gram_residual(m1, 2, 4).residual);
    CHECK(!obstruction_detect(z1, 1.0).dense);
    CHECK(r1 >= 0.1);

    // dense: both residuals collapse
    RationalInnerFn prod = rifs::product(2);
    SampledClarkMeasure m2 = assemble_polydisc(prod, 1.0, 256, 76);
    double r2 = std::max(gram_residual(m2, 1, 4).residual, gram_residual(m2, 2, 4).residual);
    CHECK(obstruction_detect(prod, 1.0).dense);
    CHECK(r2 <= 1e-3);
}

TEST_CASE("double cylinder: z1^2 triggers with two content roots") {
    RationalInnerFn phi = rifs::monomial_bidisc(2, 0);
    Complex alpha = std::polar(1.0, 0.6);
    ObstructionVerdict v = obstruction_detect(phi, alpha);
    CHECK(!v.dense);
    CHECK(v.per_variable[1].unimodular_roots.size() == 2);  // zeta_1 = +-sqrt(alpha)

    // conj(zeta_1) = zeta_1/alpha is an exact fit on the support, while
    // conj(zeta_2) stays orthogonal; the max-over-j dichotomy still holds
    SampledClarkMeasure mu = assemble_polydisc(phi, alpha, 256, 8);
    CHECK(gram_residual(mu, 1, 4).residual <= 1e-6);
    CHECK(std::abs(gram_residual(mu, 2, 4).residual - 1.0) <= 1e-3);
}

TEST_CASE("scalar invariance: rescaling p and q changes nothing") {
    const Complex c(2.7, -1.3);
    RationalInnerFn phi = rifs::favorite_rif11();
    RationalInnerFn scaled(phi.p() * c, phi.q() * c, DomainKind::polydisc);

    ObstructionVerdict va = obstruction_detect(phi, I);
    ObstructionVerdict vb = obstruction_detect(scaled, I);
    CHECK(va.dense == vb.dense);

    SampledClarkMeasure ma = assemble_polydisc(phi, I, 128, 81);
    SampledClarkMeasure mb = assemble_polydisc(scaled, I, 128, 81);
    REQUIRE(ma.fibers.size() == mb.fibers.size());
    for (std::size_t i = 0; i < ma.fibers.size(); ++i) {
        REQUIRE(ma.fibers[i].atoms.size() == mb.fibers[i].atoms.size());
        for (std::size_t k = 0; k < ma.fibers[i].atoms.size(); ++k) {
            CHECK(std::abs(ma.fibers[i].atoms[k].w - mb.fibers[i].atoms[k].w) <= 1e-12);
            CHECK(std::abs(ma.fibers[i].atoms[k].weight - mb.fibers[i].atoms[k].weight) <=
                  1e-12);
        }
    }
    CHECK(std::abs(gram_residual(ma, 1, 3).residual - gram_residual(mb, 1, 3).residual) <=
          1e-12);
}
