#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "walker4/curvature.hpp"
#include "walker4/metric.hpp"

using namespace walker4;

TEST_CASE("flat walker metric") {
    const WalkerMetric m = WalkerMetric::from_abc(parse("0"), parse("0"), parse("0"));
    const MetricAt at = m.at(Point4{0.3, -0.1, 2.0, 1.0});
    CHECK(at.det_g == 1.0);
    CHECK(at.g[0][2] == 1.0);
    CHECK(at.g[1][3] == 1.0);
    CHECK(at.g[0][0] == 0.0);
    CHECK(at.g[2][2] == 0.0);
    // g_inv = [[0,I],[I,0]]
    CHECK(at.g_inv[0][2] == 1.0);
    CHECK(at.g_inv[2][2] == 0.0);
}

TEST_CASE("determinant is one for any walker metric") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const WalkerMetric m = WalkerMetric::from_abc(parse(testsupport::random_poly(rng)),
                                                      parse(testsupport::random_poly(rng)),
                                                      parse(testsupport::random_poly(rng)));
        for (int k = 0; k < 10; ++k) {
            const Point4 p = testsupport::random_point(rng);
            const MetricAt at = m.at(p);
            CHECK(mat4_det(at.g) == doctest::Approx(1.0).epsilon(1e-12));
            // g * g_inv = I
            const Mat4 prod = mat4_mul(at.g, at.g_inv);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    CHECK(std::abs(prod[i][j] - (i == j ? 1.0 : 0.0)) < 1e-12);
            // upper-left block of the inverse is -W
            CHECK(at.g_inv[0][0] == doctest::Approx(-at.g[2][2]));
            CHECK(at.g_inv[0][1] == doctest::Approx(-at.g[2][3]));
            CHECK(at.g_inv[1][1] == doctest::Approx(-at.g[3][3]));
        }
    }
}

TEST_CASE("the distribution <du,dv> is totally null") {
    std::mt19937_64 rng(4);
    const WalkerMetric m = WalkerMetric::from_abc(parse("u^2 - x"), parse("sin(v)*y"),
                                                  parse("exp(x*y)"));
    for (int k = 0; k < 20; ++k) {
        const MetricAt at = m.at(testsupport::random_point(rng));
        CHECK(at.g[0][0] == 0.0);
        CHECK(at.g[0][1] == 0.0);
        CHECK(at.g[1][1] == 0.0);
    }
}

TEST_CASE("vanishing W at the origin for (u^2, v^2, 0)") {
    const WalkerMetric m = WalkerMetric::from_abc(parse("u^2"), parse("v^2"), parse("0"));
    const MetricAt at = m.at(Point4{});
    CHECK(at.g[2][2] == 0.0);
    CHECK(at.g[3][3] == 0.0);
    CHECK(at.g[2][3] == 0.0);
}

TEST_CASE("theta potential: derivative-extracting fields") {
    // theta = u^5: a = 0, c = 0, b = -40 u^3
    const WalkerMetric m = WalkerMetric::from_theta(parse("u^5"));
    for (double u : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
        const auto [a, b, c] = m.abc_values(Point4{u, 0.4, -0.2, 0.9});
        CHECK(a == doctest::Approx(0.0));
        CHECK(c == doctest::Approx(0.0));
        CHECK(b == doctest::Approx(-40.0 * u * u * u).epsilon(1e-13));
    }
    // jets of the fields agree with jets of theta two degrees up
    const Point4 p{0.5, -0.3, 0.1, 0.2};
    const WalkerFields f = m.fields(p, 3);
    const Jet th = eval_jet(parse("u^5"), p, 5);
    CHECK(f.b.partial(MultiIndex{1, 0, 0, 0}) ==
          doctest::Approx(-2.0 * th.partial(MultiIndex{3, 0, 0, 0})));
}

TEST_CASE("theta quadratic in u,v gives a constant W and flat curvature") {
    const WalkerMetric m =
        WalkerMetric::from_theta(parse("0.5*u^2 - 0.25*u*v + 1.5*v^2 + 3*u - v"));
    std::mt19937_64 rng(6);
    for (int k = 0; k < 5; ++k) {
        const Point4 p = testsupport::random_point(rng);
        const auto [a, b, c] = m.abc_values(p);
        CHECK(a == doctest::Approx(-6.0)); // -2 theta_vv
        CHECK(b == doctest::Approx(-2.0)); // -2 theta_uu
        CHECK(c == doctest::Approx(-0.5)); //  2 theta_uv
        const RiemannAt r = riemann_walker(m, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int kk = 0; kk < 4; ++kk)
                    for (int l = 0; l < 4; ++l) CHECK(std::abs(r.down[i][j][kk][l]) < 1e-14);
    }
}

TEST_CASE("product metric basics") {
    // Omega = r x + s y -> D = I, flat
    const ProductMetric flat = ProductMetric::from_omega(parse("u*x + v*y"));
    const Point4 p{0.4, -0.2, 0.3, 0.8};
    const auto d = flat.d_matrix(p);
    CHECK(d[0][0] == doctest::Approx(1.0));
    CHECK(d[0][1] == doctest::Approx(0.0));
    CHECK(d[1][0] == doctest::Approx(0.0));
    CHECK(d[1][1] == doctest::Approx(1.0));
    const MetricAt at = flat.at(p);
    CHECK(at.det_g == doctest::Approx(1.0));

    // Omega = r x + s y + r^2 k(x), k = x^3: D = [[1 + 2 r k', 0],[0,1]]
    const ProductMetric pm = ProductMetric::from_omega(parse("u*x + v*y + u^2*x^3"));
    const auto d2 = pm.d_matrix(p);
    CHECK(d2[0][0] == doctest::Approx(1.0 + 2.0 * p.u * 3.0 * p.x * p.x));
    CHECK(d2[0][1] == doctest::Approx(0.0));
    CHECK(d2[1][0] == doctest::Approx(0.0));
    CHECK(d2[1][1] == doctest::Approx(1.0));
    CHECK(pm.det_d(p) == doctest::Approx(d2[0][0]));
}

TEST_CASE("det g equals det D squared") {
    std::mt19937_64 rng(8);
    const ProductMetric pm = ProductMetric::from_omega(
        parse("u*x + v*y + 0.3*u^2*x + 0.2*u*v*sin(y) + 0.1*v^2*x*y"));
    for (int k = 0; k < 30; ++k) {
        const Point4 p = testsupport::random_point(rng, 0.5);
        const double dd = pm.det_d(p);
        if (std::abs(dd) < 0.05) continue;
        const MetricAt at = pm.at(p);
        CHECK(at.det_g == doctest::Approx(dd * dd).epsilon(1e-11));
        CHECK(mat4_det(at.g) == doctest::Approx(dd * dd).epsilon(1e-11));
    }
}

TEST_CASE("product metric rejects singular D") {
    // D_11 = 1 + 2u vanishes at u = -1/2
    const ProductMetric pm = ProductMetric::from_omega(parse("u*x + v*y + u^2*x"));
    CHECK_THROWS(pm.at(Point4{-0.5, 0, 0, 0}));
}

TEST_CASE("walker symmetry: swapped metric mirrors the geometry") {
    std::mt19937_64 rng(10);
    const WalkerMetric m = WalkerMetric::from_abc(parse("u^2 + x*y"), parse("v*x"),
                                                  parse("u*v - y^2"));
    const WalkerMetric sw = m.swapped();
    for (int k = 0; k < 20; ++k) {
        const Point4 p = testsupport::random_point(rng);
        const Point4 q{p.v, p.u, p.y, p.x};
        const auto [a, b, c] = m.abc_values(p);
        const auto [a2, b2, c2] = sw.abc_values(q);
        CHECK(a2 == doctest::Approx(b));
        CHECK(b2 == doctest::Approx(a));
        CHECK(c2 == doctest::Approx(c));
        // the index-permuted metric matches
        const MetricAt at = m.at(p);
        const MetricAt at2 = sw.at(q);
        const int perm[4] = {1, 0, 3, 2};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(at2.g[perm[i]][perm[j]] == doctest::Approx(at.g[i][j]));
    }
}

TEST_CASE("scalar curvature is invariant under the interchange") {
    std::mt19937_64 rng(12);
    const WalkerMetric m = WalkerMetric::from_abc(parse(testsupport::random_poly(rng)),
                                                  parse(testsupport::random_poly(rng)),
                                                  parse(testsupport::random_poly(rng)));
    const WalkerMetric sw = m.swapped();
    for (int k = 0; k < 10; ++k) {
        const Point4 p = testsupport::random_point(rng);
        const Point4 q{p.v, p.u, p.y, p.x};
        const CurvatureSummary c1 = curvature_summary(m, p);
        const CurvatureSummary c2 = curvature_summary(sw, q);
        CHECK(c2.S == doctest::Approx(c1.S).epsilon(1e-10));
    }
}
