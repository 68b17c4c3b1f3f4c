#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "walker4/spinor.hpp"

using namespace walker4;

namespace {

WalkerMetric random_metric(std::mt19937_64& rng) {
    return WalkerMetric::from_abc(parse(testsupport::random_poly(rng)),
                                  parse(testsupport::random_poly(rng)),
                                  parse(testsupport::random_poly(rng)));
}

double max44(const double t[4][4][4][4]) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s = std::max(s, std::abs(t[i][j][k][l]));
    return s;
}

} // namespace

TEST_CASE("vector-spinor dictionary: norm and nullity") {
    std::mt19937_64 rng(40);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int k = 0; k < 50; ++k) {
        const Vec4 v{d(rng), d(rng), d(rng), d(rng)};
        const auto m = a21_matrix(v);
        const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        const double norm = v[0] * v[0] + v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
        CHECK(2 * det == doctest::Approx(norm).epsilon(1e-12));
    }
    // null vector <=> singular matrix (decomposable spinor)
    const Vec4 null{1, 0, 1, 0};
    const auto m = a21_matrix(null);
    CHECK(m[0][0] * m[1][1] - m[0][1] * m[1][0] == doctest::Approx(0.0));
}

TEST_CASE("tetrad pairings at random points") {
    std::mt19937_64 rng(41);
    const WalkerMetric m = random_metric(rng);
    for (int k = 0; k < 20; ++k) {
        const Point4 p = testsupport::random_point(rng);
        const NullTetrad t = walker_tetrad(m, p);
        const MetricAt at = m.at(p);
        auto dot = [&](const Vec4& x, const Vec4& y) {
            double s = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s += at.g[i][j] * x[i] * y[j];
            return s;
        };
        CHECK(dot(t.l_up, t.n_up) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(dot(t.m_up, t.mt_up) == doctest::Approx(-1.0).epsilon(1e-13));
        for (const Vec4& v : {t.l_up, t.n_up, t.m_up, t.mt_up})
            CHECK(std::abs(dot(v, v)) < 1e-13);
        CHECK(std::abs(dot(t.l_up, t.m_up)) < 1e-13);
        CHECK(std::abs(dot(t.l_up, t.mt_up)) < 1e-13);
        CHECK(std::abs(dot(t.n_up, t.m_up)) < 1e-13);
        CHECK(std::abs(dot(t.n_up, t.mt_up)) < 1e-13);
        // covector/vector consistency: down = g(up, .)
        for (int i = 0; i < 4; ++i) {
            double s = 0;
            for (int j = 0; j < 4; ++j) s += at.g[i][j] * t.n_up[j];
            CHECK(s == doctest::Approx(t.n_down[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("flat tetrad reduces to the standard Witt frame") {
    const WalkerMetric m = WalkerMetric::from_abc(parse("0"), parse("0"), parse("0"));
    const NullTetrad t = walker_tetrad(m, Point4{});
    CHECK(t.l_up == Vec4{1, 0, 0, 0});
    CHECK(t.mt_up == Vec4{0, 1, 0, 0});
    CHECK(t.n_up == Vec4{0, 0, 1, 0});
    CHECK(t.m_up == Vec4{0, 0, 0, -1});
}

TEST_CASE("bivector bases: scalar products, J and K") {
    std::mt19937_64 rng(42);
    const WalkerMetric m = random_metric(rng);
    for (int k = 0; k < 10; ++k) {
        const Point4 p = testsupport::random_point(rng);
        const MetricAt at = m.at(p);
        const BivectorBases bb = bivector_bases(m, p);

        // S+- have the diag(+,-,-) pattern under the induced product
        const double want[3] = {1, -1, -1};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(biv_inner(bb.S_plus[i], bb.S_plus[j], at.g) ==
                      doctest::Approx(i == j ? want[i] : 0.0).epsilon(1e-11));
                CHECK(biv_inner(bb.S_minus[i], bb.S_minus[j], at.g) ==
                      doctest::Approx(i == j ? want[i] : 0.0).epsilon(1e-11));
                CHECK(biv_inner(bb.S_plus[i], bb.S_minus[j], at.g) ==
                      doctest::Approx(0.0).epsilon(1e-11));
            }

        // J expresses +Z in the s+ basis; K the -Z in s-.
        for (int j = 0; j < 3; ++j) {
            Biv acc{};
            for (int i = 0; i < 3; ++i)
                acc = biv_add(acc, biv_scale(bb.s_plus[i], bb.J[i][j]));
            CHECK(biv_max_abs(biv_sub(acc, bb.Z_plus[j])) < 1e-11);
            Biv accm{};
            for (int i = 0; i < 3; ++i)
                accm = biv_add(accm, biv_scale(bb.s_minus[i], bb.K[i][j]));
            CHECK(biv_max_abs(biv_sub(accm, bb.Z_minus[j])) < 1e-11);
        }
        // J J^-1 = I, K K^-1 = I
        const Mat3 jj = mat3_mul(bb.J, bb.J_inv);
        const Mat3 kk = mat3_mul(bb.K, bb.K_inv);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(jj[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
                CHECK(kk[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            }
        // -Z_1 = -s-_1/sqrt2
        CHECK(biv_max_abs(biv_sub(bb.Z_minus[0],
                                  biv_scale(bb.s_minus[0], -1.0 / std::sqrt(2.0)))) < 1e-11);
    }
}

TEST_CASE("tetrad-frame basis coordinate forms") {
    std::mt19937_64 rng(52);
    const WalkerMetric m = random_metric(rng);
    for (int k = 0; k < 5; ++k) {
        const Point4 p = testsupport::random_point(rng);
        const auto [a, b, c] = m.abc_values(p);
        const BivectorBases bb = bivector_bases(m, p);
        const double r = 1.0 / std::sqrt(2.0);
        const Vec4 d1{1, 0, 0, 0}, d2{0, 1, 0, 0}, d3{0, 0, 1, 0}, d4{0, 0, 0, 1};

        // S+2 = -(1/sqrt2)(d1^d3 + d2^d4)
        Biv want = biv_scale(biv_add(wedge(d1, d3), wedge(d2, d4)), -r);
        CHECK(biv_max_abs(biv_sub(bb.S_plus[1], want)) < 1e-12);

        // S+1 = (1/(2 sqrt2)) ((4+ab-c^2)/2 d1^d2 + c d1^d3 - a d1^d4
        //                      + b d2^d3 - c d2^d4 + 2 d3^d4)
        Biv s1 = biv_scale(wedge(d1, d2), (4 + a * b - c * c) / 2.0);
        s1 = biv_add(s1, biv_scale(wedge(d1, d3), c));
        s1 = biv_add(s1, biv_scale(wedge(d1, d4), -a));
        s1 = biv_add(s1, biv_scale(wedge(d2, d3), b));
        s1 = biv_add(s1, biv_scale(wedge(d2, d4), -c));
        s1 = biv_add(s1, biv_scale(wedge(d3, d4), 2.0));
        s1 = biv_scale(s1, 1.0 / (2.0 * std::sqrt(2.0)));
        CHECK(biv_max_abs(biv_sub(bb.S_plus[0], s1)) < 1e-12);

        // S-1 = (1/sqrt2)(-(a+b)/2 d1^d2 + d1^d4 - d2^d3)
        Biv sm1 = biv_scale(wedge(d1, d2), -(a + b) / 2.0);
        sm1 = biv_add(sm1, wedge(d1, d4));
        sm1 = biv_sub(sm1, wedge(d2, d3));
        sm1 = biv_scale(sm1, r);
        CHECK(biv_max_abs(biv_sub(bb.S_minus[0], sm1)) < 1e-12);
    }
}

TEST_CASE("J at c = 0 matches its closed-form specialization") {
    const WalkerMetric m = WalkerMetric::from_abc(parse("u^2"), parse("v^2"), parse("0"));
    const BivectorBases bb = bivector_bases(m, Point4{0.3, 0.4, 0.5, 0.6});
    const double f = 1.0 / (4.0 * std::sqrt(2.0));
    const double want[3][3] = {{5 * f, 3 * f, 0}, {0, 0, 4 * f}, {-3 * f, -5 * f, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(bb.J[i][j] == doctest::Approx(want[i][j]));
}

TEST_CASE("spinor curvature closed form: flat") {
    const WalkerMetric m = WalkerMetric::from_abc(parse("0"), parse("0"), parse("0"));
    const SpinorCurvature sc = spinor_curvature(m, Point4{1, 2, 3, 4});
    for (int k = 0; k < 5; ++k) {
        CHECK(sc.psi[k] == 0.0);
        CHECK(sc.psit[k] == 0.0);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(sc.phi[i][j] == 0.0);
    CHECK(sc.lambda == 0.0);
}

TEST_CASE("conjugation oracle equals the closed forms") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const WalkerMetric m = random_metric(rng);
        for (int k = 0; k < 10; ++k) {
            const Point4 p = testsupport::random_point(rng);
            const SpinorCurvature sc = spinor_curvature(m, p);
            const SpinorBlocks ob = spinor_curvature_oracle(m, p);
            double scale = 1e-6;
            for (int i = 0; i < 5; ++i)
                scale = std::max({scale, std::abs(sc.psi[i]), std::abs(sc.psit[i])});
            for (int i = 0; i < 5; ++i) {
                CHECK(std::abs(ob.psit[i] - sc.psit[i]) <= 1e-10 * scale);
                CHECK(std::abs(ob.psi[i] - sc.psi[i]) <= 1e-10 * scale);
            }
            CHECK(ob.sym_defect <= 1e-10 * scale);
        }
    }
}

TEST_CASE("the tabulated SD spinor-operator matrix matches the conjugation") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 5; ++trial) {
        const WalkerMetric m = random_metric(rng);
        const Point4 p = testsupport::random_point(rng);
        const CurvatureSummary cs = curvature_summary(m, p);
        const SpinorBlocks ob = spinor_curvature_oracle(m, p);
        const double c = cs.abc[2], S = cs.S, A = cs.A, B = cs.B;
        const double f = -1.0 / 48.0;
        const double lit[3][3] = {
            {f * (A - 6 * B * c - 3 * S * (c * c + 1)),
             f * (-A + 6 * B * c + S * (3 * c * c - 1)), f * (6 * (B + S * c))},
            {f * (A - 6 * B * c - S * (3 * c * c - 1)),
             f * (-A + 6 * B * c + S * (3 * c * c - 5)), f * (6 * (B + S * c))},
            {f * (-6 * (B + S * c)), f * (6 * (B + S * c)), f * (8 * S)}};
        const double scale = mat3_max_abs(ob.Cp) + 1e-6;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(ob.Cp[i][j] - lit[i][j]) <= 1e-10 * scale);
    }
}

TEST_CASE("the tabulated ASD spinor-operator matrix matches the conjugation") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 5; ++trial) {
        const WalkerMetric m = random_metric(rng);
        const Point4 p = testsupport::random_point(rng);
        const CurvatureSummary cs = curvature_summary(m, p);
        const SpinorBlocks ob = spinor_curvature_oracle(m, p);
        const double f = 1.0 / 12.0;
        const double P = cs.P, Q = cs.Q, T = cs.T, X = cs.X, Y = cs.Y;
        const double lit[3][3] = {{f * (P + 3 * Q), f * (-3 * Y), f * (3 * (T + X))},
                                  {f * (3 * Y), f * (P - 3 * Q), f * (3 * (T - X))},
                                  {f * (-3 * (T + X)), f * (3 * (T - X)), f * (-2 * P)}};
        const double scale = mat3_max_abs(ob.Cm) + 1e-6;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(ob.Cm[i][j] - lit[i][j]) <= 1e-10 * scale);
    }
}

TEST_CASE("spinor components against the generic oracle") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 5; ++trial) {
        const WalkerMetric m = random_metric(rng);
        for (int k = 0; k < 5; ++k) {
            const Point4 p = testsupport::random_point(rng);
            const MetricAt at = m.at(p);
            const auto [a, b, c] = m.abc_values(p);
            const RiemannAt rg = riemann_generic(m.entry_jets(p, 3), at);
            const WeylBlocks wb = project_blocks(rg, at, walker_psi_on_frame(a, b, c));
            const SpinorBlocks gen = spinor_from_blocks(wb.Wp, wb.Wm, c);
            const SpinorCurvature sc = spinor_curvature(m, p);
            double scale = 1e-6;
            for (int i = 0; i < 5; ++i)
                scale = std::max({scale, std::abs(sc.psi[i]), std::abs(sc.psit[i])});
            for (int i = 0; i < 5; ++i) {
                CHECK(std::abs(gen.psit[i] - sc.psit[i]) <= 1e-9 * scale);
                CHECK(std::abs(gen.psi[i] - sc.psi[i]) <= 1e-9 * scale);
            }
            CHECK(std::abs(gen.psit[0]) <= 1e-9 * scale);
            CHECK(std::abs(gen.psit[1]) <= 1e-9 * scale);
            CHECK(std::abs(gen.psit[2] + 2.0 * sc.lambda) <= 1e-9 * scale); // = S/12
        }
    }
}

TEST_CASE("phi from the oracle Einstein endomorphism") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 5; ++trial) {
        const WalkerMetric m = random_metric(rng);
        for (int k = 0; k < 5; ++k) {
            const Point4 p = testsupport::random_point(rng);
            const MetricAt at = m.at(p);
            const RiemannAt rg = riemann_generic(m.entry_jets(p, 3), at);
            double ricci[4][4];
            ricci_from_riemann(rg, ricci);
            const double S = scalar_from_ricci(ricci, at.g_inv);
            double E[4][4];
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = 0;
                    for (int l = 0; l < 4; ++l) s += at.g_inv[i][l] * ricci[l][j];
                    E[i][j] = s - (i == j ? S / 4 : 0);
                }
            double phi[3][3];
            phi_from_e_tetrad(E, walker_tetrad(m, p), phi);
            const SpinorCurvature sc = spinor_curvature(m, p);
            double scale = 1e-6;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(sc.phi[i][j]));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    CHECK(std::abs(phi[i][j] - sc.phi[i][j]) <= 1e-9 * scale);
            // principal-spinor pattern
            CHECK(std::abs(phi[0][0]) <= 1e-10 * scale);
            CHECK(std::abs(phi[1][0]) <= 1e-10 * scale);
            CHECK(std::abs(phi[2][0]) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("ricci spinor split reassembles the phi table") {
    std::mt19937_64 rng(48);
    const WalkerMetric m = random_metric(rng);
    for (int k = 0; k < 10; ++k) {
        const Point4 p = testsupport::random_point(rng);
        const CurvatureSummary cs = curvature_summary(m, p);
        const SpinorCurvature sc = spinor_curvature(m, p);
        const double a = cs.abc[0], b = cs.abc[1], c = cs.abc[2];
        // A_AB and B_AB components in the alpha/beta basis.
        const double combo = 2 * c * cs.theta + 2 * cs.eta + b * cs.nu - a * cs.mu;
        const double Aab[2][2] = {{cs.Upsilon / 2, -combo / 4}, {-combo / 4, cs.zeta / 2}};
        const double Bab[2][2] = {{cs.mu, -cs.theta}, {-cs.theta, -cs.nu}};
        // Phi_{AB A'B'} = A_AB pi_A' pi_B' + B_AB pi_(A' xi_B'); in dyad
        // components pi_lo = (0,1), xi_lo = (-1,0).
        const double pi_lo[2] = {0, 1}, xi_lo[2] = {-1, 0};
        double phi[3][3] = {};
        for (int A = 0; A < 2; ++A)
            for (int B = 0; B < 2; ++B)
                for (int Ap = 0; Ap < 2; ++Ap)
                    for (int Bp = 0; Bp < 2; ++Bp) {
                        const double val =
                            Aab[A][B] * pi_lo[Ap] * pi_lo[Bp] +
                            Bab[A][B] * 0.5 *
                                (pi_lo[Ap] * xi_lo[Bp] + xi_lo[Ap] * pi_lo[Bp]);
                        phi[A + B][Ap + Bp] = val;
                    }
        double scale = 1e-6;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(sc.phi[i][j]));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(phi[i][j] - sc.phi[i][j]) <= 1e-10 * scale);
    }
}

TEST_CASE("wps residual") {
    std::mt19937_64 rng(49);
    const WalkerMetric m = random_metric(rng);
    for (int k = 0; k < 10; ++k) {
        const SpinorCurvature sc = spinor_curvature(m, testsupport::random_point(rng));
        const WpsResidual r = wps_residual(sc);
        double scale = 1e-6;
        for (int i = 0; i < 5; ++i) scale = std::max(scale, std::abs(sc.psit[i]));
        CHECK(std::abs(r.r_pipi) <= 1e-10 * scale);
        CHECK(std::abs(r.r_pixi) <= 1e-10 * scale);
        CHECK(std::abs(r.r_xixi) <= 1e-10 * scale);
    }
    // a hand-built violation
    SpinorCurvature bad;
    bad.psit[0] = 1.0;
    CHECK(wps_residual(bad).r_pipi == doctest::Approx(1.0));
}

TEST_CASE("reconstruction: zero spinors, pure lambda, and round trip") {
    const WalkerMetric flat = WalkerMetric::from_abc(parse("0"), parse("0"), parse("0"));
    SpinorCurvature zero;
    const RiemannAt rz = reconstruct_riemann(zero, flat, Point4{});
    CHECK(max44(rz.down) == doctest::Approx(0.0));

    // Lambda-only input: R_abcd = 2 Lambda (g_ac g_bd - g_ad g_bc)
    SpinorCurvature lam;
    lam.lambda = 1.0;
    const Point4 p0{};
    const RiemannAt rl = reconstruct_riemann(lam, flat, p0);
    const MetricAt at0 = flat.at(p0);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    const double want = 2.0 * (at0.g[a][c] * at0.g[b][d] -
                                               at0.g[a][d] * at0.g[b][c]);
                    CHECK(rl.down[a][b][c][d] == doctest::Approx(want).epsilon(1e-12));
                }

    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 5; ++trial) {
        const WalkerMetric m = random_metric(rng);
        for (int k = 0; k < 4; ++k) {
            const Point4 p = testsupport::random_point(rng);
            const SpinorCurvature sc = spinor_curvature(m, p);
            const RiemannAt rr = reconstruct_riemann(sc, m, p);
            const RiemannAt rw = riemann_walker(m, p);
            const double scale = max44(rw.down) + 1e-3;
            const bool nontrivial = max44(rr.down) > 0.0 || max44(rw.down) < 1e-12;
            CHECK(nontrivial);
            double diff = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int kk = 0; kk < 4; ++kk)
                        for (int l = 0; l < 4; ++l)
                            diff = std::max(diff,
                                            std::abs(rr.down[i][j][kk][l] - rw.down[i][j][kk][l]));
            CHECK(diff <= 1e-8 * scale);
        }
    }
}
