#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "walker4/classify.hpp"
#include "walker4/curvature.hpp"
#include "walker4/spinor.hpp"

using namespace walker4;

namespace {

Mat3 wp_from_sab(double S, double A, double B) {
    return {{{-A / 12, -3 * B / 12, -(A + S) / 12},
             {3 * B / 12, -2 * S / 12, 3 * B / 12},
             {(A + S) / 12, 3 * B / 12, (A + 2 * S) / 12}}};
}

} // namespace

TEST_CASE("case table") {
    CHECK(classify_weyl_plus(0, 0, 0, 1.0).kase == WeylPlusCase::FlatSD);
    // case i: S != 0, A = -(S^2+3B^2)/S
    {
        const double S = 3, B = 1, A = -(S * S + 3 * B * B) / S;
        const auto cls = classify_weyl_plus(S, A, B, 1.0);
        CHECK(cls.kase == WeylPlusCase::Case_i_22Ia);
        CHECK(cls.eigenvalues[0] == doctest::Approx(-0.5));
    }
    CHECK(classify_weyl_plus(3, 1, 1, 1.0).kase == WeylPlusCase::Case_ii_double);
    CHECK(classify_weyl_plus(0, 5, 0, 1.0).kase == WeylPlusCase::Case_iii_4II);
    CHECK(classify_weyl_plus(0, 2, 1.5, 1.0).kase == WeylPlusCase::Case_iv_31III);
}

TEST_CASE("jcf verification on assembled matrices") {
    // flat
    {
        const auto cls = classify_weyl_plus(0, 0, 0, 1.0);
        const auto rep = verify_jcf(wp_from_sab(0, 0, 0), cls);
        CHECK(rep.rank_at_s12 == 0);
        CHECK(rep.consistent);
    }
    // case i
    {
        const double S = 3, B = 1, A = -(S * S + 3 * B * B) / S;
        const auto cls = classify_weyl_plus(S, A, B, 1.0);
        const auto rep = verify_jcf(wp_from_sab(S, A, B), cls);
        CHECK(rep.rank_at_minus_s6 == 2);
        CHECK(rep.rank_at_s12 == 1);
        CHECK(rep.diagonalizable_measured);
        CHECK(rep.consistent);
    }
    // case ii: rank(W - S/12) = 2, geometric multiplicity 1
    {
        const auto cls = classify_weyl_plus(12, 0, 0, 1.0);
        const auto rep = verify_jcf(wp_from_sab(12, 0, 0), cls);
        CHECK(rep.rank_at_s12 == 2);
        CHECK_FALSE(rep.diagonalizable_measured);
        CHECK(rep.consistent);
    }
    // case iii: nilpotent with geometric multiplicity 2
    {
        const auto cls = classify_weyl_plus(0, 5, 0, 1.0);
        const auto rep = verify_jcf(wp_from_sab(0, 5, 0), cls);
        CHECK(rep.rank_at_s12 == 1);
        CHECK(rep.consistent);
    }
    // case iv: J3(0), geometric multiplicity 1
    {
        const auto cls = classify_weyl_plus(0, 2, 1.5, 1.0);
        const auto rep = verify_jcf(wp_from_sab(0, 2, 1.5), cls);
        CHECK(rep.rank_at_s12 == 2);
        CHECK(rep.consistent);
        // W+^3 = 0 but W+^2 != 0
        const Mat3 w = wp_from_sab(0, 2, 1.5);
        const Mat3 w2 = mat3_mul(w, w);
        const Mat3 w3 = mat3_mul(w2, w);
        CHECK(mat3_max_abs(w2) > 1e-6);
        CHECK(mat3_max_abs(w3) < 1e-12);
    }
}

TEST_CASE("case iii from an actual theta metric") {
    // theta = u^2 v^2: S = 0, B = 0, A = 12 box(P) nonzero away from axes
    const Expr theta = parse("u^2*v^2");
    const WalkerMetric m = WalkerMetric::from_theta(theta);
    const Point4 p{0.7, 0.5, 0.3, -0.2};
    const CurvatureSummary cs = curvature_summary(m, p);
    CHECK(std::abs(cs.S) < 1e-12);
    CHECK(std::abs(cs.B) < 1e-12);
    CHECK(std::abs(cs.A) > 1.0);
    const double scale = mat3_max_abs(cs.Wp) + std::abs(cs.S) + 1e-30;
    const auto cls = classify_weyl_plus(cs.S, cs.A, cs.B, scale);
    CHECK(cls.kase == WeylPlusCase::Case_iii_4II);
    CHECK(verify_jcf(cs.Wp, cls).consistent);
}

TEST_CASE("case iv from an actual walker metric") {
    // (a,b,c) = (0,0,ux): S = 0, B = -2
    const WalkerMetric m = WalkerMetric::from_abc(parse("0"), parse("0"), parse("u*x"));
    const Point4 p{0.4, 0.1, 0.2, 0.3};
    const CurvatureSummary cs = curvature_summary(m, p);
    CHECK(cs.S == doctest::Approx(0.0));
    CHECK(cs.B == doctest::Approx(-2.0));
    const double scale = mat3_max_abs(cs.Wp) + std::abs(cs.S) + 1e-30;
    const auto cls = classify_weyl_plus(cs.S, cs.A, cs.B, scale);
    CHECK(cls.kase == WeylPlusCase::Case_iv_31III);
    CHECK(verify_jcf(cs.Wp, cls).consistent);
}

TEST_CASE("case i from a scalar-curvature metric") {
    // a = u^2, b = c = 0 has S = 2, B = 0, A = -S: discriminant zero.
    const WalkerMetric m = WalkerMetric::from_abc(parse("u^2"), parse("0"), parse("0"));
    const Point4 p{0.3, -0.6, 0.2, 0.5};
    const CurvatureSummary cs = curvature_summary(m, p);
    CHECK(cs.S == doctest::Approx(2.0));
    CHECK(cs.B == doctest::Approx(0.0));
    CHECK(cs.A == doctest::Approx(-2.0));
    const double scale = mat3_max_abs(cs.Wp) + std::abs(cs.S);
    const auto cls = classify_weyl_plus(cs.S, cs.A, cs.B, scale);
    CHECK(cls.kase == WeylPlusCase::Case_i_22Ia);
    CHECK(verify_jcf(cs.Wp, cls).consistent);
}

TEST_CASE("random metrics: classification and measured jordan data agree") {
    std::mt19937_64 rng(60);
    int nontrivial = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const WalkerMetric m = WalkerMetric::from_abc(parse(testsupport::random_poly(rng)),
                                                      parse(testsupport::random_poly(rng)),
                                                      parse(testsupport::random_poly(rng)));
        const Point4 p = testsupport::random_point(rng);
        const CurvatureSummary cs = curvature_summary(m, p);
        const double scale = mat3_max_abs(cs.Wp) + std::abs(cs.S) + 1e-30;
        const auto cls = classify_weyl_plus(cs.S, cs.A, cs.B, scale);
        if (cls.marginal) continue; // boundary cases are flagged, not forced
        const auto rep = verify_jcf(cs.Wp, cls);
        CHECK(rep.consistent);
        if (cls.kase != WeylPlusCase::FlatSD) ++nontrivial;
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("boundary values are flagged marginal, not force-classified") {
    // |S| right at the threshold band
    const auto near_flat = classify_weyl_plus(1.5e-8, 0, 0, 1.0, 1e-8);
    CHECK(near_flat.marginal);
    const auto far_ii = classify_weyl_plus(3.0, 1.0, 1.0, 1.0, 1e-8);
    CHECK_FALSE(far_ii.marginal);
    // discriminant close to the case i/ii boundary
    const double S = 2.0, B = 1.0;
    const double A = -(S * S + 3 * B * B) / S + 1e-8;
    CHECK(classify_weyl_plus(S, A, B, 1.0, 1e-8).marginal);
}

TEST_CASE("asd root patterns") {
    CHECK(classify_weyl_minus({0, 0, 0, 0, 0}).label == "zero");
    CHECK(classify_weyl_minus({0, 0, 0, 0, 1}).label == "{4}");       // z^4
    CHECK(classify_weyl_minus({-120.0, 0, 0, 0, 0}).label == "{4}");  // constant: all at infinity
    // (z-1)(z-2)(z-3)(z-4) = 24 - 50z + 35z^2 - 10z^3 + z^4
    CHECK(classify_weyl_minus({24, -50.0 / 4, 35.0 / 6, -10.0 / 4, 1}).label == "{1111}");
    // (z^2+1)(z^2+4) = 4 + 5 z^2 + z^4: two conjugate pairs
    CHECK(classify_weyl_minus({4, 0, 5.0 / 6, 0, 1}).label == "{11̄11̄}");
    // (z-1)^2 (z-3)^2 = 9 - 24 z + 22 z^2 - 8 z^3 + z^4
    CHECK(classify_weyl_minus({9, -6, 22.0 / 6, -2, 1}).label == "{22}");
    // (z-2)^3 (z-5) = -40 + 84 z - 66 z^2 + 11 z^3 ... compute: (z-2)^3 = z^3-6z^2+12z-8;
    // times (z-5): z^4 - 11 z^3 + 42 z^2 - 68 z + 40
    CHECK(classify_weyl_minus({40, -17, 7, -11.0 / 4, 1}).label == "{31}");
}

TEST_CASE("theta = u^5 gives the {4} pattern away from u = 0") {
    const WalkerMetric m = WalkerMetric::from_theta(parse("u^5"));
    const SpinorCurvature sc = spinor_curvature(m, Point4{0.5, 0, 0, 0});
    CHECK(sc.psi[0] == doctest::Approx(-60.0)); // -120 u at u = 1/2
    for (int k = 1; k < 5; ++k) CHECK(sc.psi[k] == doctest::Approx(0.0));
    const RootPattern rp = classify_weyl_minus(sc.psi);
    CHECK(rp.label == "{4}");
    CHECK(rp.roots_at_infinity == 4);
}
