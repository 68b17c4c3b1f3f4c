#include "walker4/heavenly.hpp"

#include <algorithm>
#include <cmath>

#include "walker4/bivector.hpp"
#include "walker4/spinor.hpp"

namespace walker4 {

namespace {

const MultiIndex E1{1, 0, 0, 0}, E2{0, 1, 0, 0}, E3{0, 0, 1, 0}, E4{0, 0, 0, 1};

// nabla_k of a bivector field W^{ij} given the value, the coordinate
// derivative dW^{ij} = partial_k W^{ij}, and Christoffels at the point.
Biv covariant_biv_derivative(const Biv& w, const Biv& dw, const Christoffels& ch, int k) {
    Biv out = dw;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int m = 0; m < 4; ++m)
                s += ch.G[i][k][m] * w.m[m][j] + ch.G[j][k][m] * w.m[i][m];
            out.m[i][j] += s;
        }
    return out;
}

// Wave operator on a degree>=2 jet of f, with field jets of degree>=1.
double box_of_jet(const Jet& f, const WalkerFields& wf) {
    const double a = wf.a.value(), b = wf.b.value(), c = wf.c.value();
    const double a1 = wf.a.partial(E1), c2 = wf.c.partial(E2);
    const double b2 = wf.b.partial(E2), c1 = wf.c.partial(E1);
    const double f11 = f.partial(MultiIndex{2, 0, 0, 0});
    const double f12 = f.partial(MultiIndex{1, 1, 0, 0});
    const double f22 = f.partial(MultiIndex{0, 2, 0, 0});
    const double f13 = f.partial(MultiIndex{1, 0, 1, 0});
    const double f24 = f.partial(MultiIndex{0, 1, 0, 1});
    const double f1 = f.partial(E1), f2 = f.partial(E2);
    return -a * f11 - 2 * c * f12 - b * f22 + 2 * f13 + 2 * f24 - (a1 + c2) * f1 -
           (b2 + c1) * f2;
}

} // namespace

LsrResidual lsr_parallel_residual(const WalkerMetric& m, const Point4& p) {
    const WalkerFields wf = m.fields(p, 1);
    LsrResidual r;
    r.r1 = wf.a.partial(E1) + wf.c.partial(E2);
    r.r2 = wf.b.partial(E2) + wf.c.partial(E1);

    // Cross-evaluate nabla_3 and nabla_4 of the spanning bivector of the
    // null distribution.
    const Christoffels ch = christoffels_walker(m, p);
    const Vec4 e_u{1, 0, 0, 0}, e_v{0, 1, 0, 0};
    const Biv w = wedge(e_u, e_v);
    const Biv zero{};
    const Biv n3 = covariant_biv_derivative(w, zero, ch, 2);
    const Biv n4 = covariant_biv_derivative(w, zero, ch, 3);
    r.factor3 = n3.m[0][1];
    r.factor4 = n4.m[0][1];
    r.offray3 = biv_max_abs(biv_sub(n3, biv_scale(w, r.factor3)));
    r.offray4 = biv_max_abs(biv_sub(n4, biv_scale(w, r.factor4)));
    return r;
}

double box_scalar(const WalkerMetric& m, const Expr& f, const Point4& p) {
    return box_of_jet(eval_jet(f, p, 2), m.fields(p, 1));
}

HeavenlyReport theta_analysis(const Expr& theta, const Point4& p, double tol) {
    HeavenlyReport rep;
    const Jet th = eval_jet(theta, p, 6);

    // Parallel-spinor residuals of the potential metric: identically zero
    // by mixed-partial symmetry; evaluated anyway.
    const Jet a = -2.0 * th.derivative(2).derivative(2); // degree 4
    const Jet b = -2.0 * th.derivative(1).derivative(1);
    const Jet c = 2.0 * th.derivative(1).derivative(2);
    rep.lsr_r1 = a.partial(E1) + c.partial(E2);
    rep.lsr_r2 = b.partial(E2) + c.partial(E1);

    // P = theta_13 + theta_24 + theta_11 theta_22 - theta_12^2, degree 4.
    const Jet t11 = th.derivative(1).derivative(1);
    const Jet t22 = th.derivative(2).derivative(2);
    const Jet t12 = th.derivative(1).derivative(2);
    const Jet t13 = th.derivative(1).derivative(3);
    const Jet t24 = th.derivative(2).derivative(4);
    const Jet P = t13 + t24 + t11 * t22 - t12 * t12;
    rep.P = P.value();
    rep.second_heavenly_residual = rep.P;

    WalkerFields wf{a.truncated(1), b.truncated(1), c.truncated(1)};
    rep.A_via_box = 12.0 * box_of_jet(P, wf);

    rep.psi_from_theta[0] = -th.partial(MultiIndex{4, 0, 0, 0});
    rep.psi_from_theta[1] = -th.partial(MultiIndex{3, 1, 0, 0});
    rep.psi_from_theta[2] = -th.partial(MultiIndex{2, 2, 0, 0});
    rep.psi_from_theta[3] = -th.partial(MultiIndex{1, 3, 0, 0});
    rep.psi_from_theta[4] = -th.partial(MultiIndex{0, 4, 0, 0});

    // Phi_02 = P_11, Phi_12 = P_12, Phi_22 = P_22
    rep.phi_from_theta[0] = P.partial(MultiIndex{2, 0, 0, 0});
    rep.phi_from_theta[1] = P.partial(MultiIndex{1, 1, 0, 0});
    rep.phi_from_theta[2] = P.partial(MultiIndex{0, 2, 0, 0});

    const double pscale = 1.0 + std::abs(rep.P);
    rep.einstein_affine_flag =
        std::max({std::abs(rep.phi_from_theta[0]), std::abs(rep.phi_from_theta[1]),
                  std::abs(rep.phi_from_theta[2])}) <= tol * pscale;
    return rep;
}

double ThetaCrossCheck::max_residual() const {
    return std::max({s_abs, b_abs, psit_pattern, psi_vs_theta, phi_vs_theta, a_vs_box});
}

ThetaCrossCheck cross_check_theta(const Expr& theta, const Point4& p) {
    ThetaCrossCheck out;
    const HeavenlyReport rep = theta_analysis(theta, p);
    const WalkerMetric m = WalkerMetric::from_theta(theta);
    const CurvatureSummary cs = curvature_summary(m, p);
    const SpinorCurvature sc = spinor_curvature(m, p);

    out.s_abs = std::abs(cs.S);
    out.b_abs = std::abs(cs.B);
    // The SD Weyl spinor collapses to psit = (0,0,0,0,-A/24).
    out.psit_pattern = std::max({std::abs(sc.psit[0]), std::abs(sc.psit[1]),
                                 std::abs(sc.psit[2]), std::abs(sc.psit[3]),
                                 std::abs(sc.psit[4] + cs.A / 24.0)});
    for (int k = 0; k < 5; ++k)
        out.psi_vs_theta = std::max(out.psi_vs_theta,
                                    std::abs(sc.psi[k] - rep.psi_from_theta[k]));
    // Hessian of P against the dyad component table.
    out.phi_vs_theta = std::max({std::abs(sc.phi[0][2] - rep.phi_from_theta[0]),
                                 std::abs(sc.phi[1][2] - rep.phi_from_theta[1]),
                                 std::abs(sc.phi[2][2] - rep.phi_from_theta[2]),
                                 std::abs(sc.phi[0][1]), std::abs(sc.phi[1][1]),
                                 std::abs(sc.phi[2][1]), std::abs(sc.phi[0][0]),
                                 std::abs(sc.phi[1][0]), std::abs(sc.phi[2][0])});
    out.a_vs_box = std::abs(cs.A - rep.A_via_box);
    return out;
}

double second_heavenly_residual(const Expr& Theta, const Point4& p) {
    const Jet th = eval_jet(Theta, p, 2);
    return th.partial(MultiIndex{1, 0, 1, 0}) + th.partial(MultiIndex{0, 1, 0, 1}) -
           th.partial(MultiIndex{1, 1, 0, 0}) * th.partial(MultiIndex{1, 1, 0, 0}) +
           th.partial(MultiIndex{2, 0, 0, 0}) * th.partial(MultiIndex{0, 2, 0, 0});
}

ParaKahlerReport para_kahler_analysis(const ProductMetric& pm, const Point4& p, double tol) {
    ParaKahlerReport rep;
    const auto d = pm.d_matrix(p);
    rep.det_D = d[0][0] * d[1][1] - d[0][1] * d[1][0];
    rep.det_positive = rep.det_D > 0.0;
    rep.first_heavenly_residual = rep.det_D - 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rep.omega[i][j] = d[i][j];

    const MetricEntryJets ej = pm.entry_jets(p, 3);
    const MetricAt at = metric_at_from_entries(ej);

    // Both coordinate distributions are parallel by construction; the
    // mixed Christoffel blocks must vanish.
    const Christoffels ch = christoffels_generic(ej, at.g_inv);
    for (int aidx = 0; aidx < 4; ++aidx)
        for (int B = 0; B < 2; ++B) {
            for (int Cp = 2; Cp < 4; ++Cp)
                rep.dist_residual_pi =
                    std::max(rep.dist_residual_pi, std::abs(ch.G[Cp][aidx][B]));
            for (int C = 0; C < 2; ++C)
                rep.dist_residual_chi =
                    std::max(rep.dist_residual_chi, std::abs(ch.G[C][aidx][B + 2]));
        }

    // Einstein endomorphism must preserve both null distributions.
    const RiemannAt r = riemann_generic(ej, at);
    double ricci[4][4];
    ricci_from_riemann(r, ricci);
    const double S = scalar_from_ricci(ricci, at.g_inv);
    rep.S = S;
    double E[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += at.g_inv[i][k] * ricci[k][j];
            E[i][j] = s - (i == j ? S / 4.0 : 0.0);
        }
    for (int j = 0; j < 2; ++j)
        for (int i = 2; i < 4; ++i)
            rep.e_block_residual = std::max(rep.e_block_residual, std::abs(E[i][j]));
    for (int j = 2; j < 4; ++j)
        for (int i = 0; i < 2; ++i)
            rep.e_block_residual = std::max(rep.e_block_residual, std::abs(E[i][j]));

    // Corollary 4.4: W+ of type {22}Ia, or zero. The {22}Ia shape is pinned
    // by pseudo-eigenvalue residuals at -S/6 and S/12 plus the geometric
    // multiplicity 2 of S/12 (diagonalizable).
    const WeylBlocks wb = project_blocks(r, at, psi_on_frame(at));
    const double scale = std::max({mat3_max_abs(wb.Wp), std::abs(S), 1e-30});
    if (std::abs(S) <= tol * scale) {
        rep.wp_spectrum_residual = mat3_max_abs(wb.Wp);
        rep.spectrum_ok = rep.wp_spectrum_residual <= tol * scale;
    } else {
        Mat3 sh1 = wb.Wp, sh2 = wb.Wp;
        for (int i = 0; i < 3; ++i) {
            sh1[i][i] += S / 6.0;
            sh2[i][i] -= S / 12.0;
        }
        rep.wp_spectrum_residual =
            std::max(mat3_singular_values(sh1)[2], mat3_singular_values(sh2)[2]);
        const int rank = mat3_rank(sh2, 10 * tol * scale);
        rep.spectrum_ok = rep.wp_spectrum_residual <= tol * scale && rank == 1;
    }
    return rep;
}

double SecondDistResidual::max_abs() const {
    double s = 0.0;
    for (double x : rho3) s = std::max(s, std::abs(x));
    for (double x : rho4) s = std::max(s, std::abs(x));
    return s;
}

SecondDistResidual second_distribution_residual(const WalkerMetric& m, const Point4& p) {
    SecondDistResidual out;
    const WalkerFields wf = m.fields(p, 1);
    const double a = wf.a.value(), b = wf.b.value(), c = wf.c.value();
    const double da[4] = {wf.a.partial(E1), wf.a.partial(E2), wf.a.partial(E3),
                          wf.a.partial(E4)};
    const double db[4] = {wf.b.partial(E1), wf.b.partial(E2), wf.b.partial(E3),
                          wf.b.partial(E4)};
    const double dc[4] = {wf.c.partial(E1), wf.c.partial(E2), wf.c.partial(E3),
                          wf.c.partial(E4)};

    // m^n as a bivector field of a, b, c.
    auto mn_biv = [](double av, double bv, double cv) {
        Biv w{};
        auto set = [&](int i, int j, double v) {
            w.m[i][j] = v;
            w.m[j][i] = -v;
        };
        set(0, 1, (av * bv - cv * cv) / 4.0);
        set(0, 2, cv / 2.0);
        set(0, 3, -av / 2.0);
        set(1, 2, bv / 2.0);
        set(1, 3, -cv / 2.0);
        set(2, 3, 1.0);
        return w;
    };
    const Biv w = mn_biv(a, b, c);
    // Coordinate derivative of the coefficients along x^k.
    auto dmn = [&](int k) {
        Biv dw{};
        auto set = [&](int i, int j, double v) {
            dw.m[i][j] = v;
            dw.m[j][i] = -v;
        };
        set(0, 1, (da[k] * b + a * db[k] - 2 * c * dc[k]) / 4.0);
        set(0, 2, dc[k] / 2.0);
        set(0, 3, -da[k] / 2.0);
        set(1, 2, db[k] / 2.0);
        set(1, 3, -dc[k] / 2.0);
        set(2, 3, 0.0);
        return dw;
    };
    const Christoffels ch = christoffels_walker(m, p);
    const Biv n3 = covariant_biv_derivative(w, dmn(2), ch, 2);
    const Biv n4 = covariant_biv_derivative(w, dmn(3), ch, 3);

    // The dx^dy coefficient of m^n is one, so the ray component is read off
    // there and removed.
    out.lambda3 = n3.m[2][3];
    out.lambda4 = n4.m[2][3];
    const Biv r3 = biv_sub(n3, biv_scale(w, out.lambda3));
    const Biv r4 = biv_sub(n4, biv_scale(w, out.lambda4));
    const int pr[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int i = 0; i < 6; ++i) {
        out.rho3[i] = r3.m[pr[i][0]][pr[i][1]];
        out.rho4[i] = r4.m[pr[i][0]][pr[i][1]];
    }

    // Redundant closed forms of the two derivatives, for forensics.
    auto bracket = [&]() {
        Biv v{};
        auto set = [&](int i, int j, double val) {
            v.m[i][j] = val;
            v.m[j][i] = -val;
        };
        set(0, 1, (c * c - a * b) / 8.0);
        set(1, 2, -b / 4.0);
        set(0, 3, a / 4.0);
        set(2, 3, -0.5);
        return v;
    };
    Biv lit3 = biv_scale(bracket(), da[0] + dc[1]);
    lit3.m[0][2] += (2 * dc[2] - 2 * da[3] - 2 * c * dc[1] + b * da[1] - a * dc[0]) / 4.0;
    lit3.m[2][0] = -lit3.m[0][2];
    lit3.m[1][3] += (2 * dc[2] - 2 * da[3] + b * da[1] - a * dc[0] + 2 * c * da[0]) / 4.0;
    lit3.m[3][1] = -lit3.m[1][3];
    Biv lit4 = biv_scale(bracket(), db[1] + dc[0]);
    lit4.m[0][2] += (2 * db[2] - 2 * dc[3] - 2 * c * db[1] + b * dc[1] - a * db[0]) / 4.0;
    lit4.m[2][0] = -lit4.m[0][2];
    lit4.m[1][3] += (2 * db[2] - 2 * dc[3] + 2 * c * dc[0] + b * dc[1] - a * db[0]) / 4.0;
    lit4.m[3][1] = -lit4.m[1][3];
    out.literal_mismatch3 = biv_max_abs(biv_sub(n3, lit3));
    out.literal_mismatch4 = biv_max_abs(biv_sub(n4, lit4));
    return out;
}

DoubleWalkerReport double_walker_identities(const WalkerMetric& m, const Point4& p, double tol) {
    DoubleWalkerReport rep;
    const SecondDistResidual sd = second_distribution_residual(m, p);
    const CurvatureSummary cs = curvature_summary(m, p);
    const SpinorCurvature sc = spinor_curvature(m, p);
    const double scale =
        1.0 + std::max({std::abs(cs.S), std::abs(cs.A), std::abs(cs.B), mat3_max_abs(cs.Wp)});
    rep.precondition_residual = sd.max_abs();
    rep.precondition_ok = rep.precondition_residual <= tol * scale;
    const double c = cs.abc[2];
    rep.r_b_plus_sc = cs.B + cs.S * c;
    rep.r_three_bc = 3.0 * cs.B * c - cs.A - cs.S;
    rep.r_a_ab[0] = sc.phi[0][2];
    rep.r_a_ab[1] = sc.phi[1][2];
    rep.r_a_ab[2] = sc.phi[2][2];
    rep.r_discriminant = cs.S * cs.S + cs.A * cs.S + 3.0 * cs.B * cs.B;
    return rep;
}

} // namespace walker4
