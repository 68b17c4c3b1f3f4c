#include "walker4/spinor.hpp"

#include <cmath>

namespace walker4 {

namespace {

constexpr double EPS2[2][2] = {{0.0, 1.0}, {-1.0, 0.0}};

// Symmetric-spinor "triangle" basis in dyad components, upper
// indices: tri1 = (pp+xx)/sqrt2, tri2 = (pp-xx)/sqrt2, tri3 = sqrt2 p(x.
struct Tri {
    double up[3][2][2];
    double lo[3][2][2];
    double norm[3];
};

const Tri& triangles() {
    static const Tri t = [] {
        Tri t{};
        const double r = 1.0 / std::sqrt(2.0);
        t.up[0][0][0] = r;
        t.up[0][1][1] = r;
        t.up[1][0][0] = r;
        t.up[1][1][1] = -r;
        t.up[2][0][1] = r;
        t.up[2][1][0] = r;
        for (int i = 0; i < 3; ++i) {
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double s = 0.0;
                    for (int c = 0; c < 2; ++c)
                        for (int d = 0; d < 2; ++d) s += t.up[i][c][d] * EPS2[c][a] * EPS2[d][b];
                    t.lo[i][a][b] = s;
                }
            double n = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) n += t.up[i][a][b] * t.lo[i][a][b];
            t.norm[i] = n; // (+1, -1, -1)
        }
        return t;
    }();
    return t;
}

// Quartic components from a fully symmetric lowered quartic: component k
// has k indices equal to 1 (contractions with the dyad (1,0), (0,1)).
std::array<double, 5> quartic_components(const double t[2][2][2][2]) {
    std::array<double, 5> c{};
    c[0] = t[0][0][0][0];
    c[1] = t[0][0][0][1];
    c[2] = t[0][0][1][1];
    c[3] = t[0][1][1][1];
    c[4] = t[1][1][1][1];
    return c;
}

void quartic_from_components(const std::array<double, 5>& c, double t[2][2][2][2]) {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d)
                for (int e = 0; e < 2; ++e) t[a][b][d][e] = c[a + b + d + e];
}

// Extract the symmetric quartic behind an operator matrix C on the
// triangle basis: T_{ABCD} = sum_ij C_ij tri_i[AB] eps_j tri_j[CD], then
// full symmetrization; returns the components and the asymmetry defect.
std::array<double, 5> extract_quartic(const Mat3& C, double& defect) {
    const Tri& tri = triangles();
    double t[2][2][2][2] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double w = C[i][j] * tri.norm[j];
            if (w == 0.0) continue;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int d = 0; d < 2; ++d)
                        for (int e = 0; e < 2; ++e)
                            t[a][b][d][e] += w * tri.lo[i][a][b] * tri.lo[j][d][e];
        }
    // Symmetrize over the 4! index orders and measure the defect.
    static const int perms[24][4] = {
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
        {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
        {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
        {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
    double sym[2][2][2][2];
    defect = 0.0;
    int idx[4];
    for (idx[0] = 0; idx[0] < 2; ++idx[0])
        for (idx[1] = 0; idx[1] < 2; ++idx[1])
            for (idx[2] = 0; idx[2] < 2; ++idx[2])
                for (idx[3] = 0; idx[3] < 2; ++idx[3]) {
                    double s = 0.0;
                    for (const auto& pm : perms)
                        s += t[idx[pm[0]]][idx[pm[1]]][idx[pm[2]]][idx[pm[3]]];
                    s /= 24.0;
                    sym[idx[0]][idx[1]][idx[2]][idx[3]] = s;
                    defect = std::max(defect,
                                      std::abs(t[idx[0]][idx[1]][idx[2]][idx[3]] - s));
                }
    return quartic_components(sym);
}

Mat3 j_matrix(double c) {
    const double f = 1.0 / (4.0 * std::sqrt(2.0));
    return {{{f * (c * c + 5), f * (3 - c * c), f * (-4 * c)},
             {f * (-2 * c), f * (2 * c), f * 4},
             {f * (-(3 + c * c)), f * (c * c - 5), f * (4 * c)}}};
}

Mat3 j_inv_matrix(double c) {
    const double f = std::sqrt(2.0) / 4.0;
    return {{{f * (c * c + 5), f * (2 * c), f * (c * c + 3)},
             {f * (c * c - 3), f * (2 * c), f * (c * c - 5)},
             {f * (4 * c), f * 4, f * (4 * c)}}};
}

Mat3 k_matrix() {
    const double f = 1.0 / std::sqrt(2.0);
    return {{{-f, 0, 0}, {0, 0, f}, {0, -f, 0}}};
}

Mat3 k_inv_matrix() {
    const double f = std::sqrt(2.0);
    return {{{-f, 0, 0}, {0, 0, -f}, {0, f, 0}}};
}

// Coordinate components of the tetrad-adapted Psi-ON frame {U,V,X,Y}.
std::array<Vec4, 4> frame_2_12(double a, double b, double c) {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<Vec4, 4> e;
    e[0] = {r * (2 - a) / 2, r * (-c / 2), r, 0};
    e[1] = {r * (-c / 2), r * (2 - b) / 2, 0, r};
    e[2] = {r * (2 + a) / 2, r * (c / 2), -r, 0};
    e[3] = {r * (c / 2), r * (2 + b) / 2, 0, -r};
    return e;
}

} // namespace

std::array<std::array<double, 2>, 2> a21_matrix(const Vec4& v) {
    const double r = 1.0 / std::sqrt(2.0);
    return {{{r * (v[0] + v[2]), r * (v[3] - v[1])}, {r * (v[3] + v[1]), r * (v[0] - v[2])}}};
}

NullTetrad walker_tetrad(const WalkerMetric& m, const Point4& p) {
    const auto [a, b, c] = m.abc_values(p);
    NullTetrad t;
    t.l_down = {0, 0, 1, 0};
    t.mt_down = {0, 0, 0, 1};
    t.n_down = {1, 0, a / 2, c / 2};
    t.m_down = {0, -1, -c / 2, -b / 2};
    t.l_up = {1, 0, 0, 0};
    t.mt_up = {0, 1, 0, 0};
    t.n_up = {-a / 2, -c / 2, 1, 0};
    t.m_up = {c / 2, b / 2, 0, -1};
    return t;
}

BivectorBases bivector_bases(const WalkerMetric& m, const Point4& p) {
    const auto [a, b, c] = m.abc_values(p);
    BivectorBases bb;

    const Frame f18 = walker_psi_on_frame(a, b, c);
    const auto s6 = si_basis({f18.e[0], f18.e[1], f18.e[2], f18.e[3]});
    const double r2 = std::sqrt(2.0);
    for (int i = 0; i < 3; ++i) {
        bb.s_plus[i] = biv_scale(s6[i], r2);      // tabulated sqrt(2) scale
        bb.s_minus[i] = biv_scale(s6[i + 3], r2);
    }

    const auto S6 = si_basis(frame_2_12(a, b, c));
    for (int i = 0; i < 3; ++i) {
        bb.S_plus[i] = S6[i];
        bb.S_minus[i] = S6[i + 3];
    }

    // +Z = (S+1, S+3, -S+2), -Z = (-S-1, S-3, -S-2).
    bb.Z_plus[0] = bb.S_plus[0];
    bb.Z_plus[1] = bb.S_plus[2];
    bb.Z_plus[2] = biv_scale(bb.S_plus[1], -1.0);
    bb.Z_minus[0] = biv_scale(bb.S_minus[0], -1.0);
    bb.Z_minus[1] = bb.S_minus[2];
    bb.Z_minus[2] = biv_scale(bb.S_minus[1], -1.0);

    bb.J = j_matrix(c);
    bb.J_inv = j_inv_matrix(c);
    bb.K = k_matrix();
    bb.K_inv = k_inv_matrix();
    return bb;
}

SpinorCurvature spinor_curvature(const WalkerMetric& m, const Point4& p) {
    const CurvatureSummary cs = curvature_summary(m, p);
    const double c = cs.abc[2];
    SpinorCurvature sc;
    sc.psit[0] = 0.0;
    sc.psit[1] = 0.0;
    sc.psit[2] = cs.S / 12.0;
    sc.psit[3] = -(cs.B + cs.S * c) / 8.0;
    sc.psit[4] = (6.0 * cs.B * c - cs.A + cs.S * (3.0 * c * c - 1.0)) / 24.0;
    // a22 = (Q+Y)/2, b11 = (Q-Y)/2
    sc.psi[0] = (cs.Q - cs.Y) / 4.0;
    sc.psi[1] = cs.X / 4.0;
    sc.psi[2] = cs.P / 12.0;
    sc.psi[3] = cs.T / 4.0;
    sc.psi[4] = (cs.Q + cs.Y) / 4.0;
    const double aval = cs.abc[0], bval = cs.abc[1];
    sc.phi[0][0] = 0.0;
    sc.phi[0][1] = -cs.mu / 2.0;
    sc.phi[0][2] = cs.Upsilon / 2.0;
    sc.phi[1][0] = 0.0;
    sc.phi[1][1] = cs.theta / 2.0;
    sc.phi[1][2] = -(2.0 * cs.eta + 2.0 * c * cs.theta + bval * cs.nu - aval * cs.mu) / 4.0;
    sc.phi[2][0] = 0.0;
    sc.phi[2][1] = cs.nu / 2.0;
    sc.phi[2][2] = cs.zeta / 2.0;
    sc.lambda = -cs.S / 24.0; // S = -24 Lambda
    return sc;
}

SpinorBlocks spinor_from_blocks(const Mat3& Wp, const Mat3& Wm, double c) {
    SpinorBlocks out;
    out.Cp = mat3_mul(j_inv_matrix(c), mat3_mul(Wp, j_matrix(c)));
    out.Cm = mat3_mul(k_inv_matrix(), mat3_mul(Wm, k_matrix()));
    double d1 = 0.0, d2 = 0.0;
    out.psit = extract_quartic(out.Cp, d1);
    out.psi = extract_quartic(out.Cm, d2);
    out.sym_defect = std::max(d1, d2);
    return out;
}

SpinorBlocks spinor_curvature_oracle(const WalkerMetric& m, const Point4& p) {
    const CurvatureSummary cs = curvature_summary(m, p);
    return spinor_from_blocks(cs.Wp, cs.Wm, cs.abc[2]);
}

void phi_from_e_tetrad(const double E[4][4], const NullTetrad& t, double phi[3][3]) {
    auto half = [&](const Vec4& x_down, const Vec4& y_up) {
        double s = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) s += x_down[a] * E[a][b] * y_up[b];
        return 0.5 * s;
    };
    phi[0][0] = half(t.l_down, t.l_up);
    phi[0][1] = half(t.l_down, t.m_up);
    phi[0][2] = half(t.m_down, t.m_up);
    phi[1][0] = half(t.l_down, t.mt_up);
    phi[1][1] = half(t.l_down, t.n_up);
    phi[1][2] = half(t.m_down, t.n_up);
    phi[2][0] = half(t.mt_down, t.mt_up);
    phi[2][1] = half(t.mt_down, t.n_up);
    phi[2][2] = half(t.n_down, t.n_up);
}

RiemannAt reconstruct_riemann(const SpinorCurvature& sc, const WalkerMetric& m, const Point4& p) {
    double psit_lo[2][2][2][2], psi_lo[2][2][2][2];
    quartic_from_components(sc.psit, psit_lo);
    quartic_from_components(sc.psi, psi_lo);
    double phi_lo[2][2][2][2]; // phi_lo[A][B][A'][B'] = Phi_{(#1s AB)(#1s A'B')}
    for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B)
            for (int Ap = 0; Ap < 2; ++Ap)
                for (int Bp = 0; Bp < 2; ++Bp) phi_lo[A][B][Ap][Bp] = sc.phi[A + B][Ap + Bp];

    // Curvature from spinor data, with each tensor slot split as a = (A,A').
    auto riem_spinor = [&](int A, int Ap, int B, int Bp, int C, int Cp, int D, int Dp) {
        double s = EPS2[A][B] * EPS2[C][D] * psit_lo[Ap][Bp][Cp][Dp];
        s += psi_lo[A][B][C][D] * EPS2[Ap][Bp] * EPS2[Cp][Dp];
        s += phi_lo[A][B][Cp][Dp] * EPS2[Ap][Bp] * EPS2[C][D];
        s += phi_lo[C][D][Ap][Bp] * EPS2[A][B] * EPS2[Cp][Dp];
        s += 2.0 * sc.lambda *
             (EPS2[A][C] * EPS2[Ap][Cp] * EPS2[B][D] * EPS2[Bp][Dp] -
              EPS2[A][D] * EPS2[Ap][Dp] * EPS2[B][C] * EPS2[Bp][Cp]);
        return s;
    };

    // Components in the tetrad-adapted frame through the soldering forms.
    const double r = 1.0 / std::sqrt(2.0);
    const double sigma[4][2][2] = {{{r, 0}, {0, r}},
                                   {{0, -r}, {r, 0}},
                                   {{r, 0}, {0, -r}},
                                   {{0, r}, {r, 0}}};
    double rf[4][4][4][4];
    for (int pq = 0; pq < 4; ++pq)
        for (int q = 0; q < 4; ++q)
            for (int rr = 0; rr < 4; ++rr)
                for (int ss = 0; ss < 4; ++ss) {
                    double acc = 0.0;
                    for (int A = 0; A < 2; ++A)
                        for (int Ap = 0; Ap < 2; ++Ap) {
                            if (sigma[pq][A][Ap] == 0.0) continue;
                            for (int B = 0; B < 2; ++B)
                                for (int Bp = 0; Bp < 2; ++Bp) {
                                    if (sigma[q][B][Bp] == 0.0) continue;
                                    for (int C = 0; C < 2; ++C)
                                        for (int Cp = 0; Cp < 2; ++Cp) {
                                            if (sigma[rr][C][Cp] == 0.0) continue;
                                            for (int D = 0; D < 2; ++D)
                                                for (int Dp = 0; Dp < 2; ++Dp) {
                                                    if (sigma[ss][D][Dp] == 0.0) continue;
                                                    acc += riem_spinor(A, Ap, B, Bp, C, Cp, D, Dp) *
                                                           sigma[pq][A][Ap] * sigma[q][B][Bp] *
                                                           sigma[rr][C][Cp] * sigma[ss][D][Dp];
                                                }
                                        }
                                }
                        }
                    rf[pq][q][rr][ss] = acc;
                }

    // Push from the frame to coordinates.
    const auto [a, b, c] = m.abc_values(p);
    const auto fr = frame_2_12(a, b, c);
    Mat4 M;
    for (int i = 0; i < 4; ++i)
        for (int pcol = 0; pcol < 4; ++pcol) M[i][pcol] = fr[pcol][i];
    const Mat4 Minv = mat4_inverse(M);

    RiemannAt out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int pp = 0; pp < 4; ++pp)
                        for (int q = 0; q < 4; ++q)
                            for (int rr = 0; rr < 4; ++rr)
                                for (int ss = 0; ss < 4; ++ss)
                                    s += rf[pp][q][rr][ss] * Minv[pp][i] * Minv[q][j] *
                                         Minv[rr][k] * Minv[ss][l];
                    out.down[i][j][k][l] = s;
                }
    const MetricAt at = m.at(p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int mm = 0; mm < 4; ++mm) s += at.g_inv[i][mm] * out.down[mm][j][k][l];
                    out.up[i][j][k][l] = s;
                }
    return out;
}

WpsResidual wps_residual(const SpinorCurvature& sc) {
    WpsResidual r;
    r.r_pipi = sc.psit[0];
    r.r_pixi = sc.psit[1];
    r.r_xixi = sc.psit[2] + 2.0 * sc.lambda;
    return r;
}

} // namespace walker4
