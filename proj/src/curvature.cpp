#include "walker4/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "walker4/bivector.hpp"

namespace walker4 {

namespace {

// Values and partials of a, b, c at a point, with the numeral-subscript
// names used throughout Appendix One (1=u, 2=v, 3=x, 4=y).
struct WalkerDerivs {
    double a, a1, a2, a3, a4;
    double a11, a12, a13, a14, a22, a23, a24, a33, a34, a44;
    double b, b1, b2, b3, b4;
    double b11, b12, b13, b14, b22, b23, b24, b33, b34, b44;
    double c, c1, c2, c3, c4;
    double c11, c12, c13, c14, c22, c23, c24, c33, c34, c44;
};

void unpack(const Jet& f, double& v, double* d, double* dd) {
    v = f.value();
    static const MultiIndex e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int i = 0; i < 4; ++i) d[i] = f.partial(e[i]);
    int n = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            MultiIndex m;
            m.k[i] += 1;
            m.k[j] += 1;
            dd[n++] = f.partial(m);
        }
}

WalkerDerivs walker_derivs(const WalkerMetric& m, const Point4& p) {
    const WalkerFields f = m.fields(p, 2);
    WalkerDerivs w{};
    double d[4], dd[10];
    // dd order for (i<=j): 11,12,13,14,22,23,24,33,34,44
    unpack(f.a, w.a, d, dd);
    w.a1 = d[0]; w.a2 = d[1]; w.a3 = d[2]; w.a4 = d[3];
    w.a11 = dd[0]; w.a12 = dd[1]; w.a13 = dd[2]; w.a14 = dd[3]; w.a22 = dd[4];
    w.a23 = dd[5]; w.a24 = dd[6]; w.a33 = dd[7]; w.a34 = dd[8]; w.a44 = dd[9];
    unpack(f.b, w.b, d, dd);
    w.b1 = d[0]; w.b2 = d[1]; w.b3 = d[2]; w.b4 = d[3];
    w.b11 = dd[0]; w.b12 = dd[1]; w.b13 = dd[2]; w.b14 = dd[3]; w.b22 = dd[4];
    w.b23 = dd[5]; w.b24 = dd[6]; w.b33 = dd[7]; w.b34 = dd[8]; w.b44 = dd[9];
    unpack(f.c, w.c, d, dd);
    w.c1 = d[0]; w.c2 = d[1]; w.c3 = d[2]; w.c4 = d[3];
    w.c11 = dd[0]; w.c12 = dd[1]; w.c13 = dd[2]; w.c14 = dd[3]; w.c22 = dd[4];
    w.c23 = dd[5]; w.c24 = dd[6]; w.c33 = dd[7]; w.c34 = dd[8]; w.c44 = dd[9];
    return w;
}

Christoffels christoffels_from_derivs(const WalkerDerivs& w) {
    Christoffels ch;
    auto set = [&](int i, int j, int k, double v) {
        ch.G[i - 1][j - 1][k - 1] = v;
        ch.G[i - 1][k - 1][j - 1] = v;
    };
    // All symbols with both lower indices in {1,2} vanish (the null
    // distribution is parallel).
    set(1, 1, 3, w.a1 / 2);
    set(2, 1, 3, w.c1 / 2);
    set(1, 1, 4, w.c1 / 2);
    set(2, 1, 4, w.b1 / 2);
    set(1, 2, 3, w.a2 / 2);
    set(2, 2, 3, w.c2 / 2);
    set(1, 2, 4, w.c2 / 2);
    set(2, 2, 4, w.b2 / 2);
    set(1, 3, 3, (w.a * w.a1 + w.c * w.a2 + w.a3) / 2);
    set(2, 3, 3, (2 * w.c3 + w.c * w.a1 + w.b * w.a2 - w.a4) / 2);
    set(3, 3, 3, -w.a1 / 2);
    set(4, 3, 3, -w.a2 / 2);
    set(1, 3, 4, (w.a4 + w.a * w.c1 + w.c * w.c2) / 2);
    set(2, 3, 4, (w.b3 + w.c * w.c1 + w.b * w.c2) / 2);
    set(3, 3, 4, -w.c1 / 2);
    set(4, 3, 4, -w.c2 / 2);
    set(1, 4, 4, (2 * w.c4 + w.a * w.b1 + w.c * w.b2 - w.b3) / 2);
    set(2, 4, 4, (w.b4 + w.c * w.b1 + w.b * w.b2) / 2);
    set(3, 4, 4, -w.b1 / 2);
    set(4, 4, 4, -w.b2 / 2);
    return ch;
}

// Fill all index positions of a curvature-symmetric tensor from one
// representative with i<j, k<l.
void set_sym(double t[4][4][4][4], int i, int j, int k, int l, double v) {
    i--; j--; k--; l--;
    t[i][j][k][l] = v;
    t[j][i][k][l] = -v;
    t[i][j][l][k] = -v;
    t[j][i][l][k] = v;
    t[k][l][i][j] = v;
    t[l][k][i][j] = -v;
    t[k][l][j][i] = -v;
    t[l][k][j][i] = v;
}

// Gauss-Jordan inverse of a jet-valued 4x4 matrix; pivots on the constant
// terms.
std::array<std::array<Jet, 4>, 4> jet_mat4_inverse(std::array<std::array<Jet, 4>, 4> a,
                                                   int degree) {
    std::array<std::array<Jet, 4>, 4> inv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = Jet(i == j ? 1.0 : 0.0, degree);
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col].value()) > std::abs(a[piv][col].value())) piv = r;
        if (a[piv][col].value() == 0.0)
            throw std::runtime_error("singular metric in jet inversion");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Jet d = a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const Jet f = a[r][col];
            for (int j = 0; j < 4; ++j) {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

Christoffels christoffels_walker(const WalkerMetric& m, const Point4& p) {
    return christoffels_from_derivs(walker_derivs(m, p));
}

Christoffels christoffels_generic(const MetricEntryJets& ej, const Mat4& g_inv) {
    if (ej.degree < 1) throw std::invalid_argument("christoffels_generic needs entry jets of degree >= 1");
    double dg[4][4][4]; // dg[i][j][k] = g_{ij,k}
    static const MultiIndex e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) dg[i][j][k] = ej.entry[i][j].partial(e[k]);
    Christoffels ch;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = j; k < 4; ++k) {
                double s = 0.0;
                for (int m = 0; m < 4; ++m)
                    s += g_inv[i][m] * (dg[m][j][k] + dg[m][k][j] - dg[j][k][m]);
                ch.G[i][j][k] = 0.5 * s;
                ch.G[i][k][j] = ch.G[i][j][k];
            }
    return ch;
}

ChristoffelJets christoffel_jets_generic(const MetricEntryJets& ej) {
    if (ej.degree < 2)
        throw std::invalid_argument("christoffel_jets_generic needs entry jets of degree >= 2");
    const int d = ej.degree;
    const auto ginv = jet_mat4_inverse(ej.entry, d);
    // dg[i][j][k] = jet of g_{ij,k}, degree d-1
    std::array<Jet, 64> dg;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) dg[i * 16 + j * 4 + k] = ej.entry[i][j].derivative(k + 1);
    ChristoffelJets out;
    out.degree = d - 1;
    for (auto& j : out.G) j = Jet(0.0, d - 1);
    std::array<std::array<Jet, 4>, 4> ginv_lo;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ginv_lo[i][j] = ginv[i][j].truncated(d - 1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = j; k < 4; ++k) {
                Jet s(0.0, d - 1);
                for (int m = 0; m < 4; ++m)
                    s = s + ginv_lo[i][m] * (dg[m * 16 + j * 4 + k] + dg[m * 16 + k * 4 + j] -
                                             dg[j * 16 + k * 4 + m]);
                out.at(i, j, k) = 0.5 * s;
                out.at(i, k, j) = out.at(i, j, k);
            }
    return out;
}

RiemannAt riemann_walker(const WalkerMetric& m, const Point4& p) {
    const WalkerDerivs w = walker_derivs(m, p);
    RiemannAt r{};
    auto set = [&](int i, int j, int k, int l, double v) { set_sym(r.down, i, j, k, l, v); };
    // Covariant component table; R_{12jk} = 0.
    set(1, 3, 1, 3, w.a11 / 2);
    set(1, 3, 1, 4, w.c11 / 2);
    set(1, 3, 2, 3, w.a12 / 2);
    set(1, 3, 2, 4, w.c12 / 2);
    set(1, 3, 3, 4, -(2 * w.a14 - 2 * w.c13 - w.a2 * w.b1 + w.c1 * w.c2) / 4);
    set(1, 4, 1, 4, w.b11 / 2);
    set(1, 4, 2, 3, w.c12 / 2);
    set(1, 4, 2, 4, w.b12 / 2);
    set(1, 4, 3, 4,
        (2 * w.b13 - 2 * w.c14 - w.a1 * w.b1 + w.b1 * w.c2 - w.b2 * w.c1 + w.c1 * w.c1) / 4);
    set(2, 3, 2, 3, w.a22 / 2);
    set(2, 3, 2, 4, w.c22 / 2);
    set(2, 3, 3, 4,
        -(2 * w.a24 - 2 * w.c23 - w.a2 * w.b2 + w.a2 * w.c1 - w.a1 * w.c2 + w.c2 * w.c2) / 4);
    set(2, 4, 2, 4, w.b22 / 2);
    set(2, 4, 3, 4, (2 * w.b23 - 2 * w.c24 - w.a2 * w.b1 + w.c1 * w.c2) / 4);
    set(3, 4, 3, 4,
        -(2 * w.c34 + w.a1 * w.c4 - w.a4 * w.c1 + w.b2 * w.c3 - w.b3 * w.c2 -
          w.c * w.c1 * w.c2 - w.a44 - w.b33) / 2 -
            (w.a3 * w.b1 - w.a1 * w.b3 + w.a2 * w.b4 - w.a4 * w.b2 + w.a * w.a1 * w.b1 +
             w.b * w.a2 * w.b2 + w.c * w.a1 * w.b2 + w.c * w.a2 * w.b1 - w.a * w.c1 * w.c1 -
             w.b * w.c2 * w.c2) / 4);
    // Mixed components by raising with the closed-form inverse.
    const MetricAt at = m.at(p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int mm = 0; mm < 4; ++mm) s += at.g_inv[i][mm] * r.down[mm][j][k][l];
                    r.up[i][j][k][l] = s;
                }
    return r;
}

RiemannAt riemann_generic(const MetricEntryJets& ej, const MetricAt& at) {
    const ChristoffelJets ch = christoffel_jets_generic(ej);
    RiemannAt r{};
    static const MultiIndex e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    double G[4][4][4], dG[4][4][4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                G[i][j][k] = ch.at(i, j, k).value();
                for (int l = 0; l < 4; ++l) dG[i][j][k][l] = ch.at(i, j, k).partial(e[l]);
            }
    // R^i_jkl = G^i_kj,l - G^i_lj,k + G^m_kj G^i_lm - G^m_lj G^i_km
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = dG[i][k][j][l] - dG[i][l][j][k];
                    for (int mm = 0; mm < 4; ++mm)
                        s += G[mm][k][j] * G[i][l][mm] - G[mm][l][j] * G[i][k][mm];
                    r.up[i][j][k][l] = s;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int mm = 0; mm < 4; ++mm) s += at.g[i][mm] * r.up[mm][j][k][l];
                    r.down[i][j][k][l] = s;
                }
    return r;
}

void ricci_from_riemann(const RiemannAt& r, double ricci[4][4]) {
    // R_ab = R^c_bac
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c) s += r.up[c][b][a][c];
            ricci[a][b] = s;
        }
}

double scalar_from_ricci(const double ricci[4][4], const Mat4& g_inv) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += g_inv[a][b] * ricci[a][b];
    return s;
}

void weyl_from_riemann(const RiemannAt& r, const double ricci[4][4], double S, const Mat4& g,
                       double weyl[4][4][4][4]) {
    // Remove the scalar and traceless-Ricci parts.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    weyl[a][b][c][d] =
                        r.down[a][b][c][d] + (S / 6.0) * (g[a][d] * g[b][c] - g[a][c] * g[b][d]) -
                        0.5 * (g[a][d] * ricci[b][c] - g[a][c] * ricci[b][d] +
                               g[b][c] * ricci[a][d] - g[b][d] * ricci[a][c]);
                }
}

Frame walker_psi_on_frame(double a, double b, double c) {
    Frame f;
    f.e[0] = {0.5 * (1 - a), 0, 1, 0};
    f.e[1] = {-c, 0.5 * (1 - b), 0, 1};
    f.e[2] = {-0.5 * (1 + a), 0, 1, 0};
    f.e[3] = {-c, -0.5 * (1 + b), 0, 1};
    return f;
}

namespace {

double gdot(const Mat4& g, const Vec4& u, const Vec4& v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g[i][j] * u[i] * v[j];
    return s;
}

double frame_det(const Frame& f) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int p = 0; p < 4; ++p) m[i][p] = f.e[p][i]; // columns = frame vectors
    return mat4_det(m);
}

} // namespace

Frame psi_on_frame(const MetricAt& at) {
    std::vector<Vec4> cands;
    for (int i = 0; i < 4; ++i) {
        Vec4 v{};
        v[i] = 1.0;
        cands.push_back(v);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (double s : {1.0, -1.0}) {
                Vec4 v{};
                v[i] = 1.0;
                v[j] = s;
                cands.push_back(v);
            }

    std::vector<Vec4> built;
    std::vector<double> sign;
    for (int step = 0; step < 4; ++step) {
        Vec4 best{};
        double best_abs = 0.0;
        for (const Vec4& cand : cands) {
            Vec4 w = cand;
            for (size_t k = 0; k < built.size(); ++k) {
                const double proj = sign[k] * gdot(at.g, w, built[k]);
                for (int i = 0; i < 4; ++i) w[i] -= proj * built[k][i];
            }
            const double n = gdot(at.g, w, w);
            if (std::abs(n) > best_abs) {
                best_abs = std::abs(n);
                best = w;
            }
        }
        if (best_abs < 1e-12) throw std::runtime_error("degenerate metric: no Psi-ON frame");
        const double n = gdot(at.g, best, best);
        const double scale = 1.0 / std::sqrt(std::abs(n));
        for (double& x : best) x *= scale;
        built.push_back(best);
        sign.push_back(n > 0 ? 1.0 : -1.0);
    }

    Frame f;
    int pos = 0, neg = 2;
    int nplus = 0;
    for (size_t k = 0; k < built.size(); ++k)
        if (sign[k] > 0) ++nplus;
    if (nplus != 2) throw std::runtime_error("metric signature is not (+,+,-,-)");
    for (size_t k = 0; k < built.size(); ++k) {
        if (sign[k] > 0)
            f.e[pos++] = built[k];
        else
            f.e[neg++] = built[k];
    }
    if (frame_det(f) < 0.0)
        for (double& x : f.e[3]) x = -x; // flip one negative-norm leg
    return f;
}

WeylBlocks project_blocks(const RiemannAt& r, const MetricAt& at, const Frame& frame) {
    double ricci[4][4];
    ricci_from_riemann(r, ricci);
    const double S = scalar_from_ricci(ricci, at.g_inv);

    // The tabulated block matrices represent the Weyl endomorphism
    // C(F) = (1/2) C^{ab}_{cd} F^{cd} on the SD/ASD summands, and the
    // Einstein piece E(F) = (1/2)(E^a_c F^{bc} - E^b_c F^{ac}) between them,
    // The raw half-contraction of the full Riemann
    // tensor differs from their sum only by a multiple of the identity.
    static double weyl[4][4][4][4];
    weyl_from_riemann(r, ricci, S, at.g, weyl);
    static double cmixed[4][4][4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int m = 0; m < 4; ++m)
                        for (int n = 0; n < 4; ++n)
                            s += at.g_inv[a][m] * at.g_inv[b][n] * weyl[m][n][c][d];
                    cmixed[a][b][c][d] = s;
                }
    double E[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int m = 0; m < 4; ++m) s += at.g_inv[i][m] * ricci[m][j];
            E[i][j] = s - (i == j ? S / 4.0 : 0.0);
        }
    auto einstein_apply = [&](const Biv& f) {
        Biv out;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0.0;
                for (int c = 0; c < 4; ++c) s += E[a][c] * f.m[b][c] - E[b][c] * f.m[a][c];
                out.m[a][b] = 0.5 * s;
            }
        return out;
    };

    const std::array<Vec4, 4> e{frame.e[0], frame.e[1], frame.e[2], frame.e[3]};
    const auto s6 = si_basis(e);
    double norm[6];
    for (int i = 0; i < 6; ++i) norm[i] = biv_inner(s6[i], s6[i], at.g);

    WeylBlocks out;
    out.frame = frame;
    out.S = S;
    for (int j = 0; j < 3; ++j) {
        const Biv cp = biv_apply(cmixed, s6[j]);
        const Biv cm = biv_apply(cmixed, s6[j + 3]);
        const Biv ez = einstein_apply(s6[j + 3]);
        for (int i = 0; i < 3; ++i) {
            out.Wp[i][j] = biv_inner(s6[i], cp, at.g) / norm[i];
            out.Wm[i][j] = biv_inner(s6[i + 3], cm, at.g) / norm[i + 3];
            out.Z[i][j] = biv_inner(s6[i], ez, at.g) / norm[i];
        }
    }
    return out;
}

WeylBlocks weyl_blocks_generic(const MetricEntryJets& ej, const MetricAt& at, int orientation) {
    const RiemannAt r = riemann_generic(ej, at);
    Frame f = psi_on_frame(at);
    if (orientation < 0)
        for (double& x : f.e[3]) x = -x;
    return project_blocks(r, at, f);
}

namespace {

// The SD Weyl block obtained by projecting the closed-form Weyl tensor
// onto the standard frame basis. Independent of the tabulated scalar sums;
// arbitrates them.
Mat3 wp_projected_from_weyl(const double weyl[4][4][4][4], const MetricAt& at,
                            const Frame& frame) {
    static double mixed[4][4][4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int m = 0; m < 4; ++m)
                        for (int n = 0; n < 4; ++n)
                            s += at.g_inv[a][m] * at.g_inv[b][n] * weyl[m][n][c][d];
                    mixed[a][b][c][d] = s;
                }
    const std::array<Vec4, 4> e{frame.e[0], frame.e[1], frame.e[2], frame.e[3]};
    const auto s6 = si_basis(e);
    Mat3 wp = mat3_zero();
    for (int j = 0; j < 3; ++j) {
        const Biv cj = biv_apply(mixed, s6[j]);
        for (int i = 0; i < 3; ++i)
            wp[i][j] = biv_inner(s6[i], cj, at.g) / biv_inner(s6[i], s6[i], at.g);
    }
    return wp;
}

} // namespace

CurvatureSummary curvature_summary(const WalkerMetric& m, const Point4& p) {
    const WalkerDerivs w = walker_derivs(m, p);
    CurvatureSummary cs;
    cs.abc[0] = w.a;
    cs.abc[1] = w.b;
    cs.abc[2] = w.c;

    cs.ricci[0][2] = cs.ricci[2][0] = (w.a11 + w.c12) / 2;
    cs.ricci[0][3] = cs.ricci[3][0] = (w.b12 + w.c11) / 2;
    cs.ricci[1][2] = cs.ricci[2][1] = (w.a12 + w.c22) / 2;
    cs.ricci[1][3] = cs.ricci[3][1] = (w.b22 + w.c12) / 2;
    cs.ricci[2][2] = (2 * w.c * w.a12 - 2 * w.a24 + 2 * w.c23 + w.a * w.a11 + w.b * w.a22 +
                      w.a2 * w.b2 + w.a1 * w.c2 - w.a2 * w.c1 - w.c2 * w.c2) / 2;
    cs.ricci[2][3] = cs.ricci[3][2] =
        (2 * w.c * w.c12 + w.a * w.c11 + w.b * w.c22 + w.a14 + w.b23 - w.c13 - w.c24 -
         w.a2 * w.b1 + w.c1 * w.c2) / 2;
    cs.ricci[3][3] = (2 * w.c14 - 2 * w.b13 + 2 * w.c * w.b12 + w.a * w.b11 + w.b * w.b22 +
                      w.a1 * w.b1 + w.b2 * w.c1 - w.b1 * w.c2 - w.c1 * w.c1) / 2;

    cs.S = w.a11 + w.b22 + 2 * w.c12;
    cs.Lambda = -cs.S / 24.0;

    cs.theta = (w.a11 - w.b22) / 4;
    cs.mu = (w.b12 + w.c11) / 2;
    cs.nu = (w.a12 + w.c22) / 2;
    cs.zeta = (2 * w.c23 - 2 * w.a24 + w.b * w.a22 + w.c * w.a12 - w.a * w.c12 - w.c * w.c22 +
               w.a2 * w.b2 + w.a1 * w.c2 - w.a2 * w.c1 - w.c2 * w.c2) / 2;
    cs.eta = (w.a * w.c11 + w.c * w.c12 - w.c * w.a11 - w.b * w.a12 + w.a14 + w.b23 - w.c13 -
              w.c24 - w.a2 * w.b1 + w.c1 * w.c2) / 2;
    cs.Xi = (w.b * w.c22 + w.c * w.c12 - w.a * w.b12 - w.c * w.b22 + w.a14 + w.b23 - w.c13 -
             w.c24 - w.a2 * w.b1 + w.c1 * w.c2) / 2;
    cs.Upsilon = (2 * w.c14 - 2 * w.b13 + w.a * w.b11 + w.c * w.b12 - w.c * w.c11 - w.b * w.c12 +
                  w.a1 * w.b1 + w.b2 * w.c1 - w.b1 * w.c2 - w.c1 * w.c1) / 2;
    cs.E[0][0] = cs.theta;
    cs.E[1][0] = cs.mu;
    cs.E[0][1] = cs.nu;
    cs.E[1][1] = -cs.theta;
    cs.E[0][2] = cs.zeta;
    cs.E[1][2] = cs.eta;
    cs.E[2][2] = cs.theta;
    cs.E[3][2] = cs.nu;
    cs.E[0][3] = cs.Xi;
    cs.E[1][3] = cs.Upsilon;
    cs.E[2][3] = cs.mu;
    cs.E[3][3] = -cs.theta;

    // Weyl component table.
    auto setC = [&](int i, int j, int k, int l, double v) { set_sym(cs.weyl, i, j, k, l, v); };
    setC(1, 2, 3, 4, cs.S / 12);
    setC(1, 3, 1, 3, (w.a11 - w.c12 + w.b22) / 6);
    setC(1, 3, 1, 4, (w.c11 - w.b12) / 4);
    setC(1, 3, 2, 3, (w.a12 - w.c22) / 4);
    setC(1, 3, 2, 4, w.c12 / 2);
    setC(1, 3, 3, 4,
         -(3 * w.a14 - 3 * w.c13 - 5 * w.c * w.c12 - 3 * w.b * w.c22 + 3 * w.c24 - 3 * w.b23 -
           w.c * w.a11 + 3 * w.a * w.b12 + 2 * w.c * w.b22) / 12);
    setC(1, 4, 1, 4, w.b11 / 2);
    setC(1, 4, 2, 3, -(w.a11 - 4 * w.c12 + w.b22) / 12);
    setC(1, 4, 2, 4, (w.b12 - w.c11) / 4);
    setC(1, 4, 3, 4,
         (w.b * w.a11 + 3 * w.a * w.b11 + 3 * w.c * w.b12 + w.b * w.b22 - w.b * w.c12 -
          3 * w.c * w.c11) / 12);
    setC(2, 3, 2, 3, w.a22 / 2);
    setC(2, 3, 2, 4, -(w.a12 - w.c22) / 4);
    setC(2, 3, 3, 4,
         -(w.a * w.a11 + 3 * w.c * w.a12 + 3 * w.b * w.a22 - 3 * w.c * w.c22 - w.a * w.c12 +
           w.a * w.b22) / 12);
    setC(2, 4, 2, 4, (w.a11 - w.c12 + w.b22) / 6);
    setC(2, 4, 3, 4,
         (2 * w.c * w.a11 + 3 * w.b * w.a12 - 3 * w.a14 + 3 * w.b23 - w.c * w.b22 - 3 * w.c24 -
          3 * w.a * w.c11 - 5 * w.c * w.c12 + 3 * w.c13) / 12);
    setC(3, 4, 3, 4,
         (3 * w.b * w.a1 * w.c2 + 3 * w.c * w.b1 * w.a2 + 6 * w.b * w.c * w.a12 +
          w.b * w.a * w.a11 - 3 * w.c * w.a1 * w.b2 - 4 * w.a * w.b * w.c12 -
          6 * w.c * w.a * w.c11 - 3 * w.b * w.c1 * w.a2 + w.a * w.b * w.b22 +
          6 * w.a * w.c * w.b12 - 6 * w.c * w.b * w.c22 + 3 * w.a * w.c1 * w.b2 +
          3 * w.a * w.a * w.b11 + 6 * w.c1 * w.a4 - 3 * w.a * w.b1 * w.c2 - 6 * w.a1 * w.c4 +
          3 * w.a1 * w.b3 + 6 * w.c2 * w.b3 - 3 * w.a2 * w.b4 - 3 * w.b1 * w.a3 -
          6 * w.b2 * w.c3 + 3 * w.b2 * w.a4 - 12 * w.c34 + 6 * w.a44 + 6 * w.b33 +
          6 * w.a * w.c14 - 6 * w.a * w.b13 - 8 * w.c * w.c * w.c12 - 6 * w.c * w.a14 +
          6 * w.c * w.c13 + 6 * w.c * w.c24 - 6 * w.c * w.b23 + 3 * w.b * w.b * w.a22 -
          6 * w.b * w.a24 + 6 * w.b * w.c23 + 2 * w.c * w.c * w.a11 + 2 * w.c * w.c * w.b22) /
             12);

    cs.P = w.a11 + w.b22 - 4 * w.c12;
    cs.Q = w.a22 + w.b11;
    cs.T = w.a12 - w.c22;
    cs.X = w.b12 - w.c11;
    cs.Y = w.a22 - w.b11;

    const double TX = cs.T + cs.X, TmX = cs.T - cs.X;
    cs.Wm = {{{(cs.P + 3 * cs.Q) / 12, -3 * TX / 12, -3 * cs.Y / 12},
              {3 * TX / 12, -2 * cs.P / 12, -3 * TmX / 12},
              {3 * cs.Y / 12, -3 * TmX / 12, (cs.P - 3 * cs.Q) / 12}}};

    cs.B = 2 * (w.a14 - w.b23 - w.c13 + w.c24) - 2 * w.c * w.a11 - w.b * w.a12 + w.a * w.b12 +
           w.a * w.c11 - w.b * w.c22 - 2 * w.c * w.c12;

    // The long tabulated sum for A, transcribed verbatim.
    cs.A_literal =
        6 * w.a * w.b13 - 6 * w.b * w.c23 - 12 * w.c * w.c13 - 12 * w.b33 + 12 * w.c34 -
        6 * w.a * w.c14 + 6 * w.b * w.a24 + 12 * w.c * w.a14 + 12 * w.c34 - 12 * w.a44 -
        3 * w.a * (-w.b * w.c12 - 2 * w.c2 * w.b1 + w.a * w.b11) -
        3 * w.b * (w.b * w.a22 - 2 * w.a2 * w.c1 - w.a * w.c12) -
        6 * w.c * (w.b * w.a12 + w.a1 * w.b2 + w.a2 * w.b1 - w.a * w.c11) +
        6 * (-w.b * w.c23 - w.c2 * w.b3 + w.a3 * w.b1 + w.a * w.b13) +
        6 * (w.b * w.a24 + w.a2 * w.b4 - w.a4 * w.c1 - w.a * w.c14) +
        (-6 * w.a * w.c1 * w.b2 + 6 * w.a * w.c * w.c11 - 6 * w.b * w.c2 * w.a1 -
         6 * w.b * w.c * w.a12 + 12 * w.c * w.a1 * w.b2 - 12 * w.c * w.c * w.a11 +
         12 * w.b2 * w.c3 - 12 * w.c * w.c13 + 12 * w.a1 * w.c4 + 12 * w.c * w.a14) -
        6 * w.a4 * w.c1 - 6 * w.a4 * w.b2 - 6 * w.a1 * w.b3 - 6 * w.b3 * w.c2 - w.a11 - w.b22 -
        2 * w.c12;

    // Arbitrated A: the (1,1) entry of the SD Weyl block projected from the
    // Weyl component table. Independent of the long tabulated sum.
    const MetricAt at = m.at(p);
    const Frame frame = walker_psi_on_frame(w.a, w.b, w.c);
    const Mat3 wp_proj = wp_projected_from_weyl(cs.weyl, at, frame);
    cs.A = -12.0 * wp_proj[0][0];

    cs.Wp = {{{-cs.A / 12, -3 * cs.B / 12, -(cs.A + cs.S) / 12},
              {3 * cs.B / 12, -2 * cs.S / 12, 3 * cs.B / 12},
              {(cs.A + cs.S) / 12, 3 * cs.B / 12, (cs.A + 2 * cs.S) / 12}}};

    // Einstein block in its tabulated form.
    const double z11 = cs.Upsilon + cs.zeta + w.c * (cs.nu - cs.mu);
    const double z12 = cs.eta + cs.Xi - 2 * cs.theta * w.c;
    const double z13 = cs.Upsilon - cs.zeta - w.c * (cs.nu + cs.mu);
    cs.Z = {{{-z11 / 2, -z12 / 2, -z13 / 2},
             {-(cs.mu - cs.nu) / 2, -cs.theta, -(cs.mu + cs.nu) / 2},
             {z11 / 2, z12 / 2, z13 / 2}}};

    return cs;
}

void riemann_up_closed_alt(const WalkerMetric& m, const Point4& p, double up[4][4][4][4]) {
    const WalkerDerivs w = walker_derivs(m, p);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) up[i][j][k][l] = 0.0;
    // set with antisymmetry in the last index pair only
    auto set = [&](int i, int j, int k, int l, double v) {
        up[i - 1][j - 1][k - 1][l - 1] = v;
        up[i - 1][j - 1][l - 1][k - 1] = -v;
    };
    // kl = 13
    set(1, 1, 1, 3, -w.a11 / 2);
    set(2, 1, 1, 3, -w.c11 / 2);
    set(1, 2, 1, 3, -w.a12 / 2);
    set(2, 2, 1, 3, -w.c12 / 2);
    set(1, 3, 1, 3, -(w.a * w.a11 + w.c * w.a12) / 2);
    set(2, 3, 1, 3, -(2 * w.c13 + 2 * w.c * w.a11 + 2 * w.b * w.a12 - 2 * w.a14 +
                      w.b1 * w.a2 - w.c1 * w.c2) / 4);
    set(3, 3, 1, 3, w.a11 / 2);
    set(4, 3, 1, 3, w.a12 / 2);
    set(1, 4, 1, 3, (2 * w.c13 - w.a14 - w.a * w.c11 - 2 * w.c * w.c12 + w.a2 * w.b1 -
                     w.c1 * w.c2) / 4);
    set(2, 4, 1, 3, -(w.c * w.c11 + w.b * w.c12) / 2);
    set(3, 4, 1, 3, -w.c11 / 2);
    set(4, 4, 1, 3, -w.c12 / 2);
    // kl = 14
    set(1, 1, 1, 4, -w.c11 / 2);
    set(2, 1, 1, 4, -w.b11 / 2);
    set(1, 2, 1, 4, -w.c12 / 2);
    set(2, 2, 1, 4, -w.b12 / 2);
    set(1, 3, 1, 4, -(w.a * w.c11 + w.c * w.c12) / 2);
    set(2, 3, 1, 4, (2 * w.c14 - 2 * w.b13 - 2 * w.c * w.c11 - 2 * w.b * w.c12 + w.a1 * w.b1 -
                     w.b1 * w.c2 + w.b2 * w.c1 - w.c1 * w.c1) / 4);
    set(3, 3, 1, 4, w.c11 / 2);
    set(4, 3, 1, 4, w.c12 / 2);
    set(1, 4, 1, 4, -(2 * w.c14 + 2 * w.a * w.b11 + 2 * w.c * w.b12 - 2 * w.b13 + w.a1 * w.b1 +
                      w.b2 * w.c1 - w.b1 * w.c2 - w.c1 * w.c1) / 4);
    set(2, 4, 1, 4, -(w.c * w.b11 + w.b * w.b12) / 2);
    set(3, 4, 1, 4, w.b11 / 2);
    set(4, 4, 1, 4, w.b12 / 2);
    // kl = 23
    set(1, 1, 2, 3, -w.a12 / 2);
    set(2, 1, 2, 3, -w.c12 / 2);
    set(1, 2, 2, 3, -w.a22 / 2);
    set(2, 2, 2, 3, -w.c22 / 2);
    set(1, 3, 2, 3, -(w.a * w.a12 + w.c * w.a22) / 2);
    set(2, 3, 2, 3, -(2 * w.c23 + 2 * w.c * w.a12 + 2 * w.b * w.a22 - 2 * w.a24 + w.a1 * w.c2 +
                      w.a2 * w.b2 - w.a2 * w.c1 - w.c2 * w.c2) / 4);
    set(3, 3, 2, 3, w.a12 / 2);
    set(4, 3, 2, 3, w.a22 / 2);
    set(1, 4, 2, 3, (2 * w.c23 - 2 * w.a24 - 2 * w.a * w.c11 - 2 * w.c * w.c22 - w.a2 * w.c1 +
                     w.a1 * w.c2 + w.a2 * w.b2 - w.c2 * w.c2) / 4);
    set(2, 4, 2, 3, -(w.c * w.c12 + w.b * w.c22) / 2);
    set(3, 4, 2, 3, w.c12 / 2);
    set(4, 4, 2, 3, w.c22 / 2);
    // kl = 24
    set(1, 1, 2, 4, -w.c12 / 2);
    set(2, 1, 2, 4, -w.b12 / 2);
    set(1, 2, 2, 4, -w.c22 / 2);
    set(2, 2, 2, 4, -w.b22 / 2);
    set(1, 3, 2, 4, -(w.a * w.c12 + w.c * w.c22) / 2);
    set(2, 3, 2, 4, (2 * w.c24 - 2 * w.b23 - 2 * w.c * w.c12 - 2 * w.b * w.c22 + w.a2 * w.b1 -
                     w.c1 * w.c2) / 4);
    set(3, 3, 2, 4, w.c12 / 2);
    set(4, 3, 2, 4, w.c22 / 2);
    set(1, 4, 2, 4, -(2 * w.c24 + 2 * w.a * w.b12 + 2 * w.c * w.b22 - 2 * w.b23 + w.a2 * w.b1 -
                      w.c1 * w.c2) / 4);
    set(2, 4, 2, 4, -(w.c * w.b12 + w.b * w.b22) / 2);
    set(3, 4, 2, 4, w.b12 / 2);
    set(4, 4, 2, 4, w.b22 / 2);
    // kl = 34
    set(1, 1, 3, 4, (2 * w.a14 - 2 * w.c13 + w.c1 * w.c2 - w.a2 * w.b1) / 4);
    set(2, 1, 3, 4, (2 * w.c14 - 2 * w.b13 + w.a1 * w.b1 + w.b2 * w.c1 - w.b1 * w.c2 -
                     w.c1 * w.c1) / 4);
    set(1, 2, 3, 4, (2 * w.a24 - 2 * w.c23 + w.a2 * w.c1 - w.a1 * w.c2 - w.b2 * w.c2 +
                     w.c2 * w.c2) / 4);
    set(2, 2, 3, 4, (2 * w.c24 - 2 * w.b23 + w.a2 * w.b1 - w.c1 * w.c2) / 4);
    set(1, 3, 3, 4, (2 * w.a * w.a14 + 2 * w.c * w.a24 - 2 * w.a * w.c13 - 2 * w.c * w.c23 +
                     w.c * w.a2 * w.c1 + w.a * w.c1 * w.c2 - w.c * w.a1 * w.c2 -
                     w.a * w.a2 * w.b1 - w.c * w.a2 * w.b2 + w.c * w.c2 * w.c2) / 4);
    set(2, 3, 3, 4, (2 * w.c34 + w.a1 * w.c4 - w.b3 * w.c2 + w.b2 * w.c3 - w.a4 * w.c1 +
                     w.c * w.a14 + w.b * w.a24 - w.c * w.c13 - w.b * w.c23 - w.a44 - w.b33) / 2 +
                        (w.a2 * w.b4 + w.a3 * w.b1 - w.a4 * w.b2 - w.a1 * w.b3 +
                         w.a * w.a1 * w.b1 + w.c * w.a1 * w.b2 - w.c * w.c1 * w.c2 +
                         w.b * w.a2 * w.c1 - w.b * w.a1 * w.c2 - w.a * w.c1 * w.c1) / 4);
    set(3, 3, 3, 4, -(2 * w.a14 - 2 * w.c13 - w.a2 * w.b1 + w.c1 * w.c2) / 4);
    set(4, 3, 3, 4, -(2 * w.a24 - 2 * w.c23 - w.a1 * w.c2 + w.a2 * w.c1 - w.a2 * w.b2 +
                      w.c2 * w.c2) / 4);
    set(1, 4, 3, 4, -(2 * w.c34 + w.a1 * w.c4 - w.a4 * w.c1 + w.b2 * w.c3 - w.b3 * w.c2 -
                      w.a * w.c14 - w.c * w.c24 + w.a * w.b13 + w.c * w.b23 - w.a44 - w.b33) / 2 -
                        (w.a3 * w.b1 - w.a1 * w.b3 + w.a2 * w.b4 - w.a4 * w.b2 -
                         w.c * w.c1 * w.c2 + w.a * w.b1 * w.c2 + w.c * w.a1 * w.b2 +
                         w.b * w.a2 * w.b2 - w.a * w.c1 * w.b2 - w.b * w.c2 * w.c2) / 4);
    set(2, 4, 3, 4, -(2 * w.b * w.b23 + 2 * w.c * w.b13 - 2 * w.b * w.c24 - 2 * w.c * w.c14 +
                      w.c * w.b1 * w.c2 + w.b * w.c1 * w.c2 - w.c * w.b2 * w.c1 -
                      w.b * w.b1 * w.a2 - w.c * w.b1 * w.a1 + w.c * w.c1 * w.c1) / 4);
    set(3, 4, 3, 4, (2 * w.b13 - 2 * w.c14 + w.b1 * w.c2 - w.b2 * w.c1 - w.a1 * w.b1 +
                     w.c1 * w.c1) / 4);
    set(4, 4, 3, 4, (2 * w.b23 - 2 * w.c24 - w.a2 * w.b1 + w.c1 * w.c2) / 4);
}

std::array<double, 4> geodesic_rhs(const WalkerMetric& m, const GeodesicState& s) {
    const Christoffels ch = christoffels_walker(m, s.pos);
    std::array<double, 4> acc{};
    for (int i = 0; i < 4; ++i) {
        double v = 0.0;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) v += ch.G[i][j][k] * s.vel[j] * s.vel[k];
        acc[i] = -v;
    }
    return acc;
}

namespace {

double velocity_norm(const WalkerMetric& m, const GeodesicState& s) {
    const MetricAt at = m.at(s.pos);
    double n = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) n += at.g[i][j] * s.vel[i] * s.vel[j];
    return n;
}

} // namespace

Trajectory integrate_geodesic(const WalkerMetric& m, const GeodesicState& s0, double h, int n) {
    if (!(h > 0.0)) throw std::invalid_argument("geodesic step must be positive");
    using State = std::array<double, 8>;
    auto pack = [](const GeodesicState& s) {
        return State{s.pos.u, s.pos.v, s.pos.x, s.pos.y, s.vel[0], s.vel[1], s.vel[2], s.vel[3]};
    };
    auto unpack_state = [](const State& y) {
        GeodesicState s;
        s.pos = {y[0], y[1], y[2], y[3]};
        s.vel = {y[4], y[5], y[6], y[7]};
        return s;
    };
    auto deriv = [&](const State& y) {
        const GeodesicState s = unpack_state(y);
        const auto acc = geodesic_rhs(m, s);
        return State{y[4], y[5], y[6], y[7], acc[0], acc[1], acc[2], acc[3]};
    };

    Trajectory tr;
    State y = pack(s0);
    const double norm0 = velocity_norm(m, s0);
    tr.rows.push_back({0.0, s0, norm0});
    for (int step = 1; step <= n; ++step) {
        const State k1 = deriv(y);
        State y2;
        for (int i = 0; i < 8; ++i) y2[i] = y[i] + 0.5 * h * k1[i];
        const State k2 = deriv(y2);
        State y3;
        for (int i = 0; i < 8; ++i) y3[i] = y[i] + 0.5 * h * k2[i];
        const State k3 = deriv(y3);
        State y4;
        for (int i = 0; i < 8; ++i) y4[i] = y[i] + h * k3[i];
        const State k4 = deriv(y4);
        for (int i = 0; i < 8; ++i)
            y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        const GeodesicState s = unpack_state(y);
        const double norm = velocity_norm(m, s);
        tr.rows.push_back({step * h, s, norm});
        tr.max_norm_drift = std::max(tr.max_norm_drift, std::abs(norm - norm0));
    }
    // ODE residual by dense re-evaluation: fourth-order central differences
    // of the stored velocities against the right-hand side.
    for (size_t k = 2; k + 2 < tr.rows.size(); ++k) {
        const auto rhs = geodesic_rhs(m, tr.rows[k].state);
        for (int i = 0; i < 4; ++i) {
            const double fd = (-tr.rows[k + 2].state.vel[i] + 8 * tr.rows[k + 1].state.vel[i] -
                               8 * tr.rows[k - 1].state.vel[i] + tr.rows[k - 2].state.vel[i]) /
                              (12 * h);
            tr.max_residual = std::max(tr.max_residual, std::abs(fd - rhs[i]));
        }
    }
    return tr;
}

} // namespace walker4
