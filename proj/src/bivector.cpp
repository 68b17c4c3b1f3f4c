#include "walker4/bivector.hpp"

#include <cmath>

namespace walker4 {

Biv wedge(const Vec4& u, const Vec4& v) {
    Biv b;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b.m[i][j] = u[i] * v[j] - u[j] * v[i];
    return b;
}

Biv biv_add(const Biv& a, const Biv& b) {
    Biv r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
}

Biv biv_sub(const Biv& a, const Biv& b) {
    Biv r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
}

Biv biv_scale(const Biv& a, double s) {
    Biv r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] * s;
    return r;
}

double biv_max_abs(const Biv& a) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s = std::max(s, std::abs(a.m[i][j]));
    return s;
}

double biv_inner(const Biv& u, const Biv& w, const Mat4& g) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (u.m[a][b] == 0.0) continue;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) s += u.m[a][b] * w.m[c][d] * g[a][c] * g[b][d];
        }
    return 0.5 * s;
}

Biv biv_apply(const double kernel[4][4][4][4], const Biv& f) {
    Biv r;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) s += kernel[a][b][c][d] * f.m[c][d];
            r.m[a][b] = 0.5 * s;
        }
    return r;
}

std::array<Biv, 6> si_basis(const std::array<Vec4, 4>& e) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Biv e12 = wedge(e[0], e[1]);
    const Biv e13 = wedge(e[0], e[2]);
    const Biv e14 = wedge(e[0], e[3]);
    const Biv e23 = wedge(e[1], e[2]);
    const Biv e24 = wedge(e[1], e[3]);
    const Biv e34 = wedge(e[2], e[3]);
    std::array<Biv, 6> s;
    s[0] = biv_scale(biv_add(e12, e34), inv_sqrt2);
    s[1] = biv_scale(biv_add(e13, e24), inv_sqrt2);
    s[2] = biv_scale(biv_sub(e14, e23), inv_sqrt2);
    s[3] = biv_scale(biv_sub(e12, e34), inv_sqrt2);
    s[4] = biv_scale(biv_sub(e13, e24), inv_sqrt2);
    s[5] = biv_scale(biv_add(e14, e23), inv_sqrt2);
    return s;
}

} // namespace walker4
