#pragma once

// Shared helpers for the test suites: finite-difference derivative oracle,
// random polynomial fields, random points.

#include <functional>
#include <random>
#include <string>

#include "walker4/expr.hpp"
#include "walker4/jet.hpp"
#include "walker4/point.hpp"

namespace testsupport {

using walker4::Expr;
using walker4::MultiIndex;
using walker4::Point4;

using Field = std::function<double(const Point4&)>;

inline Point4 shift(const Point4& p, int coord, double h) {
    Point4 q = p;
    switch (coord) {
        case 0: q.u += h; break;
        case 1: q.v += h; break;
        case 2: q.x += h; break;
        default: q.y += h; break;
    }
    return q;
}

// Central finite difference in one variable, recursively nested for mixed
// partials of any order.
inline double fd_partial_step(const Field& f, const Point4& p, const MultiIndex& a, double h) {
    for (int coord = 0; coord < 4; ++coord) {
        if (a.k[coord] == 0) continue;
        MultiIndex rest = a;
        rest.k[coord] -= 1;
        Field inner = [&f, rest, h](const Point4& q) { return fd_partial_step(f, q, rest, h); };
        return (inner(shift(p, coord, h)) - inner(shift(p, coord, -h))) / (2.0 * h);
    }
    return f(p);
}

// One step of Richardson extrapolation over the step halving.
inline double fd_partial(const Field& f, const Point4& p, const MultiIndex& a, double h = 1e-2) {
    const double d1 = fd_partial_step(f, p, a, h);
    const double d2 = fd_partial_step(f, p, a, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

// Random polynomial of total degree <= deg in u,v,x,y with coefficients in
// [-1,1], returned as an expression string.
inline std::string random_poly(std::mt19937_64& rng, int deg = 3, double density = 0.7) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    std::string s;
    const char* names[4] = {"u", "v", "x", "y"};
    char buf[64];
    for (int du = 0; du <= deg; ++du)
        for (int dv = 0; dv + du <= deg; ++dv)
            for (int dx = 0; dx + dv + du <= deg; ++dx)
                for (int dy = 0; dy + dx + dv + du <= deg; ++dy) {
                    if (keep(rng) > density) continue;
                    std::snprintf(buf, sizeof buf, "%.6f", coeff(rng));
                    std::string term = buf;
                    const int pw[4] = {du, dv, dx, dy};
                    for (int i = 0; i < 4; ++i) {
                        if (pw[i] == 0) continue;
                        term += "*";
                        term += names[i];
                        if (pw[i] > 1) {
                            term += "^";
                            term += std::to_string(pw[i]);
                        }
                    }
                    if (!s.empty()) s += " + ";
                    s += term;
                }
    if (s.empty()) s = "0";
    return s;
}

inline Point4 random_point(std::mt19937_64& rng, double box = 1.0) {
    std::uniform_real_distribution<double> d(-box, box);
    return Point4{d(rng), d(rng), d(rng), d(rng)};
}

inline Field expr_field(const Expr& e) {
    return [e](const Point4& p) { return walker4::eval_value(e, p); };
}

} // namespace testsupport
