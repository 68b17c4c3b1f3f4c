#include "walker4/metric.hpp"

#include <stdexcept>

namespace walker4 {

WalkerMetric WalkerMetric::from_abc(Expr a, Expr b, Expr c) {
    WalkerMetric m;
    m.a_ = std::move(a);
    m.b_ = std::move(b);
    m.c_ = std::move(c);
    return m;
}

WalkerMetric WalkerMetric::from_theta(Expr theta) {
    WalkerMetric m;
    m.theta_ = std::move(theta);
    return m;
}

WalkerFields WalkerMetric::fields(const Point4& p, int degree) const {
    WalkerFields f{Jet(0.0, degree), Jet(0.0, degree), Jet(0.0, degree)};
    if (theta_) {
        const Jet th = eval_jet(theta_, p, degree + 2);
        f.a = -2.0 * th.derivative(2).derivative(2);
        f.c = 2.0 * th.derivative(1).derivative(2);
        f.b = -2.0 * th.derivative(1).derivative(1);
    } else {
        f.a = eval_jet(a_, p, degree);
        f.b = eval_jet(b_, p, degree);
        f.c = eval_jet(c_, p, degree);
    }
    return f;
}

std::array<double, 3> WalkerMetric::abc_values(const Point4& p) const {
    const WalkerFields f = fields(p, 0);
    return {f.a.value(), f.b.value(), f.c.value()};
}

MetricAt WalkerMetric::at(const Point4& p) const {
    const auto [a, b, c] = abc_values(p);
    MetricAt m;
    m.g = mat4_zero();
    m.g[0][2] = m.g[2][0] = 1.0;
    m.g[1][3] = m.g[3][1] = 1.0;
    m.g[2][2] = a;
    m.g[2][3] = m.g[3][2] = c;
    m.g[3][3] = b;
    // the canonical form inverts in closed form: -W in the upper-left block
    m.g_inv = mat4_zero();
    m.g_inv[0][0] = -a;
    m.g_inv[0][1] = m.g_inv[1][0] = -c;
    m.g_inv[1][1] = -b;
    m.g_inv[0][2] = m.g_inv[2][0] = 1.0;
    m.g_inv[1][3] = m.g_inv[3][1] = 1.0;
    m.det_g = 1.0;
    return m;
}

MetricEntryJets WalkerMetric::entry_jets(const Point4& p, int degree) const {
    const WalkerFields f = fields(p, degree);
    MetricEntryJets ej;
    ej.degree = degree;
    for (auto& row : ej.entry)
        for (auto& e : row) e = Jet(0.0, degree);
    ej.entry[0][2] = ej.entry[2][0] = Jet(1.0, degree);
    ej.entry[1][3] = ej.entry[3][1] = Jet(1.0, degree);
    ej.entry[2][2] = f.a;
    ej.entry[2][3] = ej.entry[3][2] = f.c;
    ej.entry[3][3] = f.b;
    return ej;
}

WalkerMetric WalkerMetric::swapped() const {
    // (u,v,x,y) -> (v,u,y,x) as a variable substitution, with a <-> b.
    const std::array<int, 4> perm{1, 0, 3, 2};
    WalkerMetric m;
    if (theta_) {
        m.theta_ = substitute_vars(theta_, perm);
        return m;
    }
    m.a_ = substitute_vars(b_, perm);
    m.b_ = substitute_vars(a_, perm);
    m.c_ = substitute_vars(c_, perm);
    return m;
}

ProductMetric ProductMetric::from_omega(Expr omega) {
    ProductMetric m;
    m.omega_ = std::move(omega);
    return m;
}

std::array<std::array<double, 2>, 2> ProductMetric::d_matrix(const Point4& p) const {
    const Jet om = eval_jet(omega_, p, 2);
    std::array<std::array<double, 2>, 2> d;
    d[0][0] = om.partial(MultiIndex(1, 0, 1, 0)); // Omega_rx
    d[0][1] = om.partial(MultiIndex(1, 0, 0, 1)); // Omega_ry
    d[1][0] = om.partial(MultiIndex(0, 1, 1, 0)); // Omega_sx
    d[1][1] = om.partial(MultiIndex(0, 1, 0, 1)); // Omega_sy
    return d;
}

double ProductMetric::det_d(const Point4& p) const {
    const auto d = d_matrix(p);
    return d[0][0] * d[1][1] - d[0][1] * d[1][0];
}

MetricAt ProductMetric::at(const Point4& p) const {
    const auto d = d_matrix(p);
    MetricAt m;
    m.g = mat4_zero();
    for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) {
            m.g[A][2 + B] = d[A][B];
            m.g[2 + B][A] = d[A][B];
        }
    const double det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
    if (det == 0.0) throw std::runtime_error("product metric: singular D at evaluation point");
    m.det_g = det * det;
    m.g_inv = mat4_inverse(m.g);
    return m;
}

MetricEntryJets ProductMetric::entry_jets(const Point4& p, int degree) const {
    const Jet om = eval_jet(omega_, p, degree + 2);
    const Jet d11 = om.derivative(1).derivative(3);
    const Jet d12 = om.derivative(1).derivative(4);
    const Jet d21 = om.derivative(2).derivative(3);
    const Jet d22 = om.derivative(2).derivative(4);
    MetricEntryJets ej;
    ej.degree = degree;
    for (auto& row : ej.entry)
        for (auto& e : row) e = Jet(0.0, degree);
    const Jet dm[2][2] = {{d11, d12}, {d21, d22}};
    for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B) {
            ej.entry[A][2 + B] = dm[A][B];
            ej.entry[2 + B][A] = dm[A][B];
        }
    return ej;
}

MetricAt metric_at_from_entries(const MetricEntryJets& ej) {
    MetricAt m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.g[i][j] = ej.entry[i][j].value();
    m.det_g = mat4_det(m.g);
    if (m.det_g == 0.0) throw std::runtime_error("singular metric at evaluation point");
    m.g_inv = mat4_inverse(m.g);
    return m;
}

} // namespace walker4
