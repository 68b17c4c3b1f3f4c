#pragma once

#include <array>

#include "walker4/expr.hpp"
#include "walker4/jet.hpp"
#include "walker4/linalg.hpp"
#include "walker4/point.hpp"

namespace walker4 {

/// Metric components, inverse, and determinant at a point.
struct MetricAt {
    Mat4 g;
    Mat4 g_inv;
    double det_g = 0.0;
};

/// Jets of every metric component at a point; the substrate of the generic
/// curvature oracle. Symmetric: entry[i][j] == entry[j][i].
struct MetricEntryJets {
    std::array<std::array<Jet, 4>, 4> entry;
    int degree = 0;
};

/// Values and first/second partials of the Walker fields a, b, c at a point.
struct WalkerFields {
    Jet a, b, c; // jets of the requested degree
    double a_val() const { return a.value(); }
    double b_val() const { return b.value(); }
    double c_val() const { return c.value(); }
};

/// Walker canonical-form metric: g = [[0,I],[I,W]] with W = [[a,c],[c,b]].
///
/// Either the three fields are supplied directly, or the metric is built
/// from a potential theta via a = -2 theta_vv, c = 2 theta_uv,
/// b = -2 theta_uu; in the latter case field jets are extracted from jets
/// of theta computed two degrees higher.
class WalkerMetric {
public:
    static WalkerMetric from_abc(Expr a, Expr b, Expr c);
    static WalkerMetric from_theta(Expr theta);

    bool has_theta() const { return static_cast<bool>(theta_); }
    const Expr& theta() const { return theta_; }

    WalkerFields fields(const Point4& p, int degree) const;
    std::array<double, 3> abc_values(const Point4& p) const;

    MetricAt at(const Point4& p) const;
    MetricEntryJets entry_jets(const Point4& p, int degree) const;

    /// The Walker interchange (u,v,x,y)->(v,u,y,x), a<->b: another Walker
    /// metric whose geometry at swapped points mirrors this one.
    WalkerMetric swapped() const;

private:
    WalkerMetric() = default;
    Expr a_, b_, c_; // unset when built from theta
    Expr theta_;
};

/// Product-form (paraKahler) metric: g = [[0,D],[D^T,0]] in the chart
/// (r,s,x,y), with D_AB' the mixed second derivatives of a potential Omega.
class ProductMetric {
public:
    static ProductMetric from_omega(Expr omega);

    const Expr& omega() const { return omega_; }

    /// D matrix at p: rows indexed by (r,s), columns by (x,y).
    std::array<std::array<double, 2>, 2> d_matrix(const Point4& p) const;
    double det_d(const Point4& p) const;

    MetricAt at(const Point4& p) const; // throws EvalError/std::runtime_error if D singular
    MetricEntryJets entry_jets(const Point4& p, int degree) const;

private:
    Expr omega_;
};

/// Assemble MetricAt from entry jets (values only).
MetricAt metric_at_from_entries(const MetricEntryJets& ej);

} // namespace walker4
