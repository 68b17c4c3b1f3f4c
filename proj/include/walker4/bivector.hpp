#pragma once

#include <array>

#include "walker4/linalg.hpp"

namespace walker4 {

/// Bivector as an antisymmetric rank-2 contravariant tensor.
struct Biv {
    double m[4][4] = {};

    double comp(int i, int j) const { return m[i][j]; }
};

Biv wedge(const Vec4& u, const Vec4& v);
Biv biv_add(const Biv& a, const Biv& b);
Biv biv_sub(const Biv& a, const Biv& b);
Biv biv_scale(const Biv& a, double s);
double biv_max_abs(const Biv& a);

/// Scalar product induced by the metric on bivectors:
/// (U,W) = (1/2) U^{ab} W^{cd} g_{ac} g_{bd}.
double biv_inner(const Biv& u, const Biv& w, const Mat4& g);

/// Half-contraction of an endomorphism kernel K^{ab}_{cd} with a bivector:
/// out^{ab} = (1/2) K^{ab}_{cd} F^{cd}.
Biv biv_apply(const double kernel[4][4][4][4], const Biv& f);

/// The six SD/ASD combinations of a Psi-ON frame, order
/// s+1, s+2, s+3, s-1, s-2, s-3 (with the 1/sqrt(2) normalization).
struct Frame;
std::array<Biv, 6> si_basis(const std::array<Vec4, 4>& e);

} // namespace walker4
