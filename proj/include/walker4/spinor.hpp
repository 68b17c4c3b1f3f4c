#pragma once

#include "walker4/bivector.hpp"
#include "walker4/curvature.hpp"
#include "walker4/metric.hpp"

namespace walker4 {

/// The Walker null tetrad of the chart at a point: covector and vector forms.
struct NullTetrad {
    Vec4 l_down, n_down, m_down, mt_down;
    Vec4 l_up, n_up, m_up, mt_up;
};

/// SD/ASD bivector bases and the change-of-basis matrices between them.
struct BivectorBases {
    std::array<Biv, 3> s_plus;  // coordinate-frame basis, sqrt(2)-scaled
    std::array<Biv, 3> s_minus;
    std::array<Biv, 3> S_plus;  // tetrad-frame basis, unit norm
    std::array<Biv, 3> S_minus;
    std::array<Biv, 3> Z_plus;  // spinor-operator basis
    std::array<Biv, 3> Z_minus;
    Mat3 J, J_inv; // +Z_j = sum_i J_ij s+_i
    Mat3 K, K_inv; // -Z_j = sum_i K_ij s-_i
};

/// Dyad components of the curvature spinors in the spin frames attached to
/// the Walker null tetrad: psi = ASD Weyl, psit = SD Weyl, phi = Ricci
/// spinor (phi[i][j] = Phi_ij), lambda = scalar part.
struct SpinorCurvature {
    std::array<double, 5> psi{};
    std::array<double, 5> psit{};
    double phi[3][3] = {};
    double lambda = 0.0;
};

/// Components of the principal-spinor residual Psit_{A'B'C'D'} pi^C' pi^D' +
/// 2 Lambda pi_A' pi_B' in the {pi,xi} dyad.
struct WpsResidual {
    double r_pipi = 0.0; // = Psit_0
    double r_pixi = 0.0; // = Psit_1
    double r_xixi = 0.0; // = Psit_2 + 2 Lambda
};

/// Result of conjugating SD/ASD blocks into the spinor-operator bases.
struct SpinorBlocks {
    Mat3 Cp = {}; // J^-1 W+ J: the SD Weyl operator on symmetric spinors
    Mat3 Cm = {}; // K^-1 W- K: the ASD analogue
    std::array<double, 5> psit{};
    std::array<double, 5> psi{};
    double sym_defect = 0.0; // asymmetry of the reconstructed quartics
};

NullTetrad walker_tetrad(const WalkerMetric& m, const Point4& p);

BivectorBases bivector_bases(const WalkerMetric& m, const Point4& p);

/// Closed-form dyad components from the curvature-summary scalars.
SpinorCurvature spinor_curvature(const WalkerMetric& m, const Point4& p);

/// Extract Weyl-spinor components from explicit SD/ASD block matrices by
/// conjugating with J(c), K and reading the symmetric-operator layout.
SpinorBlocks spinor_from_blocks(const Mat3& Wp, const Mat3& Wm, double c);

/// The conjugation oracle on the Appendix-One closed-form blocks.
SpinorBlocks spinor_curvature_oracle(const WalkerMetric& m, const Point4& p);

/// Phi_ij = (1/2) X_a E^a_b Y^b over the standard tetrad pairs.
void phi_from_e_tetrad(const double E[4][4], const NullTetrad& t, double phi[3][3]);

/// Rebuild the fully covariant Riemann tensor from the dyad components
/// (epsilon blocks, symmetric spinors, Ricci spinor, trace part), in the
/// frame adapted to the Walker tetrad, pushed to coordinates.
RiemannAt reconstruct_riemann(const SpinorCurvature& sc, const WalkerMetric& m, const Point4& p);

WpsResidual wps_residual(const SpinorCurvature& sc);

/// The vector-spinor dictionary: spinor matrix of a vector given in the
/// tetrad-adapted Psi-ON frame components. s(v,v) = 2 det of the result.
std::array<std::array<double, 2>, 2> a21_matrix(const Vec4& frame_components);

} // namespace walker4
