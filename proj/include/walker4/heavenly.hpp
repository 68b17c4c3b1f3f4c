#pragma once

#include <array>
#include <utility>

#include "walker4/curvature.hpp"
#include "walker4/expr.hpp"
#include "walker4/metric.hpp"

namespace walker4 {

/// Residuals of the parallel-spinor conditions a_u + c_v = 0 = b_v + c_u
/// at a point, plus the covariant-derivative cross check on du^dv.
struct LsrResidual {
    double r1 = 0.0; // a_1 + c_2
    double r2 = 0.0; // b_2 + c_1
    // nabla_3 / nabla_4 of du^dv: component along du^dv and the rest.
    double factor3 = 0.0, factor4 = 0.0; // should equal r1/2, r2/2
    double offray3 = 0.0, offray4 = 0.0; // should vanish identically
};

LsrResidual lsr_parallel_residual(const WalkerMetric& m, const Point4& p);

/// The wave operator on a scalar field; the first-derivative terms drop
/// when the parallel-spinor conditions hold.
double box_scalar(const WalkerMetric& m, const Expr& f, const Point4& p);

/// Heavenly-structure analysis of a potential theta at a point.
struct HeavenlyReport {
    double lsr_r1 = 0.0, lsr_r2 = 0.0; // identically zero for potential metrics
    double P = 0.0;                    // theta_ux + theta_vy + theta_uu theta_vv - theta_uv^2
    double A_via_box = 0.0;            // 12 box(P)
    double second_heavenly_residual = 0.0; // the same functional, as a residual
    std::array<double, 5> psi_from_theta{}; // minus the fourth u/v derivatives
    double phi_from_theta[3] = {};          // P_11, P_12, P_22 -> (Phi02, Phi12, Phi22)
    bool einstein_affine_flag = false;      // delta_A delta_B P = 0 at p
};

HeavenlyReport theta_analysis(const Expr& theta, const Point4& p, double tol = 1e-9);

/// Assertion residuals comparing the theta formulas against the curvature
/// and spinor modules on the metric built from the potential.
struct ThetaCrossCheck {
    double s_abs = 0.0;
    double b_abs = 0.0;
    double psit_pattern = 0.0;  // deviation of psit from (0,0,0,0,-A/24)
    double psi_vs_theta = 0.0;  // dyad components vs fourth derivatives
    double phi_vs_theta = 0.0;  // Ricci spinor vs the Hessian of P
    double a_vs_box = 0.0;      // summary A vs 12 box(P)
    double max_residual() const;
};

ThetaCrossCheck cross_check_theta(const Expr& theta, const Point4& p);

/// Residual of the second heavenly equation for a potential.
double second_heavenly_residual(const Expr& Theta, const Point4& p);

/// ParaKahler (double-Walker) analysis of a product metric at a point.
struct ParaKahlerReport {
    double det_D = 0.0;
    double first_heavenly_residual = 0.0; // det D - 1
    double omega[2][2] = {};              // symplectic-form coefficients = D entries
    double dist_residual_pi = 0.0;  // Gamma^{C'}_{aB} block, parallel <dr,ds>
    double dist_residual_chi = 0.0; // Gamma^{C}_{aB'} block, parallel <dx,dy>
    double e_block_residual = 0.0;  // Einstein endomorphism off-block entries
    double S = 0.0;
    double wp_spectrum_residual = 0.0;
    bool spectrum_ok = false; // {22}Ia pattern (or zero) per Corollary 4.4
    bool det_positive = false;
};

ParaKahlerReport para_kahler_analysis(const ProductMetric& pm, const Point4& p, double tol = 1e-9);

/// Parallelism residual of the second distribution via the bivector m^n:
/// the six independent components of nabla_i(m^n) - lambda_i m^n for
/// i = 3, 4, plus redundant closed forms of the derivatives for forensics.
struct SecondDistResidual {
    std::array<double, 6> rho3{}, rho4{};
    double lambda3 = 0.0, lambda4 = 0.0;
    double literal_mismatch3 = 0.0; // direct covariant derivative vs closed form
    double literal_mismatch4 = 0.0;
    double max_abs() const;
};

SecondDistResidual second_distribution_residual(const WalkerMetric& m, const Point4& p);

/// The scalar identities of a double-Walker chart. The precondition (the
/// second distribution is parallel here) is reported, not thrown.
struct DoubleWalkerReport {
    bool precondition_ok = false;
    double precondition_residual = 0.0;
    double r_b_plus_sc = 0.0;   // B + S c
    double r_three_bc = 0.0;    // 3 B c - A - S
    double r_a_ab[3] = {};      // A_AB = 0 via Phi_02, Phi_12, Phi_22
    double r_discriminant = 0.0; // S^2 + A S + 3 B^2
};

DoubleWalkerReport double_walker_identities(const WalkerMetric& m, const Point4& p,
                                            double tol = 1e-8);

} // namespace walker4
