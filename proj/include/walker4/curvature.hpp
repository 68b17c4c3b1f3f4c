#pragma once

#include <vector>

#include "walker4/metric.hpp"

namespace walker4 {

/// Christoffel symbols G[i][j][k] = Gamma^i_{jk}, symmetric in (j,k).
struct Christoffels {
    double G[4][4][4] = {};
};

/// Christoffel symbols as jets (for derivative-hungry consumers).
struct ChristoffelJets {
    std::array<Jet, 64> G; // index i*16 + j*4 + k
    int degree = 0;
    const Jet& at(int i, int j, int k) const { return G[i * 16 + j * 4 + k]; }
    Jet& at(int i, int j, int k) { return G[i * 16 + j * 4 + k]; }
};

struct RiemannAt {
    double up[4][4][4][4] = {};   // R^i_{jkl}
    double down[4][4][4][4] = {}; // R_{ijkl}
};

/// Psi-orthonormal frame, norms (+,+,-,-), coordinate components.
struct Frame {
    Vec4 e[4] = {};
};

/// Self-dual / anti-self-dual blocks of the curvature endomorphism in an
/// SD/ASD bivector basis built on a frame. Matrices are frame dependent;
/// their spectra are not.
struct WeylBlocks {
    Mat3 Wp = {};
    Mat3 Wm = {};
    Mat3 Z = {};
    Frame frame;
    double S = 0.0;
};

/// Everything Appendix One evaluates at a point.
struct CurvatureSummary {
    double ricci[4][4] = {};
    double S = 0.0;
    double E[4][4] = {}; // Einstein endomorphism E^i_j
    // Named entries of the Einstein endomorphism.
    double theta = 0, mu = 0, nu = 0, zeta = 0, eta = 0, Xi = 0, Upsilon = 0;
    double weyl[4][4][4][4] = {}; // C_{ijkl} closed form
    // Block scalars of the SD/ASD Weyl matrices.
    double P = 0, Q = 0, T = 0, X = 0, Y = 0;
    double A = 0;         // arbitrated value (projection of the SD Weyl block)
    double A_literal = 0; // the long tabulated sum for A, kept for forensics
    double B = 0;
    Mat3 Wp = {}; // SD Weyl block assembled from (S, A, B)
    Mat3 Wm = {}; // ASD Weyl block assembled from the block scalars
    Mat3 Z = {};  // Einstein block, tabulated form
    double Lambda = 0.0;
    double abc[3] = {}; // field values at the point
};

// --- Christoffel symbols ---------------------------------------------------

/// Closed-form Christoffel table of the Walker chart.
Christoffels christoffels_walker(const WalkerMetric& m, const Point4& p);

/// Generic oracle: Gamma^i_jk = (1/2) g^{im}(g_{mj,k} + g_{mk,j} - g_{jk,m}).
Christoffels christoffels_generic(const MetricEntryJets& ej, const Mat4& g_inv);

/// Same, but jet-valued (degree ej.degree - 1); the inverse metric is
/// inverted in jet arithmetic.
ChristoffelJets christoffel_jets_generic(const MetricEntryJets& ej);

// --- Riemann ---------------------------------------------------------------

/// Closed form: the fully covariant component table, mixed form by raising.
RiemannAt riemann_walker(const WalkerMetric& m, const Point4& p);

/// Generic oracle: the coordinate formula on Christoffel jets, lowered
/// with the metric.
RiemannAt riemann_generic(const MetricEntryJets& ej, const MetricAt& at);

/// Redundant closed form for the mixed-index components, transcribed
/// independently of riemann_walker; kept so the oracle can pinpoint
/// entries where the two routes disagree.
void riemann_up_closed_alt(const WalkerMetric& m, const Point4& p, double up[4][4][4][4]);

// --- Contractions ----------------------------------------------------------

/// Ricci contraction R_ab = R^c_{bac}.
void ricci_from_riemann(const RiemannAt& r, double ricci[4][4]);
double scalar_from_ricci(const double ricci[4][4], const Mat4& g_inv);

/// Weyl tensor from Riemann/Ricci/S by removing the trace parts.
void weyl_from_riemann(const RiemannAt& r, const double ricci[4][4], double S, const Mat4& g,
                       double weyl[4][4][4][4]);

// --- Summary and blocks ----------------------------------------------------

CurvatureSummary curvature_summary(const WalkerMetric& m, const Point4& p);

/// The standard Psi-ON frame of a Walker chart.
Frame walker_psi_on_frame(double a, double b, double c);

/// Signature-aware Gram-Schmidt frame with the coordinate orientation.
/// Throws if the signature at p is not (+,+,-,-).
Frame psi_on_frame(const MetricAt& at);

/// Project a curvature-like endomorphism (given by the full Riemann tensor)
/// onto the SD/ASD bivector bases of the frame. Returns W+/W-/Z with the
/// S/12 trace part removed.
WeylBlocks project_blocks(const RiemannAt& r, const MetricAt& at, const Frame& frame);

/// Generic end-to-end: oracle Riemann, then projection. orientation=-1
/// reverses the frame orientation (swapping the SD and ASD labels).
WeylBlocks weyl_blocks_generic(const MetricEntryJets& ej, const MetricAt& at, int orientation = +1);

// --- Geodesics ---------------------------------------------------------

struct GeodesicState {
    Point4 pos;
    std::array<double, 4> vel{};
};

/// ddot x^i = -Gamma^i_jk xdot^j xdot^k.
std::array<double, 4> geodesic_rhs(const WalkerMetric& m, const GeodesicState& s);

struct Trajectory {
    struct Row {
        double s;
        GeodesicState state;
        double norm; // g(xdot, xdot)
    };
    std::vector<Row> rows;
    double max_norm_drift = 0.0;
    double max_residual = 0.0; // finite-difference re-evaluation of the ODE
};

/// Fixed-step RK4.
Trajectory integrate_geodesic(const WalkerMetric& m, const GeodesicState& s0, double h, int n);

} // namespace walker4
