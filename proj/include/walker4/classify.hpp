#pragma once

#include <complex>
#include <string>
#include <vector>

#include "walker4/linalg.hpp"

namespace walker4 {

/// The four-case classification of the SD Weyl endomorphism of a Walker
/// geometry, plus the flat case.
enum class WeylPlusCase {
    FlatSD,        // S = A = B = 0: W+ vanishes
    Case_i_22Ia,   // S != 0, S^2 + A S + 3 B^2 = 0: type {22}Ia, diagonalizable
    Case_ii_double,// S != 0, discriminant != 0: type {211}II or {11bar2}II
    Case_iii_4II,  // S = B = 0, A != 0: type {4}II, nilpotent of index 2
    Case_iv_31III, // S = 0, B != 0: type {31}III, JCF J3(0)
};

const char* to_string(WeylPlusCase c);

struct WeylPlusClass {
    WeylPlusCase kase = WeylPlusCase::FlatSD;
    std::array<double, 3> eigenvalues{}; // {-S/6, S/12, S/12}
    double discriminant = 0.0;           // S^2 + A S + 3 B^2
    double S = 0.0, A = 0.0, B = 0.0;
    std::string jcf_label;
    bool marginal = false; // a decision quantity sits within 2x of the threshold
};

/// Case decision from the three block scalars. scale is a magnitude
/// reference from the curvature summary (must be > 0 for nonflat input).
WeylPlusClass classify_weyl_plus(double S, double A, double B, double scale, double tol = 1e-8);

struct JcfReport {
    int rank_at_minus_s6 = 0; // measured rank of (W+ + (S/6) I)
    int rank_at_s12 = 0;      // measured rank of (W+ - (S/12) I)
    int expected_rank_at_minus_s6 = 0;
    int expected_rank_at_s12 = 0;
    bool diagonalizable_expected = false;
    bool diagonalizable_measured = false;
    bool consistent = false;
};

/// Check the measured Jordan data of an explicit W+ matrix against the
/// case prediction: ranks of W+ - lambda I at the two eigenvalues.
JcfReport verify_jcf(const Mat3& Wp, const WeylPlusClass& cls, double tol = 1e-8);

/// Root-multiplicity pattern of the quartic
///   Psi0 + 4 Psi1 z + 6 Psi2 z^2 + 4 Psi3 z^3 + Psi4 z^4;
/// vanishing leading coefficients count as roots at infinity.
struct RootPattern {
    std::string label; // e.g. "{4}", "{22}", "{1111}", "{11̄11̄}", "zero"
    bool zero = false;
    int roots_at_infinity = 0;
    struct Cluster {
        std::complex<double> root;
        int multiplicity;
        bool real;
        bool at_infinity;
    };
    std::vector<Cluster> clusters;
};

RootPattern classify_weyl_minus(const std::array<double, 5>& psi, double tol = 1e-8);

} // namespace walker4
