#include "walker4/classify.hpp"

#include <algorithm>
#include <cmath>

namespace walker4 {

const char* to_string(WeylPlusCase c) {
    switch (c) {
        case WeylPlusCase::FlatSD: return "FlatSD";
        case WeylPlusCase::Case_i_22Ia: return "Case_i_22Ia";
        case WeylPlusCase::Case_ii_double: return "Case_ii_double";
        case WeylPlusCase::Case_iii_4II: return "Case_iii_4II";
        case WeylPlusCase::Case_iv_31III: return "Case_iv_31III";
    }
    return "?";
}

WeylPlusClass classify_weyl_plus(double S, double A, double B, double scale, double tol) {
    WeylPlusClass out;
    out.S = S;
    out.A = A;
    out.B = B;
    out.discriminant = S * S + A * S + 3 * B * B;
    out.eigenvalues = {-S / 6.0, S / 12.0, S / 12.0};

    const double t1 = tol * scale;       // threshold for S, A, B
    const double t2 = tol * scale * scale; // threshold for the discriminant

    const bool s_small = std::abs(S) <= t1;
    const bool a_small = std::abs(A) <= t1;
    const bool b_small = std::abs(B) <= t1;
    const bool disc_small = std::abs(out.discriminant) <= t2;

    if (s_small && a_small && b_small) {
        out.kase = WeylPlusCase::FlatSD;
        out.jcf_label = "0 (zero endomorphism)";
    } else if (!s_small && disc_small) {
        out.kase = WeylPlusCase::Case_i_22Ia;
        out.jcf_label = "diag(-S/6, S/12, S/12)";
    } else if (!s_small) {
        out.kase = WeylPlusCase::Case_ii_double;
        out.jcf_label = "diag(-S/6) + J2(S/12)";
    } else if (b_small) {
        out.kase = WeylPlusCase::Case_iii_4II;
        out.jcf_label = "0 + J2(0)";
    } else {
        out.kase = WeylPlusCase::Case_iv_31III;
        out.jcf_label = "J3(0)";
    }

    // Flag boundary cases: any decision quantity within a factor 2 of the
    // threshold it was compared against.
    auto near = [](double q, double thr) {
        if (thr == 0.0) return false;
        const double r = std::abs(q) / thr;
        return r >= 0.5 && r <= 2.0;
    };
    out.marginal = near(S, t1) || near(B, t1) || near(A, t1) || near(out.discriminant, t2);
    return out;
}

JcfReport verify_jcf(const Mat3& Wp, const WeylPlusClass& cls, double tol) {
    JcfReport rep;
    const double S = cls.S;
    const double scale = std::max({mat3_max_abs(Wp), std::abs(S), 1e-30});
    const double thr = tol * scale;

    Mat3 m1 = Wp, m2 = Wp; // W+ + (S/6) I and W+ - (S/12) I
    for (int i = 0; i < 3; ++i) {
        m1[i][i] += S / 6.0;
        m2[i][i] -= S / 12.0;
    }
    rep.rank_at_minus_s6 = mat3_rank(m1, thr);
    rep.rank_at_s12 = mat3_rank(m2, thr);

    switch (cls.kase) {
        case WeylPlusCase::FlatSD:
            rep.expected_rank_at_minus_s6 = 0;
            rep.expected_rank_at_s12 = 0;
            rep.diagonalizable_expected = true;
            break;
        case WeylPlusCase::Case_i_22Ia:
            rep.expected_rank_at_minus_s6 = 2;
            rep.expected_rank_at_s12 = 1;
            rep.diagonalizable_expected = true;
            break;
        case WeylPlusCase::Case_ii_double:
            rep.expected_rank_at_minus_s6 = 2;
            rep.expected_rank_at_s12 = 2;
            rep.diagonalizable_expected = false;
            break;
        case WeylPlusCase::Case_iii_4II:
            // single eigenvalue 0 with geometric multiplicity 2
            rep.expected_rank_at_minus_s6 = 1;
            rep.expected_rank_at_s12 = 1;
            rep.diagonalizable_expected = false;
            break;
        case WeylPlusCase::Case_iv_31III:
            rep.expected_rank_at_minus_s6 = 2;
            rep.expected_rank_at_s12 = 2;
            rep.diagonalizable_expected = false;
            break;
    }

    // Diagonalizability measured through geometric multiplicities.
    const bool s_zero = std::abs(S) <= thr;
    if (s_zero) {
        rep.diagonalizable_measured = rep.rank_at_s12 == 0; // only eigenvalue is 0
    } else {
        rep.diagonalizable_measured =
            (3 - rep.rank_at_minus_s6) == 1 && (3 - rep.rank_at_s12) == 2;
    }
    rep.consistent = rep.rank_at_minus_s6 == rep.expected_rank_at_minus_s6 &&
                     rep.rank_at_s12 == rep.expected_rank_at_s12 &&
                     rep.diagonalizable_measured == rep.diagonalizable_expected;
    return rep;
}

RootPattern classify_weyl_minus(const std::array<double, 5>& psi, double tol) {
    RootPattern out;
    std::array<double, 5> c{psi[0], 4 * psi[1], 6 * psi[2], 4 * psi[3], psi[4]};
    double cscale = 0.0;
    for (double x : c) cscale = std::max(cscale, std::abs(x));
    if (cscale == 0.0) {
        out.zero = true;
        out.label = "zero";
        return out;
    }

    int degree = 4;
    while (degree > 0 && std::abs(c[degree]) <= tol * cscale) {
        --degree;
        ++out.roots_at_infinity;
    }
    if (degree == 0) {
        // nonzero constant: all four roots at infinity
        out.roots_at_infinity = 4;
    }

    std::vector<std::complex<double>> roots;
    if (degree >= 1) {
        const auto rr = poly_roots(c, degree);
        for (int i = 0; i < degree; ++i) roots.push_back(rr[i]);
    }

    // Cluster radius: repeated roots split like eps^(1/multiplicity), so a
    // generous relative radius is required to re-merge them.
    double rmax = 0.0;
    for (const auto& z : roots) rmax = std::max(rmax, std::abs(z));
    const double radius = std::pow(std::max(tol, 1e-14), 0.25) * (1.0 + rmax);

    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> sum = roots[i];
        int mult = 1;
        used[i] = true;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(roots[j] - roots[i]) <= radius) {
                sum += roots[j];
                ++mult;
                used[j] = true;
            }
        }
        RootPattern::Cluster cl;
        cl.root = sum / static_cast<double>(mult);
        cl.multiplicity = mult;
        cl.real = std::abs(cl.root.imag()) <= radius;
        cl.at_infinity = false;
        if (cl.real) cl.root = std::complex<double>(cl.root.real(), 0.0);
        out.clusters.push_back(cl);
    }
    if (out.roots_at_infinity > 0) {
        RootPattern::Cluster cl;
        cl.root = std::complex<double>(0, 0);
        cl.multiplicity = out.roots_at_infinity;
        cl.real = true;
        cl.at_infinity = true;
        out.clusters.push_back(cl);
    }

    // Pair complex clusters into conjugate pairs; order tokens by
    // multiplicity (descending), real tokens first among equals.
    std::sort(out.clusters.begin(), out.clusters.end(), [](const auto& a, const auto& b) {
        if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
        if (a.real != b.real) return a.real;
        return a.root.real() < b.root.real();
    });
    std::string label = "{";
    std::vector<bool> paired(out.clusters.size(), false);
    for (size_t i = 0; i < out.clusters.size(); ++i) {
        if (paired[i]) continue;
        const auto& cl = out.clusters[i];
        if (cl.real) {
            label += std::to_string(cl.multiplicity);
        } else {
            // find the conjugate partner
            for (size_t j = i + 1; j < out.clusters.size(); ++j) {
                if (paired[j] || out.clusters[j].real) continue;
                if (out.clusters[j].multiplicity == cl.multiplicity &&
                    std::abs(out.clusters[j].root - std::conj(cl.root)) <=
                        radius * 4.0) {
                    paired[j] = true;
                    break;
                }
            }
            label += std::to_string(cl.multiplicity);
            label += std::to_string(cl.multiplicity);
            label += "̄"; // combining macron marks the conjugate member
        }
    }
    label += "}";
    out.label = label;
    return out;
}

} // namespace walker4
