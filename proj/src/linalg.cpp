#include "walker4/linalg.hpp"

#include <algorithm>

namespace walker4 {

namespace {

// Gaussian elimination with partial pivoting on an augmented [m | I] system.
bool invert4(Mat4 a, Mat4& out) {
    Mat4 inv = mat4_identity();
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return false;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    out = inv;
    return true;
}

} // namespace

double mat4_det(const Mat4& m) {
    Mat4 a = m;
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

Mat4 mat4_inverse(const Mat4& m) {
    Mat4 out;
    if (!invert4(m, out)) throw std::runtime_error("singular 4x4 matrix");
    return out;
}

double mat3_det(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double mat3_max_abs(const Mat3& m) {
    double s = 0.0;
    for (const auto& row : m)
        for (double x : row) s = std::max(s, std::abs(x));
    return s;
}

std::array<std::complex<double>, 3> mat3_eigenvalues(const Mat3& m) {
    // det(z I - m) = z^3 + c2 z^2 + c1 z + c0
    const double tr = m[0][0] + m[1][1] + m[2][2];
    const double m2 = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) +
                      (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                      (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    const double det = mat3_det(m);
    const double c2 = -tr, c1 = m2, c0 = -det;

    // Depressed cubic t^3 + p t + q with z = t - c2/3.
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    std::array<std::complex<double>, 3> z;
    if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        const double s1 = std::cbrt(-q / 2.0 + r);
        const double s2 = std::cbrt(-q / 2.0 - r);
        z[0] = s1 + s2;
        const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
        z[1] = w * s1 + std::conj(w) * s2;
        z[2] = std::conj(w) * s1 + w * s2;
    } else {
        // Three real roots; trigonometric form.
        const double rho = std::sqrt(-p * p * p / 27.0);
        const double theta = std::acos(std::clamp(-q / (2.0 * rho), -1.0, 1.0));
        const double mag = 2.0 * std::sqrt(-p / 3.0);
        for (int k = 0; k < 3; ++k)
            z[k] = mag * std::cos((theta + 2.0 * M_PI * k) / 3.0);
    }
    for (auto& zi : z) zi -= shift;
    std::sort(z.begin(), z.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

std::array<double, 3> mat3_singular_values(const Mat3& m) {
    // One-sided Jacobi: orthogonalize the columns by plane rotations. Small
    // singular values come out to full absolute accuracy, which the rank
    // tests at tolerance ~1e-8 * scale rely on.
    Mat3 a = m;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (int k = 0; k < 3; ++k) {
                    app += a[k][p] * a[k][p];
                    aqq += a[k][q] * a[k][q];
                    apq += a[k][p] * a[k][q];
                }
                off = std::max(off, std::abs(apq));
                if (apq == 0.0) continue;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < 3; ++k) {
                    const double xp = a[k][p], xq = a[k][q];
                    a[k][p] = c * xp - s * xq;
                    a[k][q] = s * xp + c * xq;
                }
            }
        if (off == 0.0) break;
    }
    std::array<double, 3> sv{};
    for (int j = 0; j < 3; ++j) {
        double n = 0;
        for (int k = 0; k < 3; ++k) n += a[k][j] * a[k][j];
        sv[j] = std::sqrt(n);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

int mat3_rank(const Mat3& m, double threshold) {
    const auto sv = mat3_singular_values(m);
    int r = 0;
    for (double s : sv)
        if (s > threshold) ++r;
    return r;
}

std::array<std::complex<double>, 4> poly_roots(const std::array<double, 5>& c, int degree) {
    std::array<std::complex<double>, 4> roots{};
    if (degree <= 0) return roots;
    if (degree == 1) {
        roots[0] = -c[0] / c[1];
        return roots;
    }
    // Durand-Kerner with distinct non-real starting points.
    std::array<std::complex<double>, 4> z;
    const std::complex<double> seed(0.4, 0.9);
    z[0] = seed;
    for (int i = 1; i < degree; ++i) z[i] = z[i - 1] * seed;

    auto eval = [&](std::complex<double> w) {
        std::complex<double> r = c[degree];
        for (int k = degree - 1; k >= 0; --k) r = r * w + c[k];
        return r;
    };

    for (int iter = 0; iter < 400; ++iter) {
        double delta = 0.0;
        for (int i = 0; i < degree; ++i) {
            std::complex<double> denom = c[degree];
            for (int j = 0; j < degree; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) == 0.0) continue;
            const std::complex<double> step = eval(z[i]) / denom;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-15) break;
    }
    for (int i = 0; i < degree; ++i) roots[i] = z[i];
    return roots;
}

} // namespace walker4
