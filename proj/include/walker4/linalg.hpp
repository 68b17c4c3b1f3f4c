#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace walker4 {

using Vec4 = std::array<double, 4>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat3 mat3_zero() { return {{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}; }
inline Mat4 mat4_zero() { return {{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}}; }

inline Mat4 mat4_identity() {
    Mat4 m = mat4_zero();
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 r = mat3_zero();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 r = mat4_zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

double mat4_det(const Mat4& m);
Mat4 mat4_inverse(const Mat4& m); // throws std::runtime_error if singular

double mat3_det(const Mat3& m);
double mat3_max_abs(const Mat3& m);

/// Eigenvalues of a real 3x3 matrix (possibly complex), sorted by
/// (real part, imaginary part).
std::array<std::complex<double>, 3> mat3_eigenvalues(const Mat3& m);

/// Singular values of a 3x3 matrix, descending.
std::array<double, 3> mat3_singular_values(const Mat3& m);

/// Numerical rank: number of singular values above threshold.
int mat3_rank(const Mat3& m, double threshold);

/// Roots of a complex-coefficient polynomial of degree <= 4 given by
/// coefficients c[0] + c[1] z + ... (c.back() != 0), via Durand-Kerner.
std::array<std::complex<double>, 4> poly_roots(const std::array<double, 5>& c, int degree);

} // namespace walker4
