#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace walker4 {

/// Error raised by jet arithmetic on domain violations (division by a jet
/// with vanishing constant term, log/sqrt of a non-positive value, ...).
struct JetError : std::runtime_error {
    explicit JetError(const std::string& what) : std::runtime_error(what) {}
};

/// Differentiation orders (k1,k2,k3,k4) for the coordinates (u,v,x,y).
struct MultiIndex {
    std::array<int, 4> k{0, 0, 0, 0};

    MultiIndex() = default;
    MultiIndex(int k1, int k2, int k3, int k4) : k{k1, k2, k3, k4} {}

    int total() const { return k[0] + k[1] + k[2] + k[3]; }
    int operator[](int i) const { return k[i]; }
    bool operator==(const MultiIndex& o) const { return k == o.k; }

    /// alpha! as a double.
    double factorial() const;
};

/// Truncated multivariate Taylor expansion of a scalar field at a point.
///
/// Coefficients store f^(alpha)(p)/alpha! for every |alpha| <= degree;
/// arithmetic is exact truncation at total degree. Jets are immutable
/// values and all operations are pure.
class Jet {
public:
    Jet() : Jet(0.0, 0) {}
    Jet(double value, int degree);

    /// Jet of the coordinate function x_index at the given value.
    /// index is 1-based (1..4) matching the numeral convention u,v,x,y.
    static Jet variable(int index, double value, int degree);
    static Jet constant(double value, int degree) { return Jet(value, degree); }

    int degree() const { return deg_; }
    int size() const { return static_cast<int>(c_.size()); }

    /// Value of the field at the base point (coefficient of the zero index).
    double value() const { return c_[0]; }

    /// Taylor coefficient f^(alpha)/alpha!.
    double coeff(const MultiIndex& a) const;

    /// Exact partial derivative: alpha! * coeff(alpha).
    double partial(const MultiIndex& a) const;

    /// Jet of the partial derivative d/dx_index (1-based); degree drops by one.
    Jet derivative(int index) const;

    /// Copy truncated to a lower degree.
    Jet truncated(int new_degree) const;

    Jet operator-() const;
    friend Jet operator+(const Jet& f, const Jet& g);
    friend Jet operator-(const Jet& f, const Jet& g);
    friend Jet operator*(const Jet& f, const Jet& g);
    friend Jet operator/(const Jet& f, const Jet& g);

    friend Jet operator+(const Jet& f, double s);
    friend Jet operator+(double s, const Jet& f);
    friend Jet operator-(const Jet& f, double s);
    friend Jet operator*(const Jet& f, double s);
    friend Jet operator*(double s, const Jet& f);

    friend Jet sin(const Jet& f);
    friend Jet cos(const Jet& f);
    friend Jet exp(const Jet& f);
    friend Jet log(const Jet& f);
    friend Jet sqrt(const Jet& f);
    friend Jet sinh(const Jet& f);
    friend Jet cosh(const Jet& f);

    /// Integer power; negative exponents require a nonzero constant term.
    friend Jet powi(const Jet& f, int n);

    /// Composition with a univariate Taylor series: series[k] is the k-th
    /// Taylor coefficient of the outer function at f's constant term.
    friend Jet compose_series(const Jet& f, const std::vector<double>& series);

private:
    int deg_;
    std::vector<double> c_;

    static Jet inverse(const Jet& f);
    static void check_same_degree(const Jet& f, const Jet& g, const char* op);
};

} // namespace walker4
