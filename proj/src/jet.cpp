#include "walker4/jet.hpp"

#include <cmath>
#include <mutex>

namespace walker4 {

namespace {

// Term layout for one truncation degree: the list of multi-indices with
// |alpha| <= d (ordered by total degree, then lexicographically) and a
// packed-index lookup back to positions.
struct Layout {
    int degree = 0;
    std::vector<MultiIndex> terms;
    std::vector<int> pos; // packed (k1,k2,k3,k4) -> term position, -1 if absent

    int pack(int k1, int k2, int k3, int k4) const {
        const int n = degree + 1;
        return ((k1 * n + k2) * n + k3) * n + k4;
    }

    int position(const MultiIndex& a) const {
        if (a.total() > degree) return -1;
        return pos[pack(a.k[0], a.k[1], a.k[2], a.k[3])];
    }
};

const Layout& layout(int degree) {
    constexpr int kMaxDegree = 12;
    if (degree < 0 || degree > kMaxDegree) throw JetError("jet degree out of range [0,12]");
    static std::vector<Layout> cache = [] {
        std::vector<Layout> all(kMaxDegree + 1);
        for (int d = 0; d <= kMaxDegree; ++d) {
            Layout& L = all[d];
            L.degree = d;
            const int n = d + 1;
            L.pos.assign(n * n * n * n, -1);
            for (int t = 0; t <= d; ++t)
                for (int k1 = t; k1 >= 0; --k1)
                    for (int k2 = t - k1; k2 >= 0; --k2)
                        for (int k3 = t - k1 - k2; k3 >= 0; --k3) {
                            const int k4 = t - k1 - k2 - k3;
                            L.pos[L.pack(k1, k2, k3, k4)] = static_cast<int>(L.terms.size());
                            L.terms.push_back(MultiIndex(k1, k2, k3, k4));
                        }
        }
        return all;
    }();
    return cache[degree];
}

double fact(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

double MultiIndex::factorial() const {
    return fact(k[0]) * fact(k[1]) * fact(k[2]) * fact(k[3]);
}

Jet::Jet(double value, int degree) : deg_(degree) {
    if (degree < 0) throw JetError("jet degree must be >= 0");
    c_.assign(layout(degree).terms.size(), 0.0);
    c_[0] = value;
}

Jet Jet::variable(int index, double value, int degree) {
    if (index < 1 || index > 4) throw JetError("jet variable index must be in 1..4");
    Jet j(value, degree);
    if (degree >= 1) {
        MultiIndex e;
        e.k[index - 1] = 1;
        j.c_[layout(degree).position(e)] = 1.0;
    }
    return j;
}

double Jet::coeff(const MultiIndex& a) const {
    const int p = layout(deg_).position(a);
    if (p < 0) throw JetError("multi-index order exceeds jet degree");
    return c_[p];
}

double Jet::partial(const MultiIndex& a) const { return a.factorial() * coeff(a); }

Jet Jet::derivative(int index) const {
    if (index < 1 || index > 4) throw JetError("derivative index must be in 1..4");
    if (deg_ == 0) throw JetError("cannot differentiate a degree-0 jet");
    const Layout& in = layout(deg_);
    Jet out(0.0, deg_ - 1);
    const Layout& lo = layout(deg_ - 1);
    for (size_t t = 0; t < lo.terms.size(); ++t) {
        MultiIndex a = lo.terms[t];
        MultiIndex b = a;
        b.k[index - 1] += 1;
        // d/dx (x^k / k!) bookkeeping: coeff of derivative = (k_i + 1) * coeff(a + e_i)
        out.c_[t] = (a.k[index - 1] + 1) * c_[in.position(b)];
    }
    return out;
}

Jet Jet::truncated(int new_degree) const {
    if (new_degree > deg_) throw JetError("cannot truncate to a higher degree");
    if (new_degree == deg_) return *this;
    const Layout& lo = layout(new_degree);
    const Layout& hi = layout(deg_);
    Jet out(0.0, new_degree);
    for (size_t t = 0; t < lo.terms.size(); ++t) out.c_[t] = c_[hi.position(lo.terms[t])];
    return out;
}

void Jet::check_same_degree(const Jet& f, const Jet& g, const char* op) {
    if (f.deg_ != g.deg_)
        throw JetError(std::string("jet degree mismatch in ") + op);
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (double& x : r.c_) x = -x;
    return r;
}

Jet operator+(const Jet& f, const Jet& g) {
    Jet::check_same_degree(f, g, "add");
    Jet r = f;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += g.c_[i];
    return r;
}

Jet operator-(const Jet& f, const Jet& g) {
    Jet::check_same_degree(f, g, "sub");
    Jet r = f;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= g.c_[i];
    return r;
}

Jet operator*(const Jet& f, const Jet& g) {
    Jet::check_same_degree(f, g, "mul");
    const Layout& L = layout(f.deg_);
    Jet r(0.0, f.deg_);
    const size_t n = L.terms.size();
    for (size_t i = 0; i < n; ++i) {
        const double fi = f.c_[i];
        if (fi == 0.0) continue;
        const MultiIndex& a = L.terms[i];
        const int room = f.deg_ - a.total();
        for (size_t j = 0; j < n; ++j) {
            const MultiIndex& b = L.terms[j];
            if (b.total() > room) break; // terms are ordered by total degree
            r.c_[L.position(MultiIndex(a.k[0] + b.k[0], a.k[1] + b.k[1],
                                        a.k[2] + b.k[2], a.k[3] + b.k[3]))] += fi * g.c_[j];
        }
    }
    return r;
}

Jet operator/(const Jet& f, const Jet& g) {
    Jet::check_same_degree(f, g, "div");
    return f * Jet::inverse(g);
}

Jet operator+(const Jet& f, double s) {
    Jet r = f;
    r.c_[0] += s;
    return r;
}
Jet operator+(double s, const Jet& f) { return f + s; }
Jet operator-(const Jet& f, double s) { return f + (-s); }
Jet operator*(const Jet& f, double s) {
    Jet r = f;
    for (double& x : r.c_) x *= s;
    return r;
}
Jet operator*(double s, const Jet& f) { return f * s; }

Jet compose_series(const Jet& f, const std::vector<double>& series) {
    // Horner evaluation of sum_k series[k] * (f - f(p))^k in jet arithmetic.
    Jet h = f;
    h.c_[0] = 0.0;
    Jet r(series.empty() ? 0.0 : series.back(), f.deg_);
    for (int k = static_cast<int>(series.size()) - 2; k >= 0; --k) r = r * h + series[k];
    return r;
}

Jet Jet::inverse(const Jet& f) {
    const double f0 = f.value();
    if (f0 == 0.0) throw JetError("division by a jet with zero constant term");
    std::vector<double> s(f.deg_ + 1);
    double p = 1.0 / f0;
    for (int k = 0; k <= f.deg_; ++k) {
        s[k] = p; // (-1)^k / f0^(k+1)
        p *= -1.0 / f0;
    }
    return compose_series(f, s);
}

Jet sin(const Jet& f) {
    const double f0 = f.value();
    std::vector<double> s(f.degree() + 1);
    const double tab[4] = {std::sin(f0), std::cos(f0), -std::sin(f0), -std::cos(f0)};
    for (int k = 0; k <= f.degree(); ++k) s[k] = tab[k % 4] / fact(k);
    return compose_series(f, s);
}

Jet cos(const Jet& f) {
    const double f0 = f.value();
    std::vector<double> s(f.degree() + 1);
    const double tab[4] = {std::cos(f0), -std::sin(f0), -std::cos(f0), std::sin(f0)};
    for (int k = 0; k <= f.degree(); ++k) s[k] = tab[k % 4] / fact(k);
    return compose_series(f, s);
}

Jet exp(const Jet& f) {
    const double e0 = std::exp(f.value());
    std::vector<double> s(f.degree() + 1);
    for (int k = 0; k <= f.degree(); ++k) s[k] = e0 / fact(k);
    return compose_series(f, s);
}

Jet log(const Jet& f) {
    const double f0 = f.value();
    if (!(f0 > 0.0)) throw JetError("log of a jet with non-positive constant term");
    std::vector<double> s(f.degree() + 1);
    s[0] = std::log(f0);
    double p = 1.0 / f0;
    for (int k = 1; k <= f.degree(); ++k) {
        s[k] = ((k % 2) ? p : -p) / k;
        p /= f0;
    }
    return compose_series(f, s);
}

Jet sqrt(const Jet& f) {
    const double f0 = f.value();
    if (!(f0 > 0.0)) throw JetError("sqrt of a jet with non-positive constant term");
    std::vector<double> s(f.degree() + 1);
    // d^k/dx^k x^(1/2) = (1/2)(1/2-1)...(1/2-k+1) x^(1/2-k)
    double c = std::sqrt(f0);
    s[0] = c;
    for (int k = 1; k <= f.degree(); ++k) {
        c *= (0.5 - (k - 1)) / (k * f0);
        s[k] = c;
    }
    return compose_series(f, s);
}

Jet sinh(const Jet& f) {
    const double f0 = f.value();
    std::vector<double> s(f.degree() + 1);
    const double sh = std::sinh(f0), ch = std::cosh(f0);
    for (int k = 0; k <= f.degree(); ++k) s[k] = ((k % 2) ? ch : sh) / fact(k);
    return compose_series(f, s);
}

Jet cosh(const Jet& f) {
    const double f0 = f.value();
    std::vector<double> s(f.degree() + 1);
    const double sh = std::sinh(f0), ch = std::cosh(f0);
    for (int k = 0; k <= f.degree(); ++k) s[k] = ((k % 2) ? sh : ch) / fact(k);
    return compose_series(f, s);
}

Jet powi(const Jet& f, int n) {
    if (n < 0) {
        return powi(Jet::inverse(f), -n);
    }
    Jet r(1.0, f.degree());
    Jet base = f;
    unsigned e = static_cast<unsigned>(n);
    while (e) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

} // namespace walker4
