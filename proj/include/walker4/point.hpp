#pragma once

#include <array>
#include <cmath>

namespace walker4 {

/// A point of the four-dimensional coordinate chart (u,v,x,y).
/// Coordinates are addressed positionally (0..3) in the order u,v,x,y;
/// the product-form chart (r,s,x,y) reuses the same slots.
struct Point4 {
    double u = 0.0;
    double v = 0.0;
    double x = 0.0;
    double y = 0.0;

    double operator[](int i) const {
        switch (i) {
            case 0: return u;
            case 1: return v;
            case 2: return x;
            default: return y;
        }
    }

    std::array<double, 4> to_array() const { return {u, v, x, y}; }

    static Point4 from_array(const std::array<double, 4>& a) {
        return Point4{a[0], a[1], a[2], a[3]};
    }

    bool finite() const {
        return std::isfinite(u) && std::isfinite(v) && std::isfinite(x) && std::isfinite(y);
    }
};

} // namespace walker4
