#ifndef NHGYRO_NUMDIFF_HPP
#define NHGYRO_NUMDIFF_HPP

#include <cmath>
#include <limits>

#include "nhgyro/types.hpp"

namespace nhgyro {

/// Central-difference step for first derivatives: cbrt(eps) * max(1, |x|).
inline double fd_step(double x) {
    static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    return h0 * std::max(1.0, std::abs(x));
}

/// Central difference of a scalar map along coordinate k.
template <typename F>
double central_diff(const F& f, const Vec& x, int k) {
    const double h = fd_step(x[k]);
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
}

/// Central-difference gradient of a scalar map.
template <typename F>
Vec central_gradient(const F& f, const Vec& x) {
    Vec g(x.size());
    for (int k = 0; k < x.size(); ++k) g[k] = central_diff(f, x, k);
    return g;
}

/// Central difference of a matrix- or vector-valued map along coordinate k.
template <typename F>
auto central_diff_map(const F& f, const Vec& x, int k) {
    const double h = fd_step(x[k]);
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    return ((f(xp) - f(xm)) / (2.0 * h)).eval();
}

}  // namespace nhgyro

#endif
