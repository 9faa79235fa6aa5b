#ifndef NHGYRO_TYPES_HPP
#define NHGYRO_TYPES_HPP

#include <Eigen/Dense>

namespace nhgyro {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Point of the velocity phase space: chart coordinates q and the r
/// constrained quasi-velocities v (the components along the distribution
/// frame; the perpendicular components are identically zero).
struct VelocityPoint {
    Vec q;
    Vec v;
};

/// Point of the momentum phase space: chart coordinates q and the r
/// quasi-momenta p conjugate to the constrained quasi-velocities.
struct PhasePoint {
    Vec q;
    Vec p;
};

/// Stacks (q, p) or (q, v) into a single state vector and back.
inline Vec stack(const Vec& q, const Vec& p) {
    Vec x(q.size() + p.size());
    x << q, p;
    return x;
}

inline PhasePoint unstack_phase(const Vec& x, int n) {
    return {x.head(n), x.tail(x.size() - n)};
}

}  // namespace nhgyro

#endif
