#include "nhgyro/kinematics.hpp"

#include <cmath>

namespace nhgyro {
namespace euler_x {

Eigen::Matrix3d attitude(double phi, double theta, double psi) {
    const double cf = std::cos(phi), sf = std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(psi), sp = std::sin(psi);
    Eigen::Matrix3d R;
    R << cp * cf - ct * sf * sp, -sp * cf - ct * sf * cp, st * sf,
         cp * sf + ct * cf * sp, -sp * sf + ct * cf * cp, -st * cf,
         st * sp,                 st * cp,                 ct;
    return R;
}

Eigen::Matrix3d body_rates(double theta, double psi) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(psi), sp = std::sin(psi);
    Eigen::Matrix3d J;
    J << st * sp,  cp, 0.0,
         st * cp, -sp, 0.0,
         ct,      0.0, 1.0;
    return J;
}

Eigen::Matrix3d body_rates_dtheta(double theta, double psi) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cp = std::cos(psi), sp = std::sin(psi);
    Eigen::Matrix3d J;
    J << ct * sp, 0.0, 0.0,
         ct * cp, 0.0, 0.0,
         -st,     0.0, 0.0;
    return J;
}

Eigen::Matrix3d body_rates_dpsi(double theta, double psi) {
    const double st = std::sin(theta);
    const double cp = std::cos(psi), sp = std::sin(psi);
    Eigen::Matrix3d J;
    J << st * cp, -sp, 0.0,
         -st * sp, -cp, 0.0,
         0.0,      0.0, 0.0;
    return J;
}

Eigen::Vector3d omega_body(const Eigen::Vector3d& angles, const Eigen::Vector3d& rates) {
    return body_rates(angles[1], angles[2]) * rates;
}

Eigen::Vector3d omega_space(const Eigen::Vector3d& angles, const Eigen::Vector3d& rates) {
    const double cf = std::cos(angles[0]), sf = std::sin(angles[0]);
    const double ct = std::cos(angles[1]), st = std::sin(angles[1]);
    const double dphi = rates[0], dth = rates[1], dpsi = rates[2];
    return {dth * cf + dpsi * sf * st,
            dth * sf - dpsi * cf * st,
            dphi + dpsi * ct};
}

}  // namespace euler_x

Eigen::Matrix3d hat(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m <<  0.0,  -v[2],  v[1],
          v[2],  0.0,  -v[0],
         -v[1],  v[0],  0.0;
    return m;
}

}  // namespace nhgyro
