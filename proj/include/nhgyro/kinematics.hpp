#ifndef NHGYRO_KINEMATICS_HPP
#define NHGYRO_KINEMATICS_HPP

#include <Eigen/Dense>

namespace nhgyro {

/// Rigid-body kinematics in Euler angles (x-convention): the attitude
/// matrix R(phi, theta, psi) maps body-frame coordinates to space-frame
/// coordinates, and the body angular velocity is Omega = J(theta, psi) *
/// (dphi, dtheta, dpsi).
namespace euler_x {

Eigen::Matrix3d attitude(double phi, double theta, double psi);

/// Omega = body_rates(theta, psi) * (dphi, dtheta, dpsi).
Eigen::Matrix3d body_rates(double theta, double psi);
Eigen::Matrix3d body_rates_dtheta(double theta, double psi);
Eigen::Matrix3d body_rates_dpsi(double theta, double psi);

Eigen::Vector3d omega_body(const Eigen::Vector3d& angles, const Eigen::Vector3d& rates);
Eigen::Vector3d omega_space(const Eigen::Vector3d& angles, const Eigen::Vector3d& rates);

}  // namespace euler_x

/// Hat map: hat(v) * u = v x u.
Eigen::Matrix3d hat(const Eigen::Vector3d& v);

/// Alternating (Levi-Civita) tensor on three indices in {0, 1, 2}.
inline int levi_civita(int i, int j, int k) {
    return (i - j) * (j - k) * (k - i) / 2;
}

}  // namespace nhgyro

#endif
