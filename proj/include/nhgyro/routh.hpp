#ifndef NHGYRO_ROUTH_HPP
#define NHGYRO_ROUTH_HPP

#include <functional>

#include "nhgyro/types.hpp"

namespace nhgyro {

/// Block data of an extended mechanical Lagrangian with abelian cyclic
/// variables theta^1..theta^l: kinetic blocks over (qdot, thetadot), a
/// potential on the q-factor, and the fixed momentum level mu conjugate
/// to the cyclic variables.
struct ExtendedBlocks {
    int nq = 0;  ///< dimension of the q-factor
    int nl = 0;  ///< number of cyclic variables
    std::function<Mat(const Vec&)> Gqq;          ///< nq x nq
    std::function<Mat(const Vec&)> Gqtheta;      ///< nq x nl
    std::function<Mat(const Vec&)> Gthetatheta;  ///< nl x nl, positive definite
    std::function<double(const Vec&)> Vtilde;
    Vec mu;
};

/// Reduced data on the q-factor: the effective metric, the gyroscopic
/// 1-form induced by the momentum level, and the amended potential.
/// Plug these into a ChartedSystem together with the constraints.
struct ReducedGyroData {
    std::function<Mat(const Vec&)> metric;     ///< Gqq - Gqth Gthth^-1 Gqth^T
    std::function<Vec(const Vec&)> gyro_form;  ///< Gqth Gthth^-1 mu
    std::function<double(const Vec&)> potential;  ///< Vtilde + 1/2 mu^T Gthth^-1 mu
};

ReducedGyroData routh_reduce(const ExtendedBlocks& blocks);

/// Cyclic rates on the momentum level: thetadot = Gthth^-1 (mu - Gqth^T qdot).
Vec theta_dot_recover(const ExtendedBlocks& blocks, const Vec& q, const Vec& qdot);

}  // namespace nhgyro

#endif
