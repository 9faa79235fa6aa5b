#ifndef NHGYRO_LEGENDRE_HPP
#define NHGYRO_LEGENDRE_HPP

#include <vector>

#include "nhgyro/chart.hpp"
#include "nhgyro/types.hpp"

namespace nhgyro {

/// Constrained Legendre transform p_a = g_ab v^b + eta_a. Affine because
/// of the gyroscopic term.
PhasePoint legendre_fwd(const ChartedSystem& sys, const VelocityPoint& vp);

/// Inverse transform v^b = g^ab (p_a - eta_a); the metric block is
/// inverted per point by Cholesky.
VelocityPoint legendre_inv(const ChartedSystem& sys, const PhasePoint& pp);

/// L_c = 1/2 g_ab v^a v^b + eta_a v^a - V(q).
double constrained_lagrangian(const ChartedSystem& sys, const VelocityPoint& vp);

/// E_c = 1/2 g_ab v^a v^b + V(q); the gyroscopic form does not contribute.
double constrained_energy(const ChartedSystem& sys, const VelocityPoint& vp);

/// H_c = 1/2 g^ab (p_a - eta_a)(p_b - eta_b) + V(q).
double constrained_hamiltonian(const ChartedSystem& sys, const PhasePoint& pp);

/// dH_c/dp = v (exact, via the Cholesky solve).
Vec hamiltonian_p_gradient(const ChartedSystem& sys, const PhasePoint& pp);

/// dH_c/dq: exact chain rule when the system carries analytic jacobians,
/// central differences on H_c otherwise.
Vec hamiltonian_q_gradient(const ChartedSystem& sys, const PhasePoint& pp);

/// Full phase-space gradient (dH/dq, dH/dp), length n + r.
Vec hamiltonian_gradient(const ChartedSystem& sys, const PhasePoint& pp);

/// Derivatives of the distribution blocks of the frame metric and the
/// gyroscopic form with respect to each q^i, analytic when available.
struct FrameBlockDerivatives {
    std::vector<Mat> dG;    ///< dG[i] = d(g_ab)/dq^i, r x r
    std::vector<Vec> dEta;  ///< dEta[i] = d(eta_a)/dq^i, length r
};
FrameBlockDerivatives frame_block_derivatives(const ChartedSystem& sys, const Vec& q);

}  // namespace nhgyro

#endif
