#ifndef NHGYRO_DYNAMICS_HPP
#define NHGYRO_DYNAMICS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nhgyro/bracket.hpp"
#include "nhgyro/chart.hpp"
#include "nhgyro/types.hpp"

namespace nhgyro {

/// Named scalar observable sampled along a trajectory.
struct Monitor {
    std::string name;
    std::function<double(const Vec&)> fn;
};

struct Trajectory {
    enum class Status { Completed, ChartExit, StepRejectionLimit };

    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<std::pair<std::string, std::vector<double>>> monitors;
    Status status = Status::Completed;
    std::string exit_reason;

    const std::vector<double>& monitor(const std::string& name) const;
    double max_drift(const std::string& name) const;
};

enum class Method { RK4, RK45 };

struct IntegrateOptions {
    Method method = Method::RK4;
    double dt = 1e-3;          ///< fixed step (RK4) or initial step (RK45)
    double atol = 1e-9;
    double rtol = 1e-9;
    int max_rejections = 200;  ///< consecutive rejections before giving up
};

/// Integrates x' = field(x) from t0 to t1. Monitors are sampled at every
/// accepted step. A SingularChart thrown by the field ends the run with
/// status ChartExit and the last valid state kept.
Trajectory integrate(const std::function<Vec(const Vec&)>& field, const Vec& x0, double t0,
                     double t1, const IntegrateOptions& opts,
                     const std::vector<Monitor>& monitors = {});

/// Momentum-side nonholonomic vector field at (q, p), length n + r:
/// qdot = rho dH/dp, pdot = -rho^T dH/dq - (C-blocks) dH/dp. When a gauge
/// is supplied the field is computed through the gauged matrix (the two
/// agree identically).
Vec xnh_momentum(const ChartedSystem& sys, const PhasePoint& pp);
Vec xnh_momentum(const ChartedSystem& sys, const GaugeForm& gauge, const PhasePoint& pp);

/// Velocity-side field at (q, v), length n + r: qdot = rho v and the
/// quasi-velocity accelerations from the constrained Euler-Lagrange
/// equations, with the metric/gyroscopic time derivatives expanded by the
/// chain rule.
Vec xnh_velocity(const ChartedSystem& sys, const VelocityPoint& vp);

/// State-space callbacks for integrate().
std::function<Vec(const Vec&)> momentum_field(SystemPtr sys);
std::function<Vec(const Vec&)> momentum_field(SystemPtr sys, GaugeForm gauge);
std::function<Vec(const Vec&)> velocity_field(SystemPtr sys);

/// The constrained-Hamiltonian monitor for a momentum-side trajectory.
Monitor energy_monitor(SystemPtr sys);

/// Recomputes a named-monitor table over an existing trajectory.
std::vector<std::pair<std::string, std::vector<double>>> monitor_suite(
    const Trajectory& traj, const std::vector<Monitor>& monitors);

}  // namespace nhgyro

#endif
