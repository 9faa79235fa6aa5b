#include "nhgyro/dynamics.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "nhgyro/legendre.hpp"

namespace nhgyro {

const std::vector<double>& Trajectory::monitor(const std::string& name) const {
    for (const auto& [key, series] : monitors) {
        if (key == name) return series;
    }
    throw Error("no monitor named '" + name + "'");
}

double Trajectory::max_drift(const std::string& name) const {
    const auto& series = monitor(name);
    if (series.empty()) return 0.0;
    double lo = series[0], hi = series[0];
    for (double v : series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return std::max(hi - series[0], series[0] - lo);
}

namespace {

void record(Trajectory& traj, double t, const Vec& x, const std::vector<Monitor>& monitors) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    for (size_t m = 0; m < monitors.size(); ++m) {
        traj.monitors[m].second.push_back(monitors[m].fn(x));
    }
}

Vec rk4_step(const std::function<Vec(const Vec&)>& f, const Vec& x, double dt) {
    Vec k1 = f(x);
    Vec k2 = f(x + 0.5 * dt * k1);
    Vec k3 = f(x + 0.5 * dt * k2);
    Vec k4 = f(x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) tableau.
struct Dopri {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

}  // namespace

Trajectory integrate(const std::function<Vec(const Vec&)>& field, const Vec& x0, double t0,
                     double t1, const IntegrateOptions& opts,
                     const std::vector<Monitor>& monitors) {
    if (!(opts.dt > 0.0)) throw InvalidParams("integrate: dt must be positive");
    if (!(t1 > t0)) throw InvalidParams("integrate: empty time interval");

    Trajectory traj;
    for (const auto& mon : monitors) traj.monitors.emplace_back(mon.name, std::vector<double>{});

    Vec x = x0;
    double t = t0;
    try {
        record(traj, t, x, monitors);
    } catch (const SingularChart& ex) {
        traj.status = Trajectory::Status::ChartExit;
        traj.exit_reason = ex.what();
        return traj;
    }

    try {
        if (opts.method == Method::RK4) {
            const long nsteps = std::lround((t1 - t0) / opts.dt);
            for (long i = 1; i <= nsteps; ++i) {
                x = rk4_step(field, x, opts.dt);
                t = t0 + i * opts.dt;
                record(traj, t, x, monitors);
            }
            return traj;
        }

        // adaptive Dormand-Prince with FSAL
        double h = opts.dt;
        Vec k1 = field(x);
        int rejections = 0;
        while (t < t1) {
            h = std::min(h, t1 - t);
            Vec k2 = field(x + h * (Dopri::a21 * k1));
            Vec k3 = field(x + h * (Dopri::a31 * k1 + Dopri::a32 * k2));
            Vec k4 = field(x + h * (Dopri::a41 * k1 + Dopri::a42 * k2 + Dopri::a43 * k3));
            Vec k5 = field(x + h * (Dopri::a51 * k1 + Dopri::a52 * k2 + Dopri::a53 * k3 +
                                    Dopri::a54 * k4));
            Vec k6 = field(x + h * (Dopri::a61 * k1 + Dopri::a62 * k2 + Dopri::a63 * k3 +
                                    Dopri::a64 * k4 + Dopri::a65 * k5));
            Vec xnew = x + h * (Dopri::b1 * k1 + Dopri::b3 * k3 + Dopri::b4 * k4 +
                                Dopri::b5 * k5 + Dopri::b6 * k6);
            Vec k7 = field(xnew);
            Vec err = h * (Dopri::e1 * k1 + Dopri::e3 * k3 + Dopri::e4 * k4 + Dopri::e5 * k5 +
                           Dopri::e6 * k6 + Dopri::e7 * k7);
            double norm = 0.0;
            for (int i = 0; i < x.size(); ++i) {
                const double scale =
                    opts.atol + opts.rtol * std::max(std::abs(x[i]), std::abs(xnew[i]));
                norm = std::max(norm, std::abs(err[i]) / scale);
            }
            if (norm <= 1.0) {
                t += h;
                x = xnew;
                k1 = k7;
                record(traj, t, x, monitors);
                rejections = 0;
            } else if (++rejections > opts.max_rejections) {
                traj.status = Trajectory::Status::StepRejectionLimit;
                traj.exit_reason = "step rejection limit reached";
                return traj;
            }
            const double grow = 0.9 * std::pow(std::max(norm, 1e-10), -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        }
        return traj;
    } catch (const SingularChart& ex) {
        traj.status = Trajectory::Status::ChartExit;
        traj.exit_reason = ex.what();
        return traj;
    }
}

namespace {

Vec momentum_rhs(const ChartedSystem& sys, const GaugeForm* gauge, const PhasePoint& pp) {
    Vec grad = hamiltonian_gradient(sys, pp);
    BracketMatrix bm = gauge ? assemble_pi_gauge(sys, *gauge, pp) : assemble_pi(sys, pp);
    return bm.pi * grad;
}

}  // namespace

Vec xnh_momentum(const ChartedSystem& sys, const PhasePoint& pp) {
    return momentum_rhs(sys, nullptr, pp);
}

Vec xnh_momentum(const ChartedSystem& sys, const GaugeForm& gauge, const PhasePoint& pp) {
    return momentum_rhs(sys, &gauge, pp);
}

Vec xnh_velocity(const ChartedSystem& sys, const VelocityPoint& vp) {
    const int n = sys.n, r = sys.r;
    Mat rho = frame_at(sys, vp.q);
    Mat g = rho.transpose() * sys.metric(vp.q) * rho;
    Vec eta = rho.transpose() * sys.gyro_form(vp.q);
    StructureData sd = structure_functions(sys, vp.q);
    FrameBlockDerivatives d = frame_block_derivatives(sys, vp.q);
    Vec dV = sys.potential_gradient ? sys.potential_gradient(vp.q)
                                    : central_gradient([&](const Vec& x) { return sys.potential_at(x); },
                                                       vp.q);

    const Mat G = g.topLeftCorner(r, r);
    Vec qdot = rho.leftCols(r) * vp.v;
    Vec momentum = G * vp.v + eta.head(r);  // dL_c/dv

    // dL_c/dq^j = 1/2 v . dG_j v + dEta_j . v - dV_j
    Vec dLdq(n);
    for (int j = 0; j < n; ++j) {
        dLdq[j] = 0.5 * vp.v.dot(d.dG[j] * vp.v) + d.dEta[j].dot(vp.v) - dV[j];
    }

    Vec rhs(r);
    for (int a = 0; a < r; ++a) {
        double val = rho.col(a).dot(dLdq);
        for (int b = 0; b < r; ++b) {
            double cterm = 0.0;
            for (int c = 0; c < r; ++c) cterm += sd.C[c](a, b) * momentum[c];
            for (int gam = r; gam < n; ++gam) cterm += sd.C[gam](a, b) * eta[gam];
            val -= cterm * vp.v[b];
        }
        // time derivatives of the metric block and gyroscopic components
        for (int i = 0; i < n; ++i) {
            val -= qdot[i] * (d.dG[i].row(a).dot(vp.v) + d.dEta[i][a]);
        }
        rhs[a] = val;
    }

    Eigen::LLT<Mat> llt(G);
    if (llt.info() != Eigen::Success) {
        throw LinearSolveFailure(sys.name + ": metric block is not positive definite");
    }
    return stack(qdot, llt.solve(rhs));
}

std::function<Vec(const Vec&)> momentum_field(SystemPtr sys) {
    return [sys](const Vec& x) { return xnh_momentum(*sys, unstack_phase(x, sys->n)); };
}

std::function<Vec(const Vec&)> momentum_field(SystemPtr sys, GaugeForm gauge) {
    return [sys, gauge = std::move(gauge)](const Vec& x) {
        return xnh_momentum(*sys, gauge, unstack_phase(x, sys->n));
    };
}

std::function<Vec(const Vec&)> velocity_field(SystemPtr sys) {
    return [sys](const Vec& x) {
        auto [q, v] = unstack_phase(x, sys->n);
        return xnh_velocity(*sys, {q, v});
    };
}

Monitor energy_monitor(SystemPtr sys) {
    return {"Hc", [sys](const Vec& x) {
                return constrained_hamiltonian(*sys, unstack_phase(x, sys->n));
            }};
}

std::vector<std::pair<std::string, std::vector<double>>> monitor_suite(
    const Trajectory& traj, const std::vector<Monitor>& monitors) {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (const auto& mon : monitors) {
        std::vector<double> series;
        series.reserve(traj.states.size());
        for (const Vec& x : traj.states) series.push_back(mon.fn(x));
        out.emplace_back(mon.name, std::move(series));
    }
    return out;
}

}  // namespace nhgyro
