#include "nhgyro/legendre.hpp"

#include <Eigen/Cholesky>

#include "nhgyro/numdiff.hpp"

namespace nhgyro {

namespace {

struct Blocks {
    Mat G;    // r x r frame-metric block
    Vec eta;  // first r frame components of the gyroscopic form
};

Blocks blocks_at(const ChartedSystem& sys, const Vec& q) {
    Mat rho = frame_at(sys, q);
    Mat g = rho.transpose() * sys.metric(q) * rho;
    Vec eta = rho.transpose() * sys.gyro_form(q);
    return {g.topLeftCorner(sys.r, sys.r), eta.head(sys.r)};
}

Vec solve_spd(const Mat& G, const Vec& rhs, const std::string& what) {
    Eigen::LLT<Mat> llt(G);
    if (llt.info() != Eigen::Success) {
        throw LinearSolveFailure(what + ": metric block is not positive definite");
    }
    return llt.solve(rhs);
}

}  // namespace

PhasePoint legendre_fwd(const ChartedSystem& sys, const VelocityPoint& vp) {
    auto [G, eta] = blocks_at(sys, vp.q);
    return {vp.q, G * vp.v + eta};
}

VelocityPoint legendre_inv(const ChartedSystem& sys, const PhasePoint& pp) {
    auto [G, eta] = blocks_at(sys, pp.q);
    return {pp.q, solve_spd(G, pp.p - eta, sys.name)};
}

double constrained_lagrangian(const ChartedSystem& sys, const VelocityPoint& vp) {
    auto [G, eta] = blocks_at(sys, vp.q);
    return 0.5 * vp.v.dot(G * vp.v) + eta.dot(vp.v) - sys.potential_at(vp.q);
}

double constrained_energy(const ChartedSystem& sys, const VelocityPoint& vp) {
    auto [G, eta] = blocks_at(sys, vp.q);
    return 0.5 * vp.v.dot(G * vp.v) + sys.potential_at(vp.q);
}

double constrained_hamiltonian(const ChartedSystem& sys, const PhasePoint& pp) {
    auto [G, eta] = blocks_at(sys, pp.q);
    Vec w = pp.p - eta;
    return 0.5 * w.dot(solve_spd(G, w, sys.name)) + sys.potential_at(pp.q);
}

Vec hamiltonian_p_gradient(const ChartedSystem& sys, const PhasePoint& pp) {
    return legendre_inv(sys, pp).v;
}

FrameBlockDerivatives frame_block_derivatives(const ChartedSystem& sys, const Vec& q) {
    const int n = sys.n, r = sys.r;
    FrameBlockDerivatives out;
    out.dG.reserve(n);
    out.dEta.reserve(n);
    if (sys.frame_jacobian && sys.metric_jacobian && sys.gyro_form_jacobian) {
        Mat rho = sys.frame(q);
        Mat gt = sys.metric(q);
        Vec et = sys.gyro_form(q);
        const auto drho = sys.frame_jacobian(q);
        const auto dgt = sys.metric_jacobian(q);
        Mat det = sys.gyro_form_jacobian(q);
        for (int i = 0; i < n; ++i) {
            Mat dg = drho[i].transpose() * gt * rho + rho.transpose() * dgt[i] * rho +
                     rho.transpose() * gt * drho[i];
            Vec de = drho[i].transpose() * et + rho.transpose() * det.col(i);
            out.dG.push_back(dg.topLeftCorner(r, r));
            out.dEta.push_back(de.head(r));
        }
        return out;
    }
    auto Gmap = [&](const Vec& x) -> Mat {
        Mat rho = sys.frame(x);
        return (rho.transpose() * sys.metric(x) * rho).topLeftCorner(sys.r, sys.r);
    };
    auto etamap = [&](const Vec& x) -> Vec {
        return (sys.frame(x).transpose() * sys.gyro_form(x)).head(sys.r);
    };
    for (int i = 0; i < n; ++i) {
        out.dG.push_back(central_diff_map(Gmap, q, i));
        out.dEta.push_back(central_diff_map(etamap, q, i));
    }
    return out;
}

Vec hamiltonian_q_gradient(const ChartedSystem& sys, const PhasePoint& pp) {
    sys.require_admitted(pp.q);
    if (sys.has_analytic_jacobians()) {
        // dH/dq^i = -1/2 v^T dG_i v - v . dEta_i + dV/dq^i with v the exact solve
        Vec v = hamiltonian_p_gradient(sys, pp);
        auto d = frame_block_derivatives(sys, pp.q);
        Vec dV = sys.potential_gradient(pp.q);
        Vec out(sys.n);
        for (int i = 0; i < sys.n; ++i) {
            out[i] = -0.5 * v.dot(d.dG[i] * v) - v.dot(d.dEta[i]) + dV[i];
        }
        return out;
    }
    auto h = [&](const Vec& x) { return constrained_hamiltonian(sys, {x, pp.p}); };
    return central_gradient(h, pp.q);
}

Vec hamiltonian_gradient(const ChartedSystem& sys, const PhasePoint& pp) {
    return stack(hamiltonian_q_gradient(sys, pp), hamiltonian_p_gradient(sys, pp));
}

}  // namespace nhgyro
