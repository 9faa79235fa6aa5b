#include "nhgyro/routh.hpp"

#include <Eigen/Cholesky>

#include "nhgyro/errors.hpp"

namespace nhgyro {

namespace {

Eigen::LLT<Mat> cyclic_llt(const ExtendedBlocks& b, const Vec& q) {
    Eigen::LLT<Mat> llt(b.Gthetatheta(q));
    if (llt.info() != Eigen::Success) {
        throw LinearSolveFailure("cyclic kinetic block is not positive definite");
    }
    return llt;
}

}  // namespace

ReducedGyroData routh_reduce(const ExtendedBlocks& blocks) {
    ReducedGyroData out;
    out.metric = [blocks](const Vec& q) -> Mat {
        Mat Gqth = blocks.Gqtheta(q);
        return blocks.Gqq(q) - Gqth * cyclic_llt(blocks, q).solve(Gqth.transpose());
    };
    out.gyro_form = [blocks](const Vec& q) -> Vec {
        return blocks.Gqtheta(q) * cyclic_llt(blocks, q).solve(blocks.mu);
    };
    out.potential = [blocks](const Vec& q) -> double {
        return blocks.Vtilde(q) + 0.5 * blocks.mu.dot(cyclic_llt(blocks, q).solve(blocks.mu));
    };
    return out;
}

Vec theta_dot_recover(const ExtendedBlocks& blocks, const Vec& q, const Vec& qdot) {
    return cyclic_llt(blocks, q).solve(blocks.mu - blocks.Gqtheta(q).transpose() * qdot);
}

}  // namespace nhgyro
