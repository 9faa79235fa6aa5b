#include "nhgyro/chart.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nhgyro/numdiff.hpp"

namespace nhgyro {

void ChartedSystem::require_admitted(const Vec& q) const {
    if (!domain_guard) return;
    if (auto reason = domain_guard(q)) {
        throw SingularChart(name.empty() ? *reason : name + ": " + *reason);
    }
}

namespace {

double condition_number(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 0.0) return std::numeric_limits<double>::infinity();
    return sv[0] / sv[sv.size() - 1];
}

}  // namespace

Mat frame_at(const ChartedSystem& sys, const Vec& q) {
    sys.require_admitted(q);
    Mat rho = sys.frame(q);
    const double cond = condition_number(rho);
    if (!(cond <= kFrameCondLimit)) {
        throw SingularChart(sys.name + ": frame condition number " + std::to_string(cond) +
                            " exceeds limit");
    }
    return rho;
}

Mat frame_metric(const ChartedSystem& sys, const Vec& q) {
    Mat rho = frame_at(sys, q);
    return rho.transpose() * sys.metric(q) * rho;
}

Vec gyro_form_frame(const ChartedSystem& sys, const Vec& q) {
    Mat rho = frame_at(sys, q);
    return rho.transpose() * sys.gyro_form(q);
}

std::vector<Mat> frame_jacobian_or_fd(const ChartedSystem& sys, const Vec& q) {
    if (sys.frame_jacobian) return sys.frame_jacobian(q);
    std::vector<Mat> jac;
    jac.reserve(sys.n);
    for (int k = 0; k < sys.n; ++k) {
        jac.push_back(central_diff_map(sys.frame, q, k));
    }
    return jac;
}

StructureData structure_functions(const ChartedSystem& sys, const Vec& q) {
    const int n = sys.n;
    Mat rho = frame_at(sys, q);
    const std::vector<Mat> jac = frame_jacobian_or_fd(sys, q);

    Eigen::PartialPivLU<Mat> lu(rho);
    if (std::abs(lu.determinant()) == 0.0) {
        throw LinearSolveFailure(sys.name + ": frame matrix is singular");
    }

    StructureData out;
    out.n = n;
    out.r = sys.r;
    out.C.assign(n, Mat::Zero(n, n));

    // [e_i, e_j]^m = rho^l_i d_l rho^m_j - rho^l_j d_l rho^m_i
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Vec lie = Vec::Zero(n);
            for (int l = 0; l < n; ++l) {
                lie += rho(l, i) * jac[l].col(j) - rho(l, j) * jac[l].col(i);
            }
            Vec c = lu.solve(lie);
            for (int k = 0; k < n; ++k) {
                out.C[k](i, j) = c[k];
                out.C[k](j, i) = -c[k];
            }
        }
    }
    return out;
}

ValidationReport validate_adapted(const ChartedSystem& sys, const std::vector<Vec>& points) {
    ValidationReport report;
    report.passed = !points.empty();
    for (const Vec& q : points) {
        ValidationRow row;
        row.q = q;
        if (sys.domain_guard) {
            if (auto reason = sys.domain_guard(q)) {
                row.admitted = false;
                row.note = *reason;
                report.rows.push_back(row);
                continue;
            }
        }
        Mat rho = sys.frame(q);
        Mat gt = sys.metric(q);
        row.frame_cond = condition_number(rho);
        Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (gt + gt.transpose()));
        row.min_metric_eig = eig.eigenvalues().minCoeff();
        Mat g = rho.transpose() * gt * rho;
        row.max_off_block =
            sys.r < sys.n ? g.block(0, sys.r, sys.r, sys.n - sys.r).cwiseAbs().maxCoeff() : 0.0;
        if (row.max_off_block > report.off_block_tol) {
            report.passed = false;
            report.failure = "mixed block g(e_a, e_alpha) exceeds tolerance";
        }
        if (row.min_metric_eig <= 0.0) {
            report.passed = false;
            report.failure = "coordinate metric not positive definite";
        }
        if (!(row.frame_cond <= report.cond_limit)) {
            report.passed = false;
            report.failure = "frame condition number exceeds limit";
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace nhgyro
