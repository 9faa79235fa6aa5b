#include "nhgyro/bracket.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "nhgyro/kinematics.hpp"
#include "nhgyro/legendre.hpp"
#include "nhgyro/numdiff.hpp"

namespace nhgyro {

GaugeForm::GaugeForm(int r, std::function<double(const Vec&, int, int, int)> lower)
    : r_(r), lower_(std::move(lower)) {
    if (r < 0) throw InvalidParams("gauge form: negative index rank");
}

GaugeForm GaugeForm::epsilon_scaled(std::function<double(const Vec&)> scale) {
    return GaugeForm(3, [scale = std::move(scale)](const Vec& q, int, int, int) {
        return scale(q);  // only the (0,1,2) triple exists for r = 3
    });
}

GaugeForm GaugeForm::from_table(int r, std::function<std::vector<double>(const Vec&)> table) {
    auto lower = [r, table = std::move(table)](const Vec& q, int a, int b, int c) {
        const std::vector<double> t = table(q);
        if (static_cast<int>(t.size()) != r * r * r) {
            throw InvalidParams("gauge form table has wrong size");
        }
        auto at = [&](int i, int j, int k) { return t[(i * r + j) * r + k]; };
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                for (int k = 0; k < r; ++k) {
                    double expected;
                    if (i == j || j == k || i == k) {
                        expected = 0.0;
                    } else {
                        int s[3] = {i, j, k};
                        int sign = 1;
                        // sort three indices, tracking parity
                        if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
                        if (s[1] > s[2]) { std::swap(s[1], s[2]); sign = -sign; }
                        if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
                        expected = sign * at(s[0], s[1], s[2]);
                    }
                    if (std::abs(at(i, j, k) - expected) > 1e-12 * (1.0 + std::abs(expected))) {
                        throw InvalidParams("gauge form table is not alternating");
                    }
                }
            }
        }
        return at(a, b, c);
    };
    return GaugeForm(r, std::move(lower));
}

double GaugeForm::coeff(const Vec& q, int a, int b, int c) const {
    if (empty()) return 0.0;
    if (a == b || b == c || a == c) return 0.0;
    int s[3] = {a, b, c};
    int sign = 1;
    if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
    if (s[1] > s[2]) { std::swap(s[1], s[2]); sign = -sign; }
    if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
    return sign * lower_(q, s[0], s[1], s[2]);
}

Mat GaugeForm::momentum_block(const ChartedSystem& sys, const PhasePoint& pp) const {
    const int r = sys.r;
    Mat block = Mat::Zero(r, r);
    if (empty() || r < 3) return block;  // alternating 3-tensor needs 3 distinct indices
    Vec w = legendre_inv(sys, pp).v;     // g^cd (p_d - eta_d)
    for (int a = 0; a < r; ++a) {
        for (int b = a + 1; b < r; ++b) {
            double val = 0.0;
            for (int c = 0; c < r; ++c) val += coeff(pp.q, a, b, c) * w[c];
            block(a, b) = val;
            block(b, a) = -val;
        }
    }
    return block;
}

namespace {

BracketMatrix assemble(const ChartedSystem& sys, const GaugeForm* gauge, const PhasePoint& pp) {
    const int n = sys.n, r = sys.r;
    Mat rho = frame_at(sys, pp.q);
    Vec eta = rho.transpose() * sys.gyro_form(pp.q);
    StructureData sd = structure_functions(sys, pp.q);

    BracketMatrix bm;
    bm.n = n;
    bm.r = r;
    bm.pi = Mat::Zero(n + r, n + r);
    bm.pi.topRightCorner(n, r) = rho.leftCols(r);
    bm.pi.bottomLeftCorner(r, n) = -rho.leftCols(r).transpose();
    for (int a = 0; a < r; ++a) {
        for (int b = a + 1; b < r; ++b) {
            double val = 0.0;
            for (int c = 0; c < r; ++c) val -= sd.C[c](a, b) * pp.p[c];
            for (int gam = r; gam < n; ++gam) val -= sd.C[gam](a, b) * eta[gam];
            bm.pi(n + a, n + b) = val;
            bm.pi(n + b, n + a) = -val;
        }
    }
    if (gauge && !gauge->empty()) {
        bm.pi.bottomRightCorner(r, r) += gauge->momentum_block(sys, pp);
    }
    return bm;
}

}  // namespace

BracketMatrix assemble_pi(const ChartedSystem& sys, const PhasePoint& pp) {
    return assemble(sys, nullptr, pp);
}

BracketMatrix assemble_pi_gauge(const ChartedSystem& sys, const GaugeForm& gauge,
                                const PhasePoint& pp) {
    return assemble(sys, &gauge, pp);
}

double bracket_eval(const BracketMatrix& bm, const Vec& dF, const Vec& dG) {
    return dF.dot(bm.pi * dG);
}

int bracket_rank(const BracketMatrix& bm, double tol) {
    Eigen::JacobiSVD<Mat> svd(bm.pi);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] >= tol * sv[0]) ++rank;
    }
    return rank;
}

BracketField::BracketField(int dim, std::function<Mat(const Vec&)> fn, std::string description)
    : dim_(dim), fn_(std::move(fn)), desc_(std::move(description)) {}

BracketField BracketField::nonholonomic(SystemPtr sys) {
    BracketField bf(sys->n + sys->r, nullptr, sys->name + " bracket");
    bf.sys_ = sys;
    bf.fn_ = [sys](const Vec& x) {
        return assemble_pi(*sys, unstack_phase(x, sys->n)).pi;
    };
    return bf;
}

BracketField BracketField::nonholonomic(SystemPtr sys, GaugeForm gauge) {
    BracketField bf(sys->n + sys->r, nullptr, sys->name + " gauged bracket");
    bf.sys_ = sys;
    bf.gauge_ = gauge;
    bf.fn_ = [sys, gauge = std::move(gauge)](const Vec& x) {
        return assemble_pi_gauge(*sys, gauge, unstack_phase(x, sys->n)).pi;
    };
    return bf;
}

Mat BracketField::matrix(const Vec& x) const {
    Mat pi = fn_(x);
    if (factor_) {
        const double f = factor_(x);
        if (!(f > 0.0)) throw NonpositiveFactor("conformal factor is not positive");
        pi *= f;
    }
    return pi;
}

BracketField BracketField::conformal_scale(std::function<double(const Vec&)> factor) const {
    BracketField out = *this;
    if (factor_) {
        out.factor_ = [inner = factor_, outer = std::move(factor)](const Vec& x) {
            return inner(x) * outer(x);
        };
    } else {
        out.factor_ = std::move(factor);
    }
    out.desc_ = desc_.empty() ? "scaled bracket" : desc_ + " (scaled)";
    return out;
}

Vec hamiltonian_field(const BracketField& bf, const std::function<double(const Vec&)>& H,
                      const Vec& x) {
    return bf.matrix(x) * central_gradient(H, x);
}

Vec hamiltonian_field(const BracketField& bf, const std::function<Vec(const Vec&)>& gradH,
                      const Vec& x) {
    return bf.matrix(x) * gradH(x);
}

namespace {

void check_step(const Vec& x, double h) {
    if (!(h > 0.0)) throw StepTooSmall("finite-difference step must be positive");
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if (h < 64.0 * std::numeric_limits<double>::epsilon() * scale) {
        throw StepTooSmall("finite-difference step underflows the point's scale");
    }
}

Mat direction_diff(const BracketField& bf, const Vec& x, const Vec& dir, double h) {
    return (bf.matrix(x + h * dir) - bf.matrix(x - h * dir)) / (2.0 * h);
}

}  // namespace

double jacobiator(const BracketField& bf, int i, int j, int k, const Vec& x, double h) {
    check_step(x, h);
    const Mat pi0 = bf.matrix(x);
    const int N = bf.dim();

    if (const SystemPtr& sys = bf.chart()) {
        const int n = sys->n, r = sys->r;
        // Entry derivatives along the frame flows and the fibre directions.
        Mat rho = frame_at(*sys, x.head(n));
        std::vector<Mat> dQ(r), dP(r);
        for (int a = 0; a < r; ++a) {
            Vec dir = Vec::Zero(N);
            dir.head(n) = rho.col(a);
            dQ[a] = direction_diff(bf, x, dir, h);
            Vec fib = Vec::Zero(N);
            fib[n + a] = 1.0;
            dP[a] = direction_diff(bf, x, fib, h);
        }
        // The q-rows of Pi pair only with momentum columns and carry the
        // frame coefficients (times the conformal factor when present), so
        // sum_{l<=n} Pi^{lm} d_l X collapses to a frame-directional
        // derivative.
        double factor = 1.0;
        if (bf.conformally_scaled()) {
            int lmax, amax;
            rho.leftCols(r).cwiseAbs().maxCoeff(&lmax, &amax);
            factor = pi0(lmax, n + amax) / rho(lmax, amax);
        }
        auto term = [&](int m, int a, int b) {
            double s = 0.0;
            if (m >= n) s += factor * dQ[m - n](a, b);
            for (int c = 0; c < r; ++c) s += pi0(n + c, m) * dP[c](a, b);
            return s;
        };
        return term(i, j, k) + term(j, k, i) + term(k, i, j);
    }

    double s = 0.0;
    for (int l = 0; l < N; ++l) {
        Vec dir = Vec::Zero(N);
        dir[l] = 1.0;
        Mat d = direction_diff(bf, x, dir, h);
        s += pi0(l, i) * d(j, k) + pi0(l, j) * d(k, i) + pi0(l, k) * d(i, j);
    }
    return s;
}

double jacobiator_max(const BracketField& bf, const Vec& x, double h) {
    double worst = 0.0;
    for (int i = 0; i < bf.dim(); ++i) {
        for (int j = i + 1; j < bf.dim(); ++j) {
            for (int k = j + 1; k < bf.dim(); ++k) {
                worst = std::max(worst, std::abs(jacobiator(bf, i, j, k, x, h)));
            }
        }
    }
    return worst;
}

double casimir_residual(const BracketField& bf, const Vec& dF, const Vec& x) {
    return (bf.matrix(x) * dF).cwiseAbs().maxCoeff();
}

}  // namespace nhgyro
