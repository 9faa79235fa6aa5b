#ifndef NHGYRO_CHART_HPP
#define NHGYRO_CHART_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nhgyro/errors.hpp"
#include "nhgyro/types.hpp"

namespace nhgyro {

/// A nonholonomic system written in one coordinate chart through an
/// adapted frame. The frame matrix rho(q) holds the coordinate components
/// of the frame fields as columns; columns 0..r-1 span the constraint
/// distribution, columns r..n-1 span its orthogonal complement with
/// respect to the kinetic-energy metric.
///
/// The coordinate-basis callbacks (metric, gyro_form, potential) are the
/// single source of truth; every frame quantity is derived from them and
/// from rho. Jacobian callbacks are optional: when absent, central finite
/// differences are used.
struct ChartedSystem {
    int n = 0;  ///< chart dimension
    int r = 0;  ///< rank of the constraint distribution, 2 <= r <= n
    std::string name;

    std::function<Mat(const Vec&)> frame;
    std::function<Mat(const Vec&)> metric;     ///< coordinate components of the kinetic metric
    std::function<Vec(const Vec&)> gyro_form;  ///< coordinate components of the gyroscopic 1-form
    std::function<double(const Vec&)> potential;

    /// Optional analytic derivatives; element k of a jacobian list is the
    /// derivative of the map with respect to q^k.
    std::function<std::vector<Mat>(const Vec&)> frame_jacobian;
    std::function<std::vector<Mat>(const Vec&)> metric_jacobian;
    std::function<Mat(const Vec&)> gyro_form_jacobian;  ///< (i,k) = d eta_i / d q^k
    std::function<Vec(const Vec&)> potential_gradient;

    /// Returns a reason string at chart-singular points, nothing otherwise.
    std::function<std::optional<std::string>(const Vec&)> domain_guard;

    bool has_analytic_jacobians() const {
        return static_cast<bool>(frame_jacobian) && static_cast<bool>(metric_jacobian) &&
               static_cast<bool>(gyro_form_jacobian) && static_cast<bool>(potential_gradient);
    }

    /// Throws SingularChart if q is rejected by the domain guard.
    void require_admitted(const Vec& q) const;

    double potential_at(const Vec& q) const { return potential ? potential(q) : 0.0; }
};

using SystemPtr = std::shared_ptr<const ChartedSystem>;

/// Structure functions C^k_{ij} of the frame at one point,
/// antisymmetric in (i,j) by construction.
struct StructureData {
    int n = 0;
    int r = 0;
    std::vector<Mat> C;  ///< C[k](i,j) = C^k_{ij}

    double coeff(int k, int i, int j) const { return C[k](i, j); }

    /// Block views with distribution indices a,b,c < r and normal index
    /// gamma >= r.
    double parallel(int c, int a, int b) const { return C[c](a, b); }
    double normal(int gamma, int a, int b) const { return C[gamma](a, b); }
};

/// Per-point adaptedness diagnostics.
struct ValidationRow {
    Vec q;
    double max_off_block = 0.0;   ///< max |g(e_a, e_alpha)| over a < r <= alpha
    double min_metric_eig = 0.0;  ///< smallest eigenvalue of the coordinate metric
    double frame_cond = 0.0;      ///< condition number of rho
    bool admitted = true;
    std::string note;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    double off_block_tol = 1e-10;
    double cond_limit = 1e12;
    bool passed = false;
    std::string failure;
};

/// Condition-number ceiling accepted for the frame matrix.
inline constexpr double kFrameCondLimit = 1e12;

/// Frame matrix at an admitted point; rejects guard failures and
/// numerically singular frames.
Mat frame_at(const ChartedSystem& sys, const Vec& q);

/// Frame-basis kinetic metric g = rho^T g_coords rho at q.
Mat frame_metric(const ChartedSystem& sys, const Vec& q);

/// Frame components of the gyroscopic 1-form, eta_i = <eta, e_i>.
/// Entries 0..r-1 are the components along the distribution co-frame,
/// the rest along the orthogonal complement.
Vec gyro_form_frame(const ChartedSystem& sys, const Vec& q);

/// Frame jacobian d(rho)/dq^k, analytic when supplied, otherwise by
/// central differences with step cbrt(eps) * max(1, |q^k|).
std::vector<Mat> frame_jacobian_or_fd(const ChartedSystem& sys, const Vec& q);

/// Structure functions at q: solves rho * C_ij = [e_i, e_j] columnwise
/// for i < j and mirrors, so antisymmetry holds exactly.
StructureData structure_functions(const ChartedSystem& sys, const Vec& q);

/// Checks frame invertibility, metric positivity and the vanishing of the
/// mixed frame-metric block over a list of sample points.
ValidationReport validate_adapted(const ChartedSystem& sys, const std::vector<Vec>& points);

}  // namespace nhgyro

#endif
