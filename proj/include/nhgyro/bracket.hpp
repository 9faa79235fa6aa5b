#ifndef NHGYRO_BRACKET_HPP
#define NHGYRO_BRACKET_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nhgyro/chart.hpp"
#include "nhgyro/types.hpp"

namespace nhgyro {

/// The assembled almost-Poisson matrix at one phase-space point, with
/// rows and columns ordered (q^1..q^n, p_1..p_r).
struct BracketMatrix {
    Mat pi;
    int n = 0;
    int r = 0;
};

/// Alternating coefficients lambda_abc(q) of a 3-form restricted to the
/// constraint distribution (indices 0..r-1). Evaluations are extended from
/// the strictly increasing index triples, so the table is alternating by
/// construction; dense user tables are validated instead.
class GaugeForm {
public:
    GaugeForm() = default;

    /// lower(q, a, b, c) is only called with a < b < c.
    GaugeForm(int r, std::function<double(const Vec&, int, int, int)> lower);

    /// r = 3 convenience: lambda_abc = eps_abc * scale(q).
    static GaugeForm epsilon_scaled(std::function<double(const Vec&)> scale);

    /// Dense row-major r^3 table; each evaluation checks the alternating
    /// symmetry and throws InvalidParams on violation.
    static GaugeForm from_table(int r, std::function<std::vector<double>(const Vec&)> table);

    double coeff(const Vec& q, int a, int b, int c) const;
    int index_rank() const { return r_; }
    bool empty() const { return r_ == 0; }

    /// The r x r momentum-block increment lambda_abc g^cd (p_d - eta_d).
    Mat momentum_block(const ChartedSystem& sys, const PhasePoint& pp) const;

private:
    int r_ = 0;
    std::function<double(const Vec&, int, int, int)> lower_;
};

/// Nonholonomic bracket matrix: zero q-q block, rho columns 1..r in the
/// q-p block, and {p_a,p_b} = -C^c_ab p_c - C^gamma_ab eta_gamma.
BracketMatrix assemble_pi(const ChartedSystem& sys, const PhasePoint& pp);

/// Gauge-transformed matrix: adds lambda_abc g^cd (p_d - eta_d) to the
/// momentum-momentum block; all other blocks are unchanged.
BracketMatrix assemble_pi_gauge(const ChartedSystem& sys, const GaugeForm& gauge,
                                const PhasePoint& pp);

/// dF^T Pi dG.
double bracket_eval(const BracketMatrix& bm, const Vec& dF, const Vec& dG);

/// Numerical rank by singular values >= tol * sigma_max.
int bracket_rank(const BracketMatrix& bm, double tol = 1e-8);

/// An almost-Poisson matrix field over phase space. Chart-backed fields
/// remember their system (and gauge) so derivative-based operations can
/// use the frame directions; generic fields evaluate over plain
/// coordinates. Immutable and shareable.
class BracketField {
public:
    BracketField(int dim, std::function<Mat(const Vec&)> fn, std::string description = {});

    static BracketField nonholonomic(SystemPtr sys);
    static BracketField nonholonomic(SystemPtr sys, GaugeForm gauge);

    int dim() const { return dim_; }
    Mat matrix(const Vec& x) const;

    /// Pointwise multiplication by f(x) > 0; throws NonpositiveFactor
    /// when an evaluation sees f <= 0.
    BracketField conformal_scale(std::function<double(const Vec&)> factor) const;

    const SystemPtr& chart() const { return sys_; }
    const std::optional<GaugeForm>& gauge() const { return gauge_; }
    bool conformally_scaled() const { return static_cast<bool>(factor_); }
    const std::string& description() const { return desc_; }

private:
    int dim_ = 0;
    std::function<Mat(const Vec&)> fn_;
    SystemPtr sys_;
    std::optional<GaugeForm> gauge_;
    std::function<double(const Vec&)> factor_;
    std::string desc_;
};

/// Pi(x) * gradH(x) with the gradient by central differences.
Vec hamiltonian_field(const BracketField& bf, const std::function<double(const Vec&)>& H,
                      const Vec& x);

/// Pi(x) * gradH(x) with a supplied analytic gradient.
Vec hamiltonian_field(const BracketField& bf, const std::function<Vec(const Vec&)>& gradH,
                      const Vec& x);

/// Jacobi defect J^{ijk} = sum_l [ Pi^{li} d_l Pi^{jk} + Pi^{lj} d_l Pi^{ki}
/// + Pi^{lk} d_l Pi^{ij} ], entry derivatives by central differences with
/// step h. Chart-backed fields differentiate over the 2r directions
/// (q along the frame, p); generic fields over all coordinates.
double jacobiator(const BracketField& bf, int i, int j, int k, const Vec& x, double h);

/// Largest |J^{ijk}| over all strictly increasing index triples.
double jacobiator_max(const BracketField& bf, const Vec& x, double h);

/// ||Pi(x) dF||_inf.
double casimir_residual(const BracketField& bf, const Vec& dF, const Vec& x);

}  // namespace nhgyro

#endif
