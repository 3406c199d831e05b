#ifndef EUSCAT_MODEL_HPP
#define EUSCAT_MODEL_HPP

#include "euscat/quadrature.hpp"
#include "euscat/types.hpp"

namespace euscat {

/// Physical constants of the two-nucleon model. All masses in GeV.
/// The coupling lambda is fixed by the bound-state condition; it is NaN
/// until solve_coupling has been called.
struct ModelParams {
  double m = 0.9383;        // nucleon mass
  double m_pi = 0.1396;     // form-factor mass
  double B_d = 0.0022246;   // binding energy
  double lambda = std::numeric_limits<double>::quiet_NaN();

  double Md() const { return 2.0 * m - B_d; }
  /// Bound-state momentum scale kappa, 4(kappa^2 + m^2) = Md^2.
  double kappa_bound() const {
    return std::sqrt(m * B_d - 0.25 * B_d * B_d);
  }
  void validate() const;
};

/// Momentum quadrature grid on [0, k_max]: strictly increasing positive
/// nodes with positive weights. The common basis for every discretized
/// operator.
struct MomentumGrid {
  VectorXd k;
  VectorXd w;
  double k_max = 0.0;

  Eigen::Index size() const { return k.size(); }
  void validate() const;
};

/// Composite Gauss-Legendre grid: core panels clustered at the bound-state
/// and form-factor scales up to k_core, then geometric tail panels to
/// k_tail (default max(250, 2 k_core)) so the high-momentum parts of the
/// coupling and resolvent sums are not truncated.
MomentumGrid build_grid(const ModelParams& params, int target_points,
                        double k_core, double k_tail = -1.0);

/// Grid additionally clustered around a packet at k0 with width
/// 1/sqrt(alpha); k_core = max(3 k0, k0 + 12/sqrt(alpha), 10 m_pi).
MomentumGrid build_grid_for_packet(const ModelParams& params, double k0,
                                   double alpha, int target_points,
                                   double k_tail = -1.0);

/// Form factor <k|g> = 1/(m_pi^2 + k^2).
double form_factor(double k, const ModelParams& params);

/// s-wave radial reduction g0(k) = sqrt(4 pi) k g(k), with the
/// delta(k - k') radial normalization.
double reduced_form_factor(double k, const ModelParams& params);

/// Coupling strength from the bound-state condition
/// 1 = lambda * sum_i w_i g0(k_i)^2 / (4(k_i^2 + m^2) - Md^2).
double solve_coupling(const ModelParams& params, const MomentumGrid& grid);

/// Discretized mass-squared operator
/// A_ij = delta_ij 4(k_i^2 + m^2) - lambda sqrt(w_i w_j) g0(k_i) g0(k_j).
MatrixXd mass_squared_matrix(const MomentumGrid& grid,
                             const ModelParams& params);

/// Eigenpairs of a symmetric matrix, eigenvalues ascending, columns of U
/// orthonormal.
struct SpectralDecomposition {
  VectorXd eigenvalues;
  MatrixXd U;
};

SpectralDecomposition spectral_decompose(const MatrixXd& A);

/// Free two-body energies 2 sqrt(k_i^2 + m^2) on the grid (H0 is diagonal).
VectorXd free_energies(const MomentumGrid& grid, const ModelParams& params);

/// exp(-beta H) with H = sqrt(M^2), from the spectral decomposition of M^2.
/// Requires all M^2 eigenvalues positive and beta >= 0.
MatrixXd semigroup(const SpectralDecomposition& decomp, double beta);

}  // namespace euscat

#endif
