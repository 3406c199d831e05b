#ifndef EUSCAT_EUCLIDEAN_HPP
#define EUSCAT_EUCLIDEAN_HPP

#include <random>
#include <utility>
#include <vector>

#include "euscat/types.hpp"

namespace euscat {

using Vector4cd = Eigen::Matrix<Complex, 4, 1>;

/// Gaussian test function on Euclidean space-time, optionally carrying an
/// applied Euclidean motion: f(x) = base(O x + a) with
///   base(y) = amplitude * exp(-sum (y-c)^2 / (2 sigma^2)) * exp(i q.y).
/// Coordinates are (tau, x1, x2, x3) in GeV^-1; widths are (sigma_tau,
/// sigma_x, sigma_x, sigma_x).
struct TestFunction {
  Vector4d center = Vector4d::Zero();
  double sigma_tau = 1.0;
  double sigma_x = 1.0;
  Complex amplitude{1.0, 0.0};
  Vector4d modulation = Vector4d::Zero();
  Matrix4d rot = Matrix4d::Identity();
  Vector4d shift = Vector4d::Zero();

  void validate() const;

  /// f_{O,a}(x) = f(O x + a), composed with any transform already applied.
  TestFunction transformed(const Matrix4d& O, const Vector4d& a) const;

  /// Complex conjugate of the function.
  TestFunction conjugated() const;

  /// Osterwalder-Schrader reflection: conjugate and flip Euclidean time.
  TestFunction reflected() const;

  /// Center of the realized function, O^T (c - a).
  Vector4d realized_center() const;

  /// Position covariance of the realized Gaussian, O^T diag(sigma^2) O.
  Matrix4d realized_covariance() const;

  /// Positive-time support condition tau_c >= 5 sigma_tau on the realized
  /// function.
  bool admissible() const;
};

/// Covariance kernel 1/(p^2 + m^2), optionally multiplied by
/// (1 + eps p^4/(p^2+m^2)^2). The perturbation is the reflection-positivity
/// breaking probe.
struct CovarianceKernel {
  double mass = 1.0;
  double epsilon = 0.0;

  double momentum_symbol(double p2) const;
  /// Fourier transform of the symbol (Bessel-K closed form).
  double position_value(double r) const;
};

struct PairingOptions {
  int base_points = 32;     // Gauss-Hermite points per axis
  int max_axis_points = 360;
  bool check = true;        // compare against a reduced rule and reject drift
};

/// Covariance pairing <f, C g> = (2pi)^-4 int conj(f~) g~ kernel d^4p,
/// evaluated by tensor-product Gauss-Hermite quadrature adapted to the
/// combined Gaussian. Long-range pairs switch to the position-space
/// Bessel representation. Hermitian: pairing(g, f) = conj(pairing(f, g)).
Complex covariance_pairing(const TestFunction& f, const TestFunction& g,
                           const CovarianceKernel& kernel,
                           const PairingOptions& opts = {});

/// Position-space evaluation int d^4r corr_fg(r) C(|r|): the independent
/// radial-representation route. Requires the pair correlation to stay clear
/// of the kernel singularity at r = 0.
Complex covariance_pairing_position(const TestFunction& f,
                                    const TestFunction& g,
                                    const CovarianceKernel& kernel,
                                    const PairingOptions& opts = {});

/// Source term of a generating-functional argument.
using SourceSum = std::vector<std::pair<Complex, TestFunction>>;

/// Free-field generating functional Z[f] = exp(-1/2 B(f, f)) with the
/// bilinear form B(f, g) = (2pi)^-4 int f~(-p) g~(p) kernel d^4p.
Complex Z_free(const SourceSum& source, const CovarianceKernel& kernel,
               const PairingOptions& opts = {});

/// Reflection-positivity Gram matrix M_ij = Z[f_i - Theta f_j]. All
/// functions must satisfy the positive-time support condition.
MatrixXcd gram_matrix(const std::vector<TestFunction>& functions,
                      const CovarianceKernel& kernel,
                      const PairingOptions& opts = {});

/// Minimum eigenvalue of a Hermitian matrix and the verdict min >= -tol.
std::pair<double, bool> check_psd(const MatrixXcd& M, double tol);

/// Finite sum of exponential functionals sum_j b_j e^{i phi(f_j)}.
struct ExponentialVector {
  std::vector<std::pair<Complex, TestFunction>> terms;
};

/// Model Hilbert inner product
/// <B|C> = sum_jk conj(b_j) c_k Z[g_k - Theta f_j].
Complex inner_product(const ExponentialVector& B, const ExponentialVector& C,
                      const CovarianceKernel& kernel,
                      const PairingOptions& opts = {});

/// |Z[f] - Z[f_{O,a}]| for a Euclidean motion (O orthogonal with det 1).
double invariance_check(const TestFunction& f, const Matrix4d& O,
                        const Vector4d& a, const CovarianceKernel& kernel,
                        const PairingOptions& opts = {});

/// Deviations |Z[f + g_a] - Z[f] Z[g]| for g displaced by each separation
/// along the given spatial direction.
std::vector<double> cluster_check(const TestFunction& f, const TestFunction& g,
                                  const std::vector<double>& separations,
                                  const Eigen::Vector3d& direction,
                                  const CovarianceKernel& kernel,
                                  const PairingOptions& opts = {});

/// Haar-ish random SO(4) matrix (QR of a Gaussian matrix, sign-fixed).
Matrix4d random_rotation(std::mt19937_64& rng);

/// Random admissible test function with scales set by 1/mass.
TestFunction random_test_function(std::mt19937_64& rng, double mass);

}  // namespace euscat

#endif
