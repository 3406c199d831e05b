#include "euscat/euclidean.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "euscat/quadrature.hpp"

namespace euscat {

void TestFunction::validate() const {
  if (!(sigma_tau > 0.0) || !(sigma_x > 0.0))
    throw std::invalid_argument("TestFunction: widths must be positive");
}

TestFunction TestFunction::transformed(const Matrix4d& O,
                                       const Vector4d& a) const {
  // f(x) = base(rot x + shift); f_{O,a}(x) = f(O x + a)
  //      = base(rot O x + rot a + shift)
  TestFunction t = *this;
  t.rot = rot * O;
  t.shift = rot * a + shift;
  return t;
}

TestFunction TestFunction::conjugated() const {
  TestFunction t = *this;
  t.amplitude = std::conj(amplitude);
  t.modulation = -modulation;
  return t;
}

TestFunction TestFunction::reflected() const {
  Matrix4d theta = Matrix4d::Identity();
  theta(0, 0) = -1.0;
  return conjugated().transformed(theta, Vector4d::Zero());
}

Vector4d TestFunction::realized_center() const {
  return rot.transpose() * (center - shift);
}

Matrix4d TestFunction::realized_covariance() const {
  Vector4d s2(sigma_tau * sigma_tau, sigma_x * sigma_x, sigma_x * sigma_x,
              sigma_x * sigma_x);
  return rot.transpose() * s2.asDiagonal() * rot;
}

bool TestFunction::admissible() const {
  validate();
  double tau_c = realized_center()[0];
  double tau_w = std::sqrt(realized_covariance()(0, 0));
  return tau_c >= 5.0 * tau_w;
}

double CovarianceKernel::momentum_symbol(double p2) const {
  const double m2 = mass * mass;
  double base = 1.0 / (p2 + m2);
  if (epsilon == 0.0) return base;
  double ratio = p2 / (p2 + m2);
  return base * (1.0 + epsilon * ratio * ratio);
}

double CovarianceKernel::position_value(double r) const {
  const double m = mass;
  const double z = m * r;
  const double pi2 = kPi * kPi;
  double k1 = std::cyl_bessel_k(1.0, z);
  double g1 = m * k1 / (4.0 * pi2 * r);
  if (epsilon == 0.0) return g1;
  // eps p^4/(p^2+m^2)^3 = eps [ (p^2+m^2)^-1 - 2m^2 (p^2+m^2)^-2
  //                             + m^4 (p^2+m^2)^-3 ]
  double k0 = std::cyl_bessel_k(0.0, z);
  double g2 = k0 / (8.0 * pi2);
  double g3 = r * k1 / (32.0 * pi2 * m);
  return g1 + epsilon * (g1 - 2.0 * m * m * g2 + m * m * m * m * g3);
}

namespace {

struct GaussianMoments {
  Matrix4d M;         // quadratic form of ln f~
  Vector4cd ell;      // linear term
  Complex expconst;   // constant exponent piece
  Complex prefactor;  // amplitude * (2 pi)^2 * sigma_tau sigma_x^3
};

GaussianMoments moments(const TestFunction& f) {
  f.validate();
  Vector4d s2(f.sigma_tau * f.sigma_tau, f.sigma_x * f.sigma_x,
              f.sigma_x * f.sigma_x, f.sigma_x * f.sigma_x);
  GaussianMoments mom;
  mom.M = f.rot.transpose() * s2.asDiagonal() * f.rot;
  Vector4d dq = s2.asDiagonal() * f.modulation;
  mom.ell = (f.rot.transpose() * dq).cast<Complex>() +
            kI * (f.rot.transpose() * (f.shift - f.center)).cast<Complex>();
  mom.expconst = Complex(-0.5 * f.modulation.dot(dq), 0.0) +
                 kI * f.modulation.dot(f.center);
  mom.prefactor = f.amplitude * (2.0 * kPi) * (2.0 * kPi) * f.sigma_tau *
                  f.sigma_x * f.sigma_x * f.sigma_x;
  return mom;
}

GaussianMoments conj_moments(const GaussianMoments& m) {
  GaussianMoments c = m;
  c.ell = m.ell.conjugate();
  c.expconst = std::conj(m.expconst);
  c.prefactor = std::conj(m.prefactor);
  return c;
}

struct CombinedGaussian {
  Matrix4d Q;
  Vector4cd L;
  Complex constant;   // exp-constant
  Complex prefactor;  // multiplicative
};

CombinedGaussian combine(const GaussianMoments& bra,
                         const GaussianMoments& ket) {
  GaussianMoments b = conj_moments(bra);
  CombinedGaussian c;
  c.Q = b.M + ket.M;
  c.L = b.ell + ket.ell;
  c.constant = b.expconst + ket.expconst;
  c.prefactor = b.prefactor * ket.prefactor;
  return c;
}

// Gauss-Hermite points needed for a dimensionless oscillation frequency w.
int points_for_frequency(double w, int base) {
  if (std::abs(w) < 3.0) return base;
  return std::max(base, static_cast<int>(std::ceil(2.2 * std::abs(w) + 24.0)));
}

// integral of exp(-1/2 x^T Q x + L^T x) * kern(|x|^2) over R^4 by
// Gauss-Hermite rules in the eigenframe of Q.
Complex gauss_kernel_integral(const Matrix4d& Q, const Vector4cd& L,
                              const std::function<double(double)>& kern,
                              int base_points, int max_axis_points,
                              int* axis_points_out = nullptr) {
  Eigen::SelfAdjointEigenSolver<Matrix4d> es(Q);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw std::runtime_error("pairing: combined Gaussian not positive definite");
  const Vector4d lam = es.eigenvalues();
  const Matrix4d R = es.eigenvectors();

  const Vector4d reL = L.real();
  const Vector4d imL = L.imag();
  // p0 = Q^{-1} Re L through the eigenframe
  const Vector4d p0 =
      R * (R.transpose() * reL).cwiseQuotient(lam).eval();
  const Vector4d ltil = R.transpose() * imL;

  int n_axis[4];
  double scale[4];
  for (int i = 0; i < 4; ++i) {
    scale[i] = std::sqrt(2.0 / lam[i]);
    double w = ltil[i] * scale[i];
    n_axis[i] = points_for_frequency(w, base_points);
    if (n_axis[i] > max_axis_points)
      throw std::runtime_error("pairing: oscillation too strong for the "
                               "momentum-space rule");
    if (axis_points_out) axis_points_out[i] = n_axis[i];
  }

  // per-axis nodes (physical coordinates along eigenvector i) and
  // phase-carrying weights
  std::array<VectorXd, 4> u;
  std::array<VectorXcd, 4> phi;
  for (int i = 0; i < 4; ++i) {
    QuadRule gh = gauss_hermite(n_axis[i]);
    u[i] = gh.x * scale[i];
    phi[i].resize(gh.x.size());
    for (Eigen::Index j = 0; j < gh.x.size(); ++j)
      phi[i][j] = gh.w[j] * std::exp(kI * (ltil[i] * u[i][j]));
  }

  const Vector4d r3 = R.col(3);
  Complex sum{0.0, 0.0};
  for (int i0 = 0; i0 < n_axis[0]; ++i0) {
    Vector4d base0 = p0 + R.col(0) * u[0][i0];
    for (int i1 = 0; i1 < n_axis[1]; ++i1) {
      Vector4d base1 = base0 + R.col(1) * u[1][i1];
      Complex c01 = phi[0][i0] * phi[1][i1];
      for (int i2 = 0; i2 < n_axis[2]; ++i2) {
        Vector4d base = base1 + R.col(2) * u[2][i2];
        const double b2 = base.squaredNorm();
        const double br = 2.0 * base.dot(r3);
        Complex inner{0.0, 0.0};
        for (int i3 = 0; i3 < n_axis[3]; ++i3) {
          double u3 = u[3][i3];
          double p2 = b2 + br * u3 + u3 * u3;
          inner += phi[3][i3] * kern(p2);
        }
        sum += c01 * phi[2][i2] * inner;
      }
    }
  }

  double jac = scale[0] * scale[1] * scale[2] * scale[3];
  Complex shift_gain =
      std::exp(Complex(0.5 * reL.dot(p0), imL.dot(p0)));
  return sum * jac * shift_gain;
}

// Proper-time reduction: with (p^2+m^2)^{-n} = int s^{n-1}/(n-1)! e^{-s(p^2+m^2)} ds
// the p-integral is Gaussian and closes in terms of Q + 2sI, leaving one
// smooth 1-d integral in s. The kernel multiplier expands as
// (1+eps) (p^2+m^2)^{-1} - 2 eps m^2 (p^2+m^2)^{-2} + eps m^4 (p^2+m^2)^{-3}.
Complex pairing_proper_time(const TestFunction& f, const TestFunction& g,
                            const CovarianceKernel& kernel,
                            const PairingOptions& opts) {
  CombinedGaussian c = combine(moments(f), moments(g));
  Eigen::SelfAdjointEigenSolver<Matrix4d> es(c.Q);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw std::runtime_error("pairing: combined Gaussian not positive definite");
  const Vector4d lam = es.eigenvalues();
  const Vector4cd ltil = es.eigenvectors().transpose().cast<Complex>() * c.L;
  Vector4cd lt2;
  for (int i = 0; i < 4; ++i) lt2[i] = ltil[i] * ltil[i];

  const double m2 = kernel.mass * kernel.mass;
  const double eps = kernel.epsilon;
  const double a1 = 1.0 + eps;
  const double a2 = -2.0 * eps * m2;
  const double a3 = eps * m2 * m2;

  auto integrand = [&](double s) -> Complex {
    double det = 1.0;
    Complex quad{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
      double d = lam[i] + 2.0 * s;
      det *= d;
      quad += lt2[i] / d;
    }
    double w = a1 + s * (a2 + 0.5 * s * a3);
    return w * std::exp(0.5 * quad - s * m2) / std::sqrt(det);
  };

  // panel layout: resolve the lambda knees, the mass scale, and the
  // large-separation saddle at s ~ |Im L| / (2 m)
  double sep = c.L.imag().norm();
  double s_saddle = 0.5 * sep / kernel.mass;
  double s_end = 45.0 / m2 + 6.0 * s_saddle;
  double s_start = std::min({0.125 * lam.minCoeff(), 0.125 / m2, 0.25 * s_end});
  std::vector<double> breaks{0.0};
  for (double b = s_start; b < s_end; b *= 1.9) breaks.push_back(b);
  breaks.push_back(s_end);

  int per_panel = std::max(8, opts.base_points / 2);
  QuadRule rule = composite_gauss_legendre(breaks, per_panel);
  Complex raw = rule.apply(integrand);
  if (opts.check) {
    QuadRule low = composite_gauss_legendre(breaks, per_panel - 3);
    Complex raw_low = low.apply(integrand);
    if (std::abs(raw - raw_low) > 1e-11 * std::abs(raw) + 1e-280)
      throw std::runtime_error("covariance_pairing: quadrature not converged");
  }
  return c.prefactor * std::exp(c.constant) * raw /
         (4.0 * kPi * kPi);
}

bool position_route_valid(const TestFunction& f, const TestFunction& g,
                          const PairingOptions& opts) {
  CombinedGaussian c = combine(moments(f), moments(g));
  Eigen::SelfAdjointEigenSolver<Matrix4d> es(c.Q);
  double reach =
      std::sqrt(2.0 * opts.base_points * es.eigenvalues().maxCoeff());
  return c.L.imag().norm() >=
         reach + 2.0 * std::sqrt(es.eigenvalues().maxCoeff());
}

}  // namespace

Complex covariance_pairing(const TestFunction& f, const TestFunction& g,
                           const CovarianceKernel& kernel,
                           const PairingOptions& opts) {
  if (!(kernel.mass > 0.0))
    throw std::invalid_argument("covariance_pairing: mass must be positive");
  return pairing_proper_time(f, g, kernel, opts);
}

Complex covariance_pairing_position(const TestFunction& f,
                                    const TestFunction& g,
                                    const CovarianceKernel& kernel,
                                    const PairingOptions& opts) {
  if (!(kernel.mass > 0.0))
    throw std::invalid_argument("covariance_pairing: mass must be positive");
  return pairing_position_impl(f, g, kernel, opts);
}

namespace {

// Bilinear form B(f, g) = (2pi)^-4 int f~(-p) g~(p) kernel d^4p.
Complex bilinear_pairing(const TestFunction& f, const TestFunction& g,
                         const CovarianceKernel& kernel,
                         const PairingOptions& opts) {
  return covariance_pairing(f.conjugated(), g, kernel, opts);
}

}  // namespace

Complex Z_free(const SourceSum& source, const CovarianceKernel& kernel,
               const PairingOptions& opts) {
  Complex quad{0.0, 0.0};
  for (size_t j = 0; j < source.size(); ++j) {
    for (size_t k = j; k < source.size(); ++k) {
      Complex b = source[j].first * source[k].first *
                  bilinear_pairing(source[j].second, source[k].second,
                                   kernel, opts);
      quad += (j == k) ? b : 2.0 * b;
    }
  }
  return std::exp(-0.5 * quad);
}

MatrixXcd gram_matrix(const std::vector<TestFunction>& functions,
                      const CovarianceKernel& kernel,
                      const PairingOptions& opts) {
  const size_t n = functions.size();
  for (const TestFunction& f : functions)
    if (!f.admissible())
      throw std::invalid_argument(
          "gram_matrix: test function violates positive-time support");

  std::vector<TestFunction> refl;
  refl.reserve(n);
  for (const TestFunction& f : functions) refl.push_back(f.reflected());

  std::vector<Complex> self_ff(n), self_rr(n);
  for (size_t i = 0; i < n; ++i) {
    self_ff[i] = bilinear_pairing(functions[i], functions[i], kernel, opts);
    self_rr[i] = bilinear_pairing(refl[i], refl[i], kernel, opts);
  }
  MatrixXcd M(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      Complex cross = bilinear_pairing(functions[i], refl[j], kernel, opts);
      M(i, j) = std::exp(-0.5 * self_ff[i] - 0.5 * self_rr[j] + cross);
    }
  }
  return M;
}

std::pair<double, bool> check_psd(const MatrixXcd& M, double tol) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("check_psd: matrix must be square");
  double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("check_psd: matrix not Hermitian");
  MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  double min_eig = es.eigenvalues().minCoeff();
  return {min_eig, min_eig >= -tol};
}

Complex inner_product(const ExponentialVector& B, const ExponentialVector& C,
                      const CovarianceKernel& kernel,
                      const PairingOptions& opts) {
  if (B.terms.empty() || C.terms.empty())
    throw std::invalid_argument("inner_product: vectors must have terms");
  Complex acc{0.0, 0.0};
  for (const auto& [b, fb] : B.terms) {
    TestFunction rfb = fb.reflected();
    for (const auto& [c, gc] : C.terms) {
      SourceSum diff{{Complex(1.0, 0.0), gc}, {Complex(-1.0, 0.0), rfb}};
      acc += std::conj(b) * c * Z_free(diff, kernel, opts);
    }
  }
  return acc;
}

double invariance_check(const TestFunction& f, const Matrix4d& O,
                        const Vector4d& a, const CovarianceKernel& kernel,
                        const PairingOptions& opts) {
  if ((O.transpose() * O - Matrix4d::Identity()).cwiseAbs().maxCoeff() >
      1e-12)
    throw std::invalid_argument("invariance_check: O is not orthogonal");
  if (std::abs(O.determinant() - 1.0) > 1e-10)
    throw std::invalid_argument("invariance_check: O must have det 1");
  SourceSum base{{Complex(1.0, 0.0), f}};
  SourceSum moved{{Complex(1.0, 0.0), f.transformed(O, a)}};
  return std::abs(Z_free(base, kernel, opts) - Z_free(moved, kernel, opts));
}

std::vector<double> cluster_check(const TestFunction& f, const TestFunction& g,
                                  const std::vector<double>& separations,
                                  const Eigen::Vector3d& direction,
                                  const CovarianceKernel& kernel,
                                  const PairingOptions& opts) {
  Eigen::Vector3d dir = direction.normalized();
  Complex zf = Z_free({{Complex(1.0, 0.0), f}}, kernel, opts);
  Complex zg = Z_free({{Complex(1.0, 0.0), g}}, kernel, opts);
  std::vector<double> deviations;
  deviations.reserve(separations.size());
  for (double a : separations) {
    Vector4d shift(0.0, -a * dir[0], -a * dir[1], -a * dir[2]);
    TestFunction ga = g.transformed(Matrix4d::Identity(), shift);
    SourceSum sum{{Complex(1.0, 0.0), f}, {Complex(1.0, 0.0), ga}};
    deviations.push_back(std::abs(Z_free(sum, kernel, opts) - zf * zg));
  }
  return deviations;
}

Matrix4d random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto gauss = [&]() {
    double u1 = std::max(unif(rng), 1e-300);
    double u2 = unif(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  Matrix4d G;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) G(i, j) = gauss();
  Eigen::HouseholderQR<Matrix4d> qr(G);
  Matrix4d Q = qr.householderQ();
  Matrix4d Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 4; ++i)
    if (Rm(i, i) < 0.0) Q.col(i) *= -1.0;
  if (Q.determinant() < 0.0) Q.col(0) *= -1.0;
  // polish orthogonality
  for (int it = 0; it < 2; ++it)
    Q = Q * (Matrix4d::Identity() * 1.5 -
             0.5 * Q.transpose() * Q);
  return Q;
}

TestFunction random_test_function(std::mt19937_64& rng, double mass) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  TestFunction f;
  f.sigma_tau = (0.2 + 0.4 * unif(rng)) / mass;
  f.sigma_x = (0.3 + 0.5 * unif(rng)) / mass;
  f.center[0] = (5.0 + 4.0 * unif(rng)) * f.sigma_tau;
  for (int i = 1; i < 4; ++i) f.center[i] = (2.0 * unif(rng) - 1.0) / mass;
  f.amplitude = Complex(0.4 + 1.2 * unif(rng), 0.8 * (unif(rng) - 0.5));
  for (int i = 0; i < 4; ++i)
    f.modulation[i] = 1.2 * mass * (unif(rng) - 0.5);
  return f;
}

}  // namespace euscat
