#include "euscat/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace euscat {

void ModelParams::validate() const {
  if (!(m > 0.0) || !(m_pi > 0.0) || !(B_d > 0.0))
    throw std::invalid_argument("ModelParams: masses must be positive");
  const double md = Md();
  if (!(md > 0.0 && md < 2.0 * m))
    throw std::invalid_argument("ModelParams: need 0 < Md < 2m");
}

void MomentumGrid::validate() const {
  if (k.size() < 2 || k.size() != w.size())
    throw std::invalid_argument("MomentumGrid: need N >= 2 nodes with weights");
  double prev = 0.0;
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (!(k[i] > prev))
      throw std::invalid_argument("MomentumGrid: nodes must be increasing and positive");
    if (!(w[i] > 0.0))
      throw std::invalid_argument("MomentumGrid: weights must be positive");
    prev = k[i];
  }
}

namespace {

// Core panels resolve the bound-state and form-factor scales (plus the
// packet, when present) up to k_core; geometric tail panels continue to
// k_tail so the coupling and resolvent sums carry no truncation bias.
MomentumGrid grid_from_breaks(std::set<double> marks, double k_core,
                              double k_tail, int target_points) {
  marks.insert(0.0);
  marks.insert(k_core);
  std::vector<double> cleaned;
  for (double b : marks) {
    if (b < 0.0 || b > k_core) continue;
    if (cleaned.empty() || b - cleaned.back() > 1e-9 * k_core)
      cleaned.push_back(b);
  }
  cleaned.back() = k_core;
  // split any core panel wider than a quarter of the core range
  std::vector<double> core;
  const double widest = 0.25 * k_core;
  for (size_t i = 0; i + 1 < cleaned.size(); ++i) {
    core.push_back(cleaned[i]);
    double width = cleaned[i + 1] - cleaned[i];
    int extra = static_cast<int>(std::floor(width / widest));
    for (int j = 1; j <= extra; ++j)
      core.push_back(cleaned[i] + width * j / (extra + 1));
  }
  core.push_back(cleaned.back());

  const int tail_panels = 6;
  const int per_tail = 12;
  std::vector<double> tail{k_core};
  for (int j = 1; j <= tail_panels; ++j)
    tail.push_back(k_core * std::pow(k_tail / k_core, double(j) / tail_panels));

  const int core_panels = static_cast<int>(core.size()) - 1;
  int per_core = std::clamp(
      (target_points - tail_panels * per_tail) / core_panels, 8, 48);

  QuadRule core_rule = composite_gauss_legendre(core, per_core);
  QuadRule tail_rule = composite_gauss_legendre(tail, per_tail);
  MomentumGrid grid;
  grid.k.resize(core_rule.x.size() + tail_rule.x.size());
  grid.w.resize(grid.k.size());
  grid.k << core_rule.x, tail_rule.x;
  grid.w << core_rule.w, tail_rule.w;
  grid.k_max = k_tail;
  grid.validate();
  return grid;
}

std::set<double> scale_marks(const ModelParams& params) {
  const double kb = params.kappa_bound();
  return {0.5 * kb,     kb,
          2.0 * kb,     4.0 * kb,
          params.m_pi,  2.0 * params.m_pi,
          4.0 * params.m_pi};
}

double default_tail(double k_core) { return std::max(250.0, 2.0 * k_core); }

}  // namespace

MomentumGrid build_grid(const ModelParams& params, int target_points,
                        double k_core, double k_tail) {
  params.validate();
  if (!(k_core > 0.0)) throw std::invalid_argument("build_grid: k_core <= 0");
  if (k_tail <= 0.0) k_tail = default_tail(k_core);
  if (k_tail <= k_core)
    throw std::invalid_argument("build_grid: k_tail must exceed k_core");
  return grid_from_breaks(scale_marks(params), k_core, k_tail, target_points);
}

MomentumGrid build_grid_for_packet(const ModelParams& params, double k0,
                                   double alpha, int target_points,
                                   double k_tail) {
  params.validate();
  if (!(k0 > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("build_grid_for_packet: need k0, alpha > 0");
  const double kw = 1.0 / std::sqrt(alpha);
  const double k_core =
      std::max({3.0 * k0, k0 + 12.0 * kw, 10.0 * params.m_pi});
  if (k_tail <= 0.0) k_tail = default_tail(k_core);
  std::set<double> marks = scale_marks(params);
  // cluster panels over the packet support
  for (double s : {-10.0, -6.0, -3.0, -1.5, 0.0, 1.5, 3.0, 6.0, 10.0}) {
    double b = k0 + s * kw;
    if (b > 0.0 && b < k_core) marks.insert(b);
  }
  return grid_from_breaks(marks, k_core, k_tail, target_points);
}

double form_factor(double k, const ModelParams& params) {
  if (k < 0.0) throw std::invalid_argument("form_factor: k must be >= 0");
  return 1.0 / (params.m_pi * params.m_pi + k * k);
}

double reduced_form_factor(double k, const ModelParams& params) {
  if (k < 0.0)
    throw std::invalid_argument("reduced_form_factor: k must be >= 0");
  return std::sqrt(4.0 * kPi) * k / (params.m_pi * params.m_pi + k * k);
}

double solve_coupling(const ModelParams& params, const MomentumGrid& grid) {
  params.validate();
  grid.validate();
  const double md2 = params.Md() * params.Md();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    double g0 = reduced_form_factor(grid.k[i], params);
    double denom = 4.0 * (grid.k[i] * grid.k[i] + params.m * params.m) - md2;
    sum += grid.w[i] * g0 * g0 / denom;
  }
  if (!(sum > 0.0))
    throw std::runtime_error(
        "solve_coupling: non-positive quadrature sum (broken grid or Md >= 2m)");
  return 1.0 / sum;
}

MatrixXd mass_squared_matrix(const MomentumGrid& grid,
                             const ModelParams& params) {
  if (!std::isfinite(params.lambda))
    throw std::invalid_argument("mass_squared_matrix: lambda not solved");
  const Eigen::Index n = grid.size();
  VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i)
    g[i] = std::sqrt(grid.w[i]) * reduced_form_factor(grid.k[i], params);
  MatrixXd A = (-params.lambda) * (g * g.transpose());
  for (Eigen::Index i = 0; i < n; ++i)
    A(i, i) += 4.0 * (grid.k[i] * grid.k[i] + params.m * params.m);
  // exact symmetry by construction; enforce against rounding anyway
  A = 0.5 * (A + A.transpose()).eval();
  return A;
}

SpectralDecomposition spectral_decompose(const MatrixXd& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("spectral_decompose: matrix must be square");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("spectral_decompose: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_decompose: eigensolver failed");
  return SpectralDecomposition{es.eigenvalues(), es.eigenvectors()};
}

VectorXd free_energies(const MomentumGrid& grid, const ModelParams& params) {
  return 2.0 *
         (grid.k.array().square() + params.m * params.m).sqrt().matrix();
}

MatrixXd semigroup(const SpectralDecomposition& decomp, double beta) {
  if (beta < 0.0) throw std::invalid_argument("semigroup: beta must be >= 0");
  if (decomp.eigenvalues.minCoeff() <= 0.0)
    throw std::domain_error("semigroup: non-positive M^2 eigenvalue");
  VectorXd d = (-beta * decomp.eigenvalues.array().sqrt()).exp().matrix();
  MatrixXd K = decomp.U * d.asDiagonal() * decomp.U.transpose();
  K = 0.5 * (K + K.transpose()).eval();
  return K;
}

}  // namespace euscat
