#include "euscat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace euscat {

QuadRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double t = kPi * (i + 0.75) / (n + 0.5);
    double x = std::cos(t);
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing step after convergence
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        break;
      }
    }
    double dp = n * (x * p0 - p1) / (x * x - 1.0);
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

QuadRule mapped_rule(const QuadRule& base, double a, double b) {
  QuadRule rule;
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  rule.x = (base.x.array() * hw + mid).matrix();
  rule.w = base.w * hw;
  return rule;
}

QuadRule composite_gauss_legendre(const std::vector<double>& breaks,
                                  int points_per_panel) {
  if (breaks.size() < 2)
    throw std::invalid_argument("composite rule needs at least one panel");
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1]))
      throw std::invalid_argument("panel breakpoints must be increasing");
  const QuadRule base = gauss_legendre(points_per_panel);
  const int panels = static_cast<int>(breaks.size()) - 1;
  QuadRule rule;
  rule.x.resize(panels * points_per_panel);
  rule.w.resize(panels * points_per_panel);
  for (int p = 0; p < panels; ++p) {
    QuadRule m = mapped_rule(base, breaks[p], breaks[p + 1]);
    rule.x.segment(p * points_per_panel, points_per_panel) = m.x;
    rule.w.segment(p * points_per_panel, points_per_panel) = m.w;
  }
  return rule;
}

QuadRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  // Jacobi matrix of the (physicists') Hermite recurrence.
  MatrixXd J = MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = std::sqrt(i / 2.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite: eigen solve failed");
  QuadRule rule;
  rule.x = es.eigenvalues();
  rule.w.resize(n);
  const double sqrt_pi = std::sqrt(kPi);
  for (int i = 0; i < n; ++i) {
    double v = es.eigenvectors()(0, i);
    rule.w[i] = sqrt_pi * v * v;
  }
  // enforce exact symmetry of the rule
  for (int i = 0; i < n / 2; ++i) {
    int j = n - 1 - i;
    double xs = 0.5 * (rule.x[j] - rule.x[i]);
    rule.x[i] = -xs;
    rule.x[j] = xs;
    double ws = 0.5 * (rule.w[i] + rule.w[j]);
    rule.w[i] = ws;
    rule.w[j] = ws;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

}  // namespace euscat
