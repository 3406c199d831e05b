#ifndef EUSCAT_QUADRATURE_HPP
#define EUSCAT_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "euscat/types.hpp"

namespace euscat {

/// Nodes and weights of a quadrature rule on some interval.
struct QuadRule {
  VectorXd x;
  VectorXd w;

  template <typename F>
  auto apply(F&& f) const {
    auto acc = f(x[0]) * w[0];
    for (Eigen::Index i = 1; i < x.size(); ++i) acc += f(x[i]) * w[i];
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

/// Affine map of a rule to [a, b].
QuadRule mapped_rule(const QuadRule& base, double a, double b);

/// Composite Gauss-Legendre rule: points_per_panel nodes on each
/// [breaks[i], breaks[i+1]] panel. Breakpoints must be strictly increasing.
QuadRule composite_gauss_legendre(const std::vector<double>& breaks,
                                  int points_per_panel);

/// n-point Gauss-Hermite rule for weight exp(-t^2) on the real line,
/// computed by Golub-Welsch.
QuadRule gauss_hermite(int n);

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights (positive half).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F, typename T>
void gk15(F&& f, double a, double b, T& result, double& err) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  T fc = f(mid);
  T res_g = fc * kWg[3];
  T res_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double dx = hw * kXgk[j];
    T f1 = f(mid - dx);
    T f2 = f(mid + dx);
    res_k += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) res_g += (f1 + f2) * kWg[j / 2];
  }
  result = res_k * hw;
  err = std::abs(res_k - res_g) * hw;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) integration of f on [a, b], splitting
/// until local error estimates fall below rel_tol relative to the whole
/// integral. Works for real- and complex-valued integrands.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12,
                        int max_depth = 48) {
  using T = decltype(f(a));
  struct Seg {
    double a, b;
    int depth;
  };
  T coarse;
  double coarse_err;
  detail::gk15(f, a, b, coarse, coarse_err);
  const double scale = std::max(1.0, std::abs(coarse));
  T total{};
  std::vector<Seg> stack{{a, b, 0}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    T r;
    double e;
    detail::gk15(f, s.a, s.b, r, e);
    if (e < rel_tol * scale * 0.5 * (s.b - s.a) / (b - a) + 1e-305 ||
        s.depth >= max_depth) {
      total += r;
      continue;
    }
    double mid = 0.5 * (s.a + s.b);
    stack.push_back({s.a, mid, s.depth + 1});
    stack.push_back({mid, s.b, s.depth + 1});
  }
  return total;
}

}  // namespace euscat

#endif
