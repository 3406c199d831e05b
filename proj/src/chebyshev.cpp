#include "euscat/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace euscat {

ChebyshevSeries cheb_coeffs(double nu, int degree) {
  if (degree < 0) throw std::invalid_argument("cheb_coeffs: degree < 0");
  const int nodes = degree + 1;
  ChebyshevSeries series;
  series.nu = nu;
  series.degree = degree;
  series.coeffs = VectorXcd::Zero(nodes);

  // accumulate c_j = 2/(N+1) sum_k f(x_k) cos(j theta_k) with a three-term
  // cosine recurrence in j, refreshed periodically against drift
  // cos(j theta) by rotation recurrence; the (cos, sin) pair is refreshed
  // together in extended precision so no drift component can amplify
  const long double pi_l = 3.14159265358979323846264338327950288L;
  for (int k = 0; k < nodes; ++k) {
    const long double theta_l = (2.0L * k + 1.0L) * pi_l / (2.0L * nodes);
    const double theta = static_cast<double>(theta_l);
    const double x = 0.5 * (std::cos(theta) + 1.0);
    const Complex f = std::exp(kI * (nu * x));
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    double c = 1.0, s = 0.0;
    series.coeffs[0] += f;
    for (int j = 1; j < nodes; ++j) {
      if (j % 256 == 0) {
        c = static_cast<double>(cosl(j * theta_l));
        s = static_cast<double>(sinl(j * theta_l));
      } else {
        double cn = c * ct - s * st;
        s = s * ct + c * st;
        c = cn;
      }
      series.coeffs[j] += f * c;
    }
  }
  series.coeffs *= 2.0 / nodes;
  return series;
}

Complex cheb_eval_scalar(const ChebyshevSeries& series, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("cheb_eval_scalar: x outside [0, 1]");
  const double t = 2.0 * x - 1.0;
  Complex b1{0.0, 0.0}, b2{0.0, 0.0};
  for (int j = series.degree; j >= 1; --j) {
    Complex b0 = series.coeffs[j] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return 0.5 * series.coeffs[0] + t * b1 - b2;
}

VectorXcd cheb_apply_operator(const ChebyshevSeries& series,
                              const ApplyOp& apply_K, const VectorXcd& psi) {
  // T_{j+1} = 2 (2K - 1) T_j - T_{j-1}
  VectorXcd t_prev = psi;
  VectorXcd result = 0.5 * series.coeffs[0] * t_prev;
  if (series.degree == 0) return result;

  VectorXcd t_cur = 2.0 * apply_K(psi) - psi;
  result += series.coeffs[1] * t_cur;
  for (int j = 2; j <= series.degree; ++j) {
    VectorXcd t_next = 4.0 * apply_K(t_cur) - 2.0 * t_cur - t_prev;
    t_prev.swap(t_cur);
    t_cur.swap(t_next);
    result += series.coeffs[j] * t_cur;
    if (j % 64 == 0 && !t_cur.allFinite())
      throw std::runtime_error(
          "cheb_apply_operator: recurrence blow-up (spectrum outside [0,1]?)");
  }
  if (!result.allFinite())
    throw std::runtime_error("cheb_apply_operator: non-finite result");
  return result;
}

Complex s_matrix_iterated(int n, int degree, const ApplyOp& apply_K,
                          const VectorXd& K0_diag, const VectorXcd& psi_out,
                          const VectorXcd& psi_in) {
  if (n <= 0) throw std::invalid_argument("s_matrix_iterated: n must be > 0");
  if (K0_diag.size() != psi_in.size() || psi_out.size() != psi_in.size())
    throw std::invalid_argument("s_matrix_iterated: size mismatch");

  VectorXcd free_phase(K0_diag.size());
  for (Eigen::Index i = 0; i < K0_diag.size(); ++i)
    free_phase[i] = std::exp(-kI * (static_cast<double>(n) * K0_diag[i]));

  VectorXcd v = free_phase.cwiseProduct(psi_in);
  ChebyshevSeries series = cheb_coeffs(2.0 * n, degree);
  v = cheb_apply_operator(series, apply_K, v);
  v = free_phase.cwiseProduct(v);

  Complex result = psi_out.dot(v);
  double bound = psi_out.norm() * psi_in.norm();
  if (std::abs(result) > bound + 1e-8)
    throw std::runtime_error(
        "s_matrix_iterated: element exceeds packet norms (degree too low)");
  return result;
}

}  // namespace euscat
