#ifndef EUSCAT_CHEBYSHEV_HPP
#define EUSCAT_CHEBYSHEV_HPP

#include <functional>

#include "euscat/types.hpp"

namespace euscat {

/// Chebyshev interpolant of x -> exp(i nu x) on [0, 1], built through
/// first-kind nodes mapped by x = (t + 1)/2. The first coefficient enters
/// evaluation with weight 1/2.
struct ChebyshevSeries {
  double nu = 0.0;
  int degree = 0;
  VectorXcd coeffs;  // c_0 .. c_N
};

/// Coefficients of the degree-N interpolant,
/// c_j = 2/(N+1) sum_k f(x_k) cos(j theta_k) over the N+1 first-kind nodes.
ChebyshevSeries cheb_coeffs(double nu, int degree);

/// Clenshaw evaluation at x in [0, 1].
Complex cheb_eval_scalar(const ChebyshevSeries& series, double x);

/// Operator application used throughout.
using ApplyOp = std::function<VectorXcd(const VectorXcd&)>;

/// Applies the series to a state using only black-box applications of a
/// symmetric operator K with spectrum in (0, 1):
///   sum' c_j T_j(2K - 1) psi
/// via the three-term recurrence. No spectral data about K is accessed.
VectorXcd cheb_apply_operator(const ChebyshevSeries& series,
                              const ApplyOp& apply_K, const VectorXcd& psi);

/// Iterated Kato-Birman S-matrix element
///   <f_out| e^{-i n K0} e^{2 i n K} e^{-i n K0} |f_in>
/// with K = exp(-beta H) applied through the Chebyshev recurrence at
/// nu = 2n and K0 = exp(-beta H0) applied exactly (H0 diagonal).
/// K0_diag holds the diagonal entries of exp(-beta H0); psi_out/psi_in are
/// weighted grid states. Degree must follow the cliff rule (>= n plus
/// margin); a result exceeding the packet norms signals insufficient degree
/// and is rejected.
Complex s_matrix_iterated(int n, int degree, const ApplyOp& apply_K,
                          const VectorXd& K0_diag, const VectorXcd& psi_out,
                          const VectorXcd& psi_in);

}  // namespace euscat

#endif
