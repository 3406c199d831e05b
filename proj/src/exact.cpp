#include "euscat/exact.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "euscat/quadrature.hpp"

namespace euscat {

OnShellPoint OnShellPoint::from_momentum(double k, const ModelParams& params) {
  if (!(k > 0.0)) throw std::invalid_argument("OnShellPoint: k must be > 0");
  return OnShellPoint{k, 4.0 * (k * k + params.m * params.m), 1.0 / (8.0 * k)};
}

namespace {

double g0sq(double k, const ModelParams& p) {
  double g0 = reduced_form_factor(k, p);
  return g0 * g0;
}

// int_K^inf dk of 1/(k^2+a^2), 1/(k^2+a^2)^2 and 1/(k^2-v).
double tail_one_pole(double K, double a) {
  return (0.5 * kPi - std::atan(K / a)) / a;
}

double tail_double_pole(double K, double a) {
  return (0.5 * kPi - std::atan(K / a)) / (2.0 * a * a * a) -
         K / (2.0 * a * a * (K * K + a * a));
}

Complex tail_moving_pole(double K, Complex v) {
  Complex s = std::sqrt(v);
  return std::log((K + s) / (K - s)) / (2.0 * s);
}

// Analytic tail of the full integrand -pi k^2 / [(a^2+k^2)^2 (k^2-v)]
// beyond K, by partial fractions in k^2.
Complex integrand_tail(double K, Complex v, const ModelParams& p) {
  const double a = p.m_pi;
  const double a2 = a * a;
  Complex A = -v / ((a2 + v) * (a2 + v));
  Complex B = a2 / (a2 + v);
  Complex C = v / ((a2 + v) * (a2 + v));
  Complex t3 = (std::abs(v) > 0.0) ? tail_moving_pole(K, v)
                                   : Complex(tail_one_pole(K, 1e-300), 0.0);
  return -kPi *
         (A * tail_one_pole(K, a) + B * tail_double_pole(K, a) + C * t3);
}

std::vector<double> resolvent_breaks(double K, double scale_a,
                                     double scale_k) {
  std::set<double> marks{0.0, K};
  for (double s : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    double b = s * scale_a;
    if (b > 0.0 && b < K) marks.insert(b);
  }
  if (scale_k > 0.0)
    for (double s : {0.5, 1.0, 1.5, 2.0})
      if (s * scale_k < K) marks.insert(s * scale_k);
  return {marks.begin(), marks.end()};
}

// h(E + i0) by the subtraction method: the divided difference
// [g0^2(k) - g0^2(kE)] / (E - 4(k^2+m^2)) collapses to a smooth rational,
// the principal-value remainder integrates to a log, and the tail beyond
// K is added in closed form.
Complex resolvent_on_cut(double E, const ModelParams& p) {
  const double a = p.m_pi;
  const double a2 = a * a;
  const double kE2 = 0.25 * E - p.m * p.m;
  const double kE = std::sqrt(kE2);
  const double K = std::max({10.0 * a, 3.0 * kE, 1.0});

  const double cE = (a2 + kE2) * (a2 + kE2);
  auto subtracted = [&](double k) {
    double k2 = k * k;
    double q = a2 + k2;
    return -kPi * (a2 * a2 - k2 * kE2) / (q * q * cE);
  };
  QuadRule rule =
      composite_gauss_legendre(resolvent_breaks(K, a, kE), 24);
  double pv = rule.apply(subtracted);

  const double phiE = g0sq(kE, p);
  pv += phiE / (8.0 * kE) * std::log((K + kE) / (K - kE));

  Complex tail = integrand_tail(K, Complex(kE2, 0.0), p);
  const double rho = 1.0 / (8.0 * kE);
  return Complex(pv + tail.real(), -kPi * phiE * rho);
}

Complex resolvent_off_cut(Complex z, const ModelParams& p) {
  const Complex v = 0.25 * z - p.m * p.m * Complex(1.0, 0.0);
  const Complex s = std::sqrt(v);
  const double K =
      std::max({10.0 * p.m_pi, 2.0 * std::abs(s), 3.0 * std::abs(s.real()), 1.0});
  auto integrand = [&](double k) -> Complex {
    double k2 = k * k;
    double q = p.m_pi * p.m_pi + k2;
    return -kPi * k2 / (q * q * (k2 - v));
  };
  std::vector<double> breaks =
      resolvent_breaks(K, p.m_pi, std::abs(s.real()));
  // near-cut z: refine panels around the sharpening peak at Re(s)
  if (s.real() > 0.0 && std::abs(s.imag()) < 0.2 * s.real()) {
    std::set<double> marks(breaks.begin(), breaks.end());
    double width = std::max(std::abs(s.imag()), 1e-8 * s.real());
    for (double t : {-10.0, -3.0, -1.0, 1.0, 3.0, 10.0}) {
      double b = s.real() + t * width;
      if (b > 0.0 && b < K) marks.insert(b);
    }
    breaks.assign(marks.begin(), marks.end());
  }
  QuadRule rule = composite_gauss_legendre(breaks, 24);
  Complex val = rule.apply(integrand);
  return val + integrand_tail(K, v, p);
}

}  // namespace

Complex resolvent_pairing(Complex z, const ModelParams& params,
                          bool limit_from_above) {
  params.validate();
  const double threshold = 4.0 * params.m * params.m;
  if (limit_from_above) {
    if (!(z.imag() == 0.0) || !(z.real() > threshold))
      throw std::invalid_argument(
          "resolvent_pairing: limit flag requires real E above threshold");
    return resolvent_on_cut(z.real(), params);
  }
  if (z.imag() == 0.0 && z.real() >= threshold)
    throw std::invalid_argument(
        "resolvent_pairing: z on the cut needs the limit flag");
  return resolvent_off_cut(z, params);
}

Complex tau(Complex z, const ModelParams& params, bool limit_from_above) {
  if (!std::isfinite(params.lambda))
    throw std::invalid_argument("tau: lambda not solved");
  if (params.lambda == 0.0) return {0.0, 0.0};
  Complex denom = 1.0 + params.lambda * resolvent_pairing(z, params,
                                                          limit_from_above);
  if (std::abs(denom) < 1e-12)
    throw std::runtime_error("tau: evaluation at the bound-state pole");
  return -params.lambda / denom;
}

Complex on_shell_S(double k, const ModelParams& params) {
  if (!(k > 0.0)) throw std::invalid_argument("on_shell_S: k must be > 0");
  if (params.lambda == 0.0) return {1.0, 0.0};
  OnShellPoint pt = OnShellPoint::from_momentum(k, params);
  Complex t = tau(Complex(pt.E, 0.0), params, true);
  return 1.0 - 2.0 * kPi * kI * pt.rho * g0sq(k, params) * t;
}

double phase_shift(double k, const ModelParams& params) {
  if (!(k > 0.0)) throw std::invalid_argument("phase_shift: k must be > 0");
  if (params.lambda == 0.0) return 0.0;
  // march down from large momentum, unwrapping arg(S)/2 branch jumps
  double k_start = std::max(50.0, 3.0 * k);
  double delta = 0.5 * std::arg(on_shell_S(k_start, params));
  double kk = k_start;
  while (kk > k) {
    kk = std::max(k, kk * 0.9);
    double raw = 0.5 * std::arg(on_shell_S(kk, params));
    delta = raw + kPi * std::round((delta - raw) / kPi);
  }
  return delta;
}

Complex sharp_T_exact(double k, const ModelParams& params) {
  return (1.0 - on_shell_S(k, params)) / (2.0 * kPi * kI);
}

double bound_state_pole(const ModelParams& params) {
  if (!std::isfinite(params.lambda) || params.lambda <= 0.0)
    throw std::invalid_argument("bound_state_pole: need lambda > 0");
  const double threshold = 4.0 * params.m * params.m;
  auto F = [&](double z) {
    return 1.0 +
           params.lambda *
               resolvent_pairing(Complex(z, 0.0), params, false).real();
  };
  double lo = 1e-8 * threshold;
  double hi = threshold * (1.0 - 1e-12);
  double flo = F(lo), fhi = F(hi);
  if (flo * fhi > 0.0)
    throw std::runtime_error("bound_state_pole: no sign change below threshold");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = F(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

Complex packet_S_exact(const PacketSpec& out, const PacketSpec& in,
                       const ModelParams& params) {
  for (const PacketSpec& s : {out, in}) {
    if (!(s.k0 > 0.0) || !(s.alpha > 0.0))
      throw std::invalid_argument("packet_S_exact: need k0, alpha > 0");
    double leak = 0.5 * std::erfc(s.k0 * std::sqrt(2.0 * s.alpha));
    if (leak > 1e-12)
      throw std::invalid_argument(
          "packet_S_exact: packet support leaks below threshold");
  }
  auto norm_const = [](const PacketSpec& s) {
    return std::pow(2.0 * s.alpha / kPi, 0.25);
  };
  const double c_out = norm_const(out), c_in = norm_const(in);

  std::set<double> marks;
  for (const PacketSpec& s : {out, in})
    for (double t : {-12.0, -8.0, -5.0, -3.0, -1.5, 0.0, 1.5, 3.0, 5.0, 8.0, 12.0})
      marks.insert(s.k0 + t * s.width());
  double lo = std::max(*marks.begin(), 1e-12);
  double hi = *marks.rbegin();
  std::vector<double> breaks{lo};
  for (double b : marks)
    if (b > lo && b < hi) breaks.push_back(b);
  breaks.push_back(hi);

  QuadRule rule = composite_gauss_legendre(breaks, 20);
  Complex acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < rule.x.size(); ++i) {
    double k = rule.x[i];
    double fo = c_out * std::exp(-out.alpha * (k - out.k0) * (k - out.k0));
    double fi = c_in * std::exp(-in.alpha * (k - in.k0) * (k - in.k0));
    if (fo * fi == 0.0) continue;
    acc += rule.w[i] * fo * fi * on_shell_S(k, params);
  }
  return acc;
}

}  // namespace euscat
