#include "euscat/wavepacket.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "euscat/quadrature.hpp"

namespace euscat {

GaussianPacket make_packet(double k0, double alpha, const MomentumGrid& grid) {
  if (!(k0 > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("make_packet: need k0 > 0 and alpha > 0");
  if (k0 * std::sqrt(alpha) < 7.0)
    throw std::invalid_argument(
        "make_packet: packet leaks below threshold (k0 sqrt(alpha) < 7)");
  grid.validate();
  const double kw = 1.0 / std::sqrt(alpha);
  int inside = 0;
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (std::abs(grid.k[i] - k0) <= 3.0 * kw) ++inside;
  if (inside < 12)
    throw std::invalid_argument(
        "make_packet: grid under-resolves the packet (< 12 nodes in 3 widths)");

  GaussianPacket packet;
  packet.k0 = k0;
  packet.alpha = alpha;
  packet.values.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    packet.values[i] = std::exp(-alpha * (grid.k[i] - k0) * (grid.k[i] - k0));
  double norm2 = (grid.w.array() * packet.values.array().square()).sum();
  packet.values /= std::sqrt(norm2);
  return packet;
}

VectorXcd weighted_state(const GaussianPacket& packet,
                         const MomentumGrid& grid) {
  if (packet.values.size() != grid.size())
    throw std::invalid_argument("weighted_state: packet/grid size mismatch");
  return (grid.w.array().sqrt() * packet.values.array())
      .matrix()
      .cast<Complex>();
}

Complex energy_overlap(const GaussianPacket& out, const GaussianPacket& in,
                       const MomentumGrid& grid, const ModelParams& params,
                       const std::function<Complex(double)>& weight) {
  if (out.values.size() != grid.size() || in.values.size() != grid.size())
    throw std::invalid_argument("energy_overlap: packet/grid size mismatch");
  Complex acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    double base = grid.w[i] * out.values[i] * in.values[i];
    if (weight) {
      double E = 4.0 * (grid.k[i] * grid.k[i] + params.m * params.m);
      acc += base * weight(E);
    } else {
      acc += base;
    }
  }
  return acc;
}

Complex extract_sharp_T(Complex S_element, Complex identity_overlap,
                        Complex delta_overlap) {
  if (std::abs(delta_overlap) < 1e-14)
    throw std::invalid_argument("extract_sharp_T: vanishing delta overlap");
  return (identity_overlap - S_element) / (2.0 * kPi * kI * delta_overlap);
}

namespace {

// Continuum packet self-overlap restricted to k > 0 (the identity and
// delta overlaps coincide in this normalization).
double continuum_norm(const PacketSpec& s) {
  // int_0^inf c^2 e^{-2 alpha (k-k0)^2} dk with c the full-line constant
  return 0.5 * std::erfc(-s.k0 * std::sqrt(2.0 * s.alpha));
}

}  // namespace

ExtractionResult oracle_extraction(double k0, double alpha,
                                   const ModelParams& params) {
  PacketSpec spec{k0, alpha};
  Complex S_el = packet_S_exact(spec, spec, params);
  double id_overlap = continuum_norm(spec);
  return ExtractionResult{extract_sharp_T(S_el, id_overlap, id_overlap),
                          sharp_T_exact(k0, params)};
}

double oracle_extraction_error(double k0, double alpha,
                               const ModelParams& params) {
  ExtractionResult r = oracle_extraction(k0, alpha, params);
  return std::abs(r.T_extracted - r.T_oracle) / std::abs(r.T_oracle);
}

double tune_width(double k0, double target_error, const ModelParams& params) {
  if (!(target_error > 0.0 && target_error < 1.0))
    throw std::invalid_argument("tune_width: target_error must be in (0, 1)");
  const double alpha_floor = std::max(10.0, std::pow(7.0 / k0, 2.0));
  const double alpha_cap = 1e7;
  if (alpha_floor >= alpha_cap)
    throw std::runtime_error("tune_width: no admissible alpha for this k0");

  auto err = [&](double lg) {
    return oracle_extraction_error(k0, std::exp(lg), params);
  };
  double lo = std::log(alpha_floor), hi = std::log(alpha_cap);
  double e_lo = err(lo), e_hi = err(hi);
  // error decreases with alpha
  if (e_lo < target_error)
    throw std::runtime_error("tune_width: target already exceeded at alpha floor");
  if (e_hi > target_error)
    throw std::runtime_error("tune_width: target unreachable within alpha cap");
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    double e_mid = err(mid);
    if (e_mid > target_error) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double alpha = std::exp(0.5 * (lo + hi));
  double achieved = oracle_extraction_error(k0, alpha, params);
  if (std::abs(achieved - target_error) > 0.2 * target_error)
    throw std::runtime_error("tune_width: bisection failed to meet target");
  return alpha;
}

}  // namespace euscat
