#ifndef EUSCAT_WAVEPACKET_HPP
#define EUSCAT_WAVEPACKET_HPP

#include <functional>
#include <optional>

#include "euscat/exact.hpp"
#include "euscat/model.hpp"
#include "euscat/types.hpp"

namespace euscat {

/// Normalized radial Gaussian packet e^{-alpha (k - k0)^2} sampled on a
/// MomentumGrid: sum_i w_i |f(k_i)|^2 = 1.
struct GaussianPacket {
  double k0 = 0.0;
  double alpha = 0.0;
  VectorXd values;  // f(k_i)

  double width() const { return 1.0 / std::sqrt(alpha); }
  PacketSpec spec() const { return PacketSpec{k0, alpha}; }
};

/// Builds and normalizes a packet. Rejects packets leaking below threshold
/// (k0 sqrt(alpha) < 7) and grids with fewer than 12 nodes within 3 widths
/// of k0.
GaussianPacket make_packet(double k0, double alpha, const MomentumGrid& grid);

/// Weighted embedding psi_i = sqrt(w_i) f(k_i) used by the grid operators.
VectorXcd weighted_state(const GaussianPacket& packet,
                         const MomentumGrid& grid);

/// Energy-representation overlap
///   int dE v_out*(E) v_in(E) w(E),  v(E) = f(k(E)) sqrt(dk/dE),
/// which reduces to the momentum quadrature sum_i w_i f_out(k_i) f_in(k_i)
/// w(E(k_i)). With w == 1 this is the delta(E+ - E-) pairing of the
/// extraction denominator.
Complex energy_overlap(const GaussianPacket& out, const GaussianPacket& in,
                       const MomentumGrid& grid, const ModelParams& params,
                       const std::function<Complex(double)>& weight = {});

/// Sharp-momentum transition matrix element from packet matrix elements:
///   T = (delta_ab <f_out|f_in> - <f_out|S|f_in>) / (2 pi i <f_out|d(E)|f_in>),
/// the sign fixed so that for narrow packets T -> sharp_T_exact(k0).
Complex extract_sharp_T(Complex S_element, Complex identity_overlap,
                        Complex delta_overlap);

struct ExtractionResult {
  Complex T_extracted;
  Complex T_oracle;
};

/// Continuum extraction at (k0, alpha) built from packet_S_exact, together
/// with the sharp oracle value it approximates.
ExtractionResult oracle_extraction(double k0, double alpha,
                                   const ModelParams& params);

/// Relative extraction error |T_ext - T| / |T| of the analytic pipeline.
double oracle_extraction_error(double k0, double alpha,
                               const ModelParams& params);

/// Width parameter alpha for which the oracle extraction error matches
/// target_error (relative), by bisection on log alpha within [10, 1e7].
double tune_width(double k0, double target_error, const ModelParams& params);

}  // namespace euscat

#endif
