#ifndef EUSCAT_EXACT_HPP
#define EUSCAT_EXACT_HPP

#include "euscat/model.hpp"
#include "euscat/types.hpp"

namespace euscat {

/// On-shell kinematics of the spectral variable E = 4(k^2 + m^2).
struct OnShellPoint {
  double k;    // relative momentum, GeV
  double E;    // mass-squared spectral value, GeV^2
  double rho;  // density of states dk/dE = 1/(8k), GeV^-1

  static OnShellPoint from_momentum(double k, const ModelParams& params);
};

/// Resolvent pairing h(z) = <g|(z - M0^2)^{-1}|g>
///   = int_0^inf dk g0(k)^2 / (z - 4(k^2 + m^2)).
/// For real E > 4m^2 pass limit_from_above = true to get the boundary value
/// h(E + i0) = PV - i pi g0(k_E)^2 rho(k_E); without the flag such z is
/// rejected. Satisfies h(conj z) = conj h(z).
Complex resolvent_pairing(Complex z, const ModelParams& params,
                          bool limit_from_above = false);

/// Rank-one Lippmann-Schwinger amplitude tau(z) = -lambda / (1 + lambda h(z)).
Complex tau(Complex z, const ModelParams& params,
            bool limit_from_above = false);

/// On-shell S-matrix S(k) = 1 - 2 pi i rho(k) g0(k)^2 tau(E(k) + i0).
Complex on_shell_S(double k, const ModelParams& params);

/// s-wave phase shift, continuous branch tracked from large k where it
/// vanishes. S = exp(2 i delta).
double phase_shift(double k, const ModelParams& params);

/// Sharp-momentum transition matrix element T(k) = (1 - S(k)) / (2 pi i),
/// the zero-width limit of the wave-packet extraction.
Complex sharp_T_exact(double k, const ModelParams& params);

/// Location of the real zero of 1 + lambda h(z) on (0, 4m^2): the
/// bound-state pole of tau.
double bound_state_pole(const ModelParams& params);

/// Center and width of a radial Gaussian packet e^{-alpha (k-k0)^2}.
struct PacketSpec {
  double k0;
  double alpha;

  double width() const { return 1.0 / std::sqrt(alpha); }
};

/// Exact S-matrix element between normalized Gaussian packets,
/// int dE v_out*(E) v_in(E) S(E) evaluated as a momentum quadrature over
/// the packet support. Rejects packets leaking below threshold.
Complex packet_S_exact(const PacketSpec& out, const PacketSpec& in,
                       const ModelParams& params);

}  // namespace euscat

#endif
