#ifndef EUSCAT_CONFIG_HPP
#define EUSCAT_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "euscat/model.hpp"

namespace euscat {

/// Flat key = value run configuration. Every physics default is embedded
/// here and printed into output provenance.
struct RunConfig {
  // physical constants
  double m = 0.9383;
  double m_pi = 0.1396;
  double B_d = 0.0022246;
  double lambda_scale = 1.0;  // multiplies the solved coupling (0 = free)

  // grid
  int grid_points = 300;

  // experiment parameters
  std::vector<double> k0_list{0.1, 0.3, 0.5, 0.7, 0.9,
                              1.1, 1.3, 1.5, 1.7, 1.9};
  std::vector<double> alpha_list{105000.0, 10500.0, 3000.0, 1350.0, 750.0,
                                 475.0,    330.0,   250.0,  190.0,  150.0};
  std::vector<int> n_list{50, 100, 150, 200, 250, 300, 350, 400};
  double table2_k0 = 2.0;
  double table2_alpha = 135.0;
  int table4_n = 300;
  double tune_target = 0.001;  // table4 packet-width tuning target
  double beta_scale = 1.0;    // beta = beta_scale / E_cm
  int degree_margin = 100;    // polynomial degree = 2n + margin

  // euclidean checks
  double euclid_mass = 1.0;
  int euclid_functions = 8;
  int euclid_gh_points = 32;
  double euclid_epsilon = -0.5;

  std::uint64_t seed = 20260801;

  ModelParams params() const {
    ModelParams p;
    p.m = m;
    p.m_pi = m_pi;
    p.B_d = B_d;
    return p;
  }

  void validate() const;

  /// Sorted key = value rendering; input to the provenance hash.
  std::string canonical() const;
  std::uint64_t hash() const;

  void apply_override(const std::string& key, const std::string& value);
};

/// Parses a flat key = value file ('#' starts a comment).
RunConfig load_config(const std::string& path);

/// As load_config but from text already in memory.
RunConfig parse_config(const std::string& text);

/// FNV-1a of a byte string.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace euscat

#endif
