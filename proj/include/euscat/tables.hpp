#ifndef EUSCAT_TABLES_HPP
#define EUSCAT_TABLES_HPP

#include <string>
#include <vector>

#include "euscat/config.hpp"

namespace euscat {

/// Output of one experiment runner: a CSV payload plus its internal
/// acceptance verdict.
struct TableResult {
  std::string name;
  std::string csv;
  bool pass = true;
  std::vector<std::string> notes;
};

/// Width-tuning study: (k0, alpha, k_w, % extraction error, k_w/k0).
TableResult run_table1(const RunConfig& config);

/// Iterated S-matrix convergence at (table2_k0, table2_alpha):
/// (n, Re(S_n - 1), Im(S_n - 1), |S_n - S_exact|, relative deviation).
TableResult run_table2(const RunConfig& config);

/// Scalar Chebyshev degree study against the printed reference errors.
TableResult run_table3(const RunConfig& config);

/// Full polynomial pipeline sharp-T per k0: (k0, Re T, Im T, % error).
TableResult run_table4(const RunConfig& config);

/// Euclidean generating-functional checks: reflection positivity,
/// invariance, clustering, and the perturbed-kernel probe.
TableResult run_euclidean_report(const RunConfig& config);

std::vector<TableResult> run_all(const RunConfig& config);

/// Writes <out_dir>/<name>.csv; creates the directory if needed.
void write_result(const TableResult& result, const std::string& out_dir);

}  // namespace euscat

#endif
