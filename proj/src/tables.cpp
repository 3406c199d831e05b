#include "euscat/tables.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "euscat/chebyshev.hpp"
#include "euscat/euclidean.hpp"
#include "euscat/exact.hpp"
#include "euscat/wavepacket.hpp"

namespace euscat {

namespace {

std::string num(double x) {
  char buf[40];
  snprintf(buf, sizeof(buf), "%.14e", x);
  return buf;
}

std::string provenance(const RunConfig& config) {
  char buf[40];
  snprintf(buf, sizeof(buf), "# config = %016llx\n",
           static_cast<unsigned long long>(config.hash()));
  return buf;
}

struct GridModel {
  ModelParams params;
  MomentumGrid grid;
  double beta = 0.0;
  MatrixXd K;
  VectorXd K0_diag;
};

GridModel build_grid_model(const RunConfig& config, double k0, double alpha) {
  GridModel gm;
  gm.params = config.params();
  gm.grid = build_grid_for_packet(gm.params, k0, alpha, config.grid_points);
  gm.params.lambda =
      config.lambda_scale * solve_coupling(gm.params, gm.grid);
  gm.beta = config.beta_scale /
            (2.0 * std::sqrt(k0 * k0 + gm.params.m * gm.params.m));
  SpectralDecomposition decomp =
      spectral_decompose(mass_squared_matrix(gm.grid, gm.params));
  gm.K = semigroup(decomp, gm.beta);
  gm.K0_diag =
      (-gm.beta * free_energies(gm.grid, gm.params).array()).exp().matrix();
  return gm;
}

Complex iterated_element(const GridModel& gm, const GaussianPacket& packet,
                         int n, int degree) {
  VectorXcd psi = weighted_state(packet, gm.grid);
  ApplyOp apply_K = [&gm](const VectorXcd& v) -> VectorXcd {
    return gm.K * v;
  };
  return s_matrix_iterated(n, degree, apply_K, gm.K0_diag, psi, psi);
}

}  // namespace

TableResult run_table1(const RunConfig& config) {
  config.validate();
  TableResult result;
  result.name = "table1";
  ModelParams params = config.params();
  MomentumGrid lambda_grid =
      build_grid(params, std::max(config.grid_points, 200),
                 10.0 * params.m_pi);
  params.lambda = config.lambda_scale * solve_coupling(params, lambda_grid);

  std::ostringstream csv;
  csv << provenance(config);
  csv << "k0,alpha,k_w,percent_error,kw_over_k0\n";
  for (size_t i = 0; i < config.k0_list.size(); ++i) {
    double k0 = config.k0_list[i];
    double alpha = config.alpha_list[i];
    double kw = 1.0 / std::sqrt(alpha);
    double err_pct;
    if (params.lambda == 0.0) {
      ExtractionResult ex = oracle_extraction(k0, alpha, params);
      err_pct = 100.0 * std::abs(ex.T_extracted);
      if (err_pct > 1e-10) {
        result.pass = false;
        result.notes.push_back("free-theory extraction not zero");
      }
    } else {
      err_pct = 100.0 * oracle_extraction_error(k0, alpha, params);
      if (!(err_pct >= 0.02 && err_pct <= 0.3)) {
        result.pass = false;
        result.notes.push_back("k0 = " + std::to_string(k0) +
                               ": extraction error outside [0.02, 0.3]%");
      }
    }
    csv << num(k0) << "," << num(alpha) << "," << num(kw) << ","
        << num(err_pct) << "," << num(kw / k0) << "\n";
  }
  result.csv = csv.str();
  return result;
}

TableResult run_table2(const RunConfig& config) {
  config.validate();
  TableResult result;
  result.name = "table2";
  const double k0 = config.table2_k0;
  const double alpha = config.table2_alpha;
  GridModel gm = build_grid_model(config, k0, alpha);
  GaussianPacket packet = make_packet(k0, alpha, gm.grid);

  const bool free_theory = (gm.params.lambda == 0.0);
  Complex S_ex = free_theory
                     ? Complex(1.0, 0.0)
                     : packet_S_exact(packet.spec(), packet.spec(), gm.params);
  const double scale = std::abs(S_ex - 1.0);

  std::ostringstream csv;
  csv << provenance(config);
  csv << "n,re_S_minus_1,im_S_minus_1,abs_diff_from_exact,rel_diff\n";

  std::vector<double> rel;
  std::vector<Complex> values;
  for (int n : config.n_list) {
    // table row n corresponds to the iterated product at parameter 2n
    int n_iter = 2 * n;
    int degree = 2 * n_iter + config.degree_margin;
    Complex S_n = iterated_element(gm, packet, n_iter, degree);
    double diff = std::abs(S_n - S_ex);
    double r = (scale > 0.0) ? diff / scale : diff;
    rel.push_back(r);
    values.push_back(S_n);
    csv << n << "," << num(S_n.real() - 1.0) << "," << num(S_n.imag()) << ","
        << num(diff) << "," << num(r) << "\n";
    if (free_theory && std::abs(S_n - 1.0) > 1e-10) {
      result.pass = false;
      result.notes.push_back("free-theory S_n deviates from 1");
    }
  }
  csv << "ex," << num(S_ex.real() - 1.0) << "," << num(S_ex.imag())
      << ",0,0\n";
  result.csv = csv.str();

  if (!free_theory) {
    for (size_t i = 0; i + 1 < rel.size(); ++i) {
      if (rel[i] > 1e-9 && rel[i + 1] >= rel[i]) {
        result.pass = false;
        result.notes.push_back("convergence not monotone at n = " +
                               std::to_string(config.n_list[i + 1]));
      }
    }
    for (size_t i = 0; i < config.n_list.size(); ++i) {
      if (config.n_list[i] >= 300) {
        if (rel[i] > 1e-8) {
          result.pass = false;
          result.notes.push_back("relative deviation at n >= 300 above 1e-8");
        }
        break;
      }
    }
    auto find_n = [&](int n) -> const Complex* {
      for (size_t i = 0; i < config.n_list.size(); ++i)
        if (config.n_list[i] == n) return &values[i];
      return nullptr;
    };
    const Complex* s300 = find_n(300);
    const Complex* s400 = find_n(400);
    if (s300 && s400) {
      double agree =
          std::abs(*s300 - *s400) / std::abs(*s300 - Complex(1.0, 0.0));
      if (agree > 1e-9) {
        result.pass = false;
        result.notes.push_back("rows n = 300/400 agree to fewer than 9 digits");
      }
    }
  }
  return result;
}

namespace {

struct Table3Row {
  double x;
  int n;
  int degree;
  double paper_error;  // percent
};

const Table3Row kTable3Rows[] = {
    {0.1, 200, 200, 3.276e+00}, {0.1, 200, 250, 1.925e-11},
    {0.1, 200, 300, 4.903e-13}, {0.1, 630, 630, 2.069e+00},
    {0.1, 630, 680, 5.015e-08}, {0.1, 630, 700, 7.456e-11},
    {0.5, 200, 200, 1.627e-13}, {0.5, 200, 250, 3.266e-13},
    {0.5, 630, 580, 1.430e-14}, {0.5, 630, 680, 9.330e-13},
    {0.9, 200, 200, 3.276e+00}, {0.9, 200, 250, 1.950e-11},
    {0.9, 200, 300, 9.828e-13}, {0.9, 630, 630, 2.069e+00},
    {0.9, 630, 680, 5.015e-08}, {0.9, 630, 700, 7.230e-11},
};

bool table3_row_ok(double err, double paper) {
  if (paper >= 0.1)
    return err >= 0.1 && err <= 10.0 * paper && err >= 0.1 * paper;
  if (paper >= 1e-9) return err <= 10.0 * paper && err >= 0.1 * paper;
  return err <= std::max(10.0 * paper, 1e-9);
}

}  // namespace

TableResult run_table3(const RunConfig& config) {
  config.validate();
  TableResult result;
  result.name = "table3";
  std::ostringstream csv;
  csv << provenance(config);
  csv << "x,n,degree,percent_error,paper_percent_error\n";
  for (const Table3Row& row : kTable3Rows) {
    // the tabulated iteration count n drives the factor e^{2 i n x}
    double nu = 2.0 * row.n;
    ChebyshevSeries series = cheb_coeffs(nu, row.degree);
    Complex approx = cheb_eval_scalar(series, row.x);
    double err = 100.0 * std::abs(approx - std::exp(kI * (nu * row.x)));
    csv << row.x << "," << row.n << "," << row.degree << "," << num(err)
        << "," << num(row.paper_error) << "\n";
    if (!table3_row_ok(err, row.paper_error)) {
      result.pass = false;
      std::ostringstream note;
      note << "row (x=" << row.x << ", n=" << row.n << ", deg=" << row.degree
           << "): error " << err << "% vs paper " << row.paper_error << "%";
      result.notes.push_back(note.str());
    }
  }
  result.csv = csv.str();
  return result;
}

TableResult run_table4(const RunConfig& config) {
  config.validate();
  TableResult result;
  result.name = "table4";
  std::ostringstream csv;
  csv << provenance(config);
  csv << "k0,re_T,im_T,percent_error\n";
  ModelParams tune_params = config.params();
  tune_params.lambda =
      config.lambda_scale *
      solve_coupling(tune_params,
                     build_grid(tune_params, config.grid_points,
                                10.0 * tune_params.m_pi));
  for (size_t i = 0; i < config.k0_list.size(); ++i) {
    double k0 = config.k0_list[i];
    // packet width tuned so the extraction bias sits at tune_target
    double alpha = (tune_params.lambda == 0.0)
                       ? config.alpha_list[i]
                       : tune_width(k0, config.tune_target, tune_params);
    GridModel gm = build_grid_model(config, k0, alpha);
    // iteration count: at least 2 * table4_n (row semantics), scaled up
    // for narrow packets whose free motion in the semigroup variable is
    // slow; n0 = 1/(K0'(k0) sigma_k) is the dephasing scale
    double H0 = 2.0 * std::sqrt(k0 * k0 + gm.params.m * gm.params.m);
    double K0p = gm.beta * std::exp(-gm.beta * H0) * 2.0 * k0 /
                 std::sqrt(k0 * k0 + gm.params.m * gm.params.m);
    double sigma_k = 1.0 / std::sqrt(2.0 * alpha);
    int n = std::max(2 * config.table4_n,
                     static_cast<int>(std::ceil(3.2 / (K0p * sigma_k))));
    int degree = 2 * n + config.degree_margin;
    GaussianPacket packet = make_packet(k0, alpha, gm.grid);
    Complex S_n = iterated_element(gm, packet, n, degree);
    Complex identity = energy_overlap(packet, packet, gm.grid, gm.params);
    Complex T = extract_sharp_T(S_n, identity, identity);

    double err_pct = 0.0;
    if (gm.params.lambda == 0.0) {
      if (std::abs(T) > 1e-12) {
        result.pass = false;
        result.notes.push_back("free-theory T not zero");
      }
    } else {
      Complex T_oracle = sharp_T_exact(k0, gm.params);
      err_pct = 100.0 * std::abs(T - T_oracle) / std::abs(T_oracle);
      if (!(err_pct < 0.15 && err_pct > 0.01)) {
        result.pass = false;
        result.notes.push_back("k0 = " + std::to_string(k0) +
                               ": pipeline error outside (0.01, 0.15)%");
      }
      if (!(T.real() < 0.0)) {
        result.pass = false;
        result.notes.push_back("k0 = " + std::to_string(k0) +
                               ": Re T not negative");
      }
    }
    csv << num(k0) << "," << num(T.real()) << "," << num(T.imag()) << ","
        << num(err_pct) << "\n";
  }
  result.csv = csv.str();
  return result;
}

TableResult run_euclidean_report(const RunConfig& config) {
  config.validate();
  TableResult result;
  result.name = "euclid";
  std::ostringstream csv;
  csv << provenance(config);
  csv << "check,index,value,threshold,pass\n";
  std::mt19937_64 rng(config.seed);
  CovarianceKernel kernel{config.euclid_mass, 0.0};
  PairingOptions opts;
  opts.base_points = config.euclid_gh_points;
  const double mass = config.euclid_mass;

  auto emit = [&](const std::string& check, int index, double value,
                  double threshold, bool ok) {
    csv << check << "," << index << "," << num(value) << "," << num(threshold)
        << "," << (ok ? 1 : 0) << "\n";
    if (!ok) {
      result.pass = false;
      result.notes.push_back(check + "[" + std::to_string(index) +
                             "] failed");
    }
  };

  // reflection positivity of the free-field Gram
  std::vector<TestFunction> fns;
  for (int i = 0; i < config.euclid_functions; ++i)
    fns.push_back(random_test_function(rng, mass));
  auto [min_eig, psd_ok] = check_psd(gram_matrix(fns, kernel, opts), 1e-10);
  emit("gram_psd_min_eig", 0, min_eig, -1e-10, psd_ok);

  // Euclidean invariance on random motions
  for (int i = 0; i < 10; ++i) {
    TestFunction f = random_test_function(rng, mass);
    Matrix4d O = random_rotation(rng);
    Vector4d a;
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int j = 0; j < 4; ++j) a[j] = unif(rng) / mass;
    double dev = invariance_check(f, O, a, kernel, opts);
    emit("invariance_deviation", i, dev, 1e-9, dev < 1e-9);
  }

  // cluster decay ladder
  TestFunction cf, cg;
  cf.sigma_tau = 0.35 / mass;
  cf.sigma_x = 0.5 / mass;
  cf.center = Vector4d(2.0 / mass, 0.0, 0.0, 0.0);
  cf.amplitude = Complex(2.0, 0.0);
  cg = cf;
  cg.center = Vector4d(2.2 / mass, 0.1 / mass, 0.0, 0.0);
  std::vector<double> seps;
  for (double s : {3.0, 5.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0})
    seps.push_back(s / mass);
  std::vector<double> devs = cluster_check(cf, cg, seps,
                                           Eigen::Vector3d(1.0, 0.0, 0.0),
                                           kernel, opts);
  for (size_t i = 0; i + 1 < devs.size(); ++i)
    emit("cluster_decreasing", static_cast<int>(i), devs[i + 1] - devs[i],
         0.0, devs[i + 1] < devs[i]);
  emit("cluster_final_deviation", 0, devs.back(), 1e-8, devs.back() < 1e-8);
  // log-slope over separations in [10, 20]/mass
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (size_t i = 0; i < seps.size(); ++i) {
    if (seps[i] * mass < 10.0 - 1e-9) continue;
    double x = seps[i], y = std::log(devs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  bool slope_ok = std::abs(slope + mass) <= 0.2 * mass;
  emit("cluster_log_slope", 0, slope, -mass, slope_ok);

  // perturbed kernel must break reflection positivity
  CovarianceKernel bad{mass, config.euclid_epsilon};
  double worst = 1.0;
  for (double amp : {4.0, 8.0, 16.0, 32.0}) {
    std::vector<TestFunction> probe;
    for (double tau : {3.2, 3.8, 4.4, 5.0}) {
      TestFunction f;
      f.sigma_tau = 0.12 / mass;
      f.sigma_x = 0.5 / mass;
      f.center = Vector4d(tau / mass, 0.0, 0.0, 0.0);
      f.amplitude = Complex(amp, 0.0);
      probe.push_back(f);
    }
    auto [eig, ok] = check_psd(gram_matrix(probe, bad, opts), 1e-10);
    worst = std::min(worst, eig);
    if (worst < -1e-6) break;
  }
  if (worst >= -1e-6) {
    // widen the search with random admissible sets
    for (int attempt = 0; attempt < 20 && worst >= -1e-6; ++attempt) {
      std::vector<TestFunction> probe;
      for (int i = 0; i < 4; ++i)
        probe.push_back(random_test_function(rng, mass));
      auto [eig, ok] = check_psd(gram_matrix(probe, bad, opts), 1e-10);
      worst = std::min(worst, eig);
    }
  }
  emit("perturbed_min_eig", 0, worst, -1e-6, worst < -1e-6);

  result.csv = csv.str();
  return result;
}

std::vector<TableResult> run_all(const RunConfig& config) {
  return {run_table1(config), run_table2(config), run_table3(config),
          run_table4(config), run_euclidean_report(config)};
}

void write_result(const TableResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::string path = out_dir + "/" + result.name + ".csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << result.csv;
}

}  // namespace euscat
