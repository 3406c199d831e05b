#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "euscat/config.hpp"
#include "euscat/tables.hpp"

namespace {

int run(const std::string& which, const euscat::RunConfig& config,
        const std::string& out_dir) {
  std::vector<euscat::TableResult> results;
  if (which == "all") {
    results = euscat::run_all(config);
  } else if (which == "table1") {
    results.push_back(euscat::run_table1(config));
  } else if (which == "table2") {
    results.push_back(euscat::run_table2(config));
  } else if (which == "table3") {
    results.push_back(euscat::run_table3(config));
  } else if (which == "table4") {
    results.push_back(euscat::run_table4(config));
  } else if (which == "euclid") {
    results.push_back(euscat::run_euclidean_report(config));
  }
  bool all_pass = true;
  for (const euscat::TableResult& r : results) {
    euscat::write_result(r, out_dir);
    std::cout << r.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
    for (const std::string& note : r.notes) std::cout << "  " << note << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euclidean relativistic scattering experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;

  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory for CSV files");
  app.add_option("--override", overrides,
                 "key=value override (repeatable)");

  std::vector<std::string> names{"table1", "table2", "table3",
                                 "table4", "euclid", "all"};
  for (const std::string& name : names)
    app.add_subcommand(name, "run " + name)->fallthrough();

  CLI11_PARSE(app, argc, argv);

  euscat::RunConfig config;
  try {
    if (!config_path.empty()) config = euscat::load_config(config_path);
    for (const std::string& ov : overrides) {
      size_t eq = ov.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("override must be key=value: " + ov);
      config.apply_override(ov.substr(0, eq), ov.substr(eq + 1));
    }
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), config, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
