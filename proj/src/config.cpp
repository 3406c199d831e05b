#include "euscat/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace euscat {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key +
                                ": '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key +
                                ": '" + v + "'");
  }
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& v,
                          Parse parse) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse(key, item));
  }
  if (out.empty())
    throw std::invalid_argument("config: empty list for " + key);
  return out;
}

std::string fmt(double x) {
  char buf[40];
  snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <typename T>
std::string fmt_list(const std::vector<T>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, double>)
      out += fmt(xs[i]);
    else
      out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  params().validate();
  if (grid_points < 50)
    throw std::invalid_argument("config: grid_points must be >= 50");
  if (!std::is_sorted(n_list.begin(), n_list.end()))
    throw std::invalid_argument("config: n_list must be sorted ascending");
  if (k0_list.size() != alpha_list.size())
    throw std::invalid_argument(
        "config: k0_list and alpha_list must have equal length");
  for (double a : alpha_list)
    if (!(a > 0.0)) throw std::invalid_argument("config: alpha must be > 0");
  for (double k : k0_list)
    if (!(k > 0.0)) throw std::invalid_argument("config: k0 must be > 0");
  if (!(tune_target > 0.0 && tune_target < 1.0))
    throw std::invalid_argument("config: tune_target must be in (0, 1)");
  if (lambda_scale < 0.0)
    throw std::invalid_argument("config: lambda_scale must be >= 0");
  if (euclid_functions < 2 || euclid_functions > 32)
    throw std::invalid_argument("config: euclid_functions out of range");
  if (euclid_gh_points < 16 || euclid_gh_points > 64)
    throw std::invalid_argument("config: euclid_gh_points out of range");
}

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["B_d"] = fmt(B_d);
  kv["alpha_list"] = fmt_list(alpha_list);
  kv["beta_scale"] = fmt(beta_scale);
  kv["degree_margin"] = std::to_string(degree_margin);
  kv["euclid_epsilon"] = fmt(euclid_epsilon);
  kv["euclid_functions"] = std::to_string(euclid_functions);
  kv["euclid_gh_points"] = std::to_string(euclid_gh_points);
  kv["euclid_mass"] = fmt(euclid_mass);
  kv["grid_points"] = std::to_string(grid_points);
  kv["k0_list"] = fmt_list(k0_list);
  kv["lambda_scale"] = fmt(lambda_scale);
  kv["m"] = fmt(m);
  kv["m_pi"] = fmt(m_pi);
  kv["n_list"] = fmt_list(n_list);
  kv["seed"] = std::to_string(seed);
  kv["table2_alpha"] = fmt(table2_alpha);
  kv["table2_k0"] = fmt(table2_k0);
  kv["table4_n"] = std::to_string(table4_n);
  kv["tune_target"] = fmt(tune_target);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

void RunConfig::apply_override(const std::string& key,
                               const std::string& value) {
  const std::string v = trim(value);
  if (key == "m") {
    m = parse_double(key, v);
  } else if (key == "m_pi") {
    m_pi = parse_double(key, v);
  } else if (key == "B_d") {
    B_d = parse_double(key, v);
  } else if (key == "lambda_scale") {
    lambda_scale = parse_double(key, v);
  } else if (key == "grid_points") {
    grid_points = static_cast<int>(parse_int(key, v));
  } else if (key == "k0_list") {
    k0_list = parse_list<double>(key, v, parse_double);
  } else if (key == "alpha_list") {
    alpha_list = parse_list<double>(key, v, parse_double);
  } else if (key == "n_list") {
    n_list = parse_list<int>(key, v, [](const std::string& k,
                                        const std::string& s) {
      return static_cast<int>(parse_int(k, s));
    });
  } else if (key == "table2_k0") {
    table2_k0 = parse_double(key, v);
  } else if (key == "table2_alpha") {
    table2_alpha = parse_double(key, v);
  } else if (key == "table4_n") {
    table4_n = static_cast<int>(parse_int(key, v));
  } else if (key == "tune_target") {
    tune_target = parse_double(key, v);
  } else if (key == "beta_scale") {
    beta_scale = parse_double(key, v);
  } else if (key == "degree_margin") {
    degree_margin = static_cast<int>(parse_int(key, v));
  } else if (key == "euclid_mass") {
    euclid_mass = parse_double(key, v);
  } else if (key == "euclid_functions") {
    euclid_functions = static_cast<int>(parse_int(key, v));
  } else if (key == "euclid_gh_points") {
    euclid_gh_points = static_cast<int>(parse_int(key, v));
  } else if (key == "euclid_epsilon") {
    euclid_epsilon = parse_double(key, v);
  } else if (key == "seed") {
    seed = static_cast<std::uint64_t>(parse_int(key, v));
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not 'key = value'");
    config.apply_override(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace euscat
