#ifndef STOLZ_CONFIG_HPP
#define STOLZ_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stolz/model.hpp"

namespace stolz {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Run configuration: an INI-style file with a [model] section and one
// section per subcommand. Parsing is strict: unknown sections or keys
// are rejected, and the ModelParams invariants are enforced at load.

struct SimulateConfig {
  double x0 = 1, y0 = 1, z0 = 1;
  double dt = 1e-3;
  long n_steps = 10000;
  std::uint64_t seed = 1;
};

struct HittingConfig {
  double x0 = 60, y0 = 0, z0 = 5;
  double radius = 55;
  double dt = 1e-3;
  double horizon = 50;
  long n_traj = 1000;
  std::uint64_t seed = 1;
};

struct StationaryConfig {
  double x0 = 5, y0 = 0, z0 = 0;
  double dt = 2e-3;
  double t_burn = -1;  // < 0: default 20% of t_sample
  double t_sample = 2000;
  long stride = 5;
  int bins = 101;
  std::uint64_t seed = 1;
};

struct DiagnoseConfig {
  double x0 = 0, y0 = 0, z0 = 0;
  double dt = 1e-2;
  double horizon = 10;
  long n_traj = 1000;
  int n_records = 100;
  std::uint64_t seed = 1;
};

struct CertificateConfig {
  int budget = 80;
  int samples_search = 400;
  int samples_final = 10000;
  int ladder = 20;
  std::uint64_t seed = 20240901;
};

struct TransienceConfig {
  int samples = 2000;
  int n_dirs = 1000;
  int ladder = 20;
  double radius = 0;  // 0: 2(sigma+rho)+10
  std::uint64_t seed = 424242;
};

struct BracketsConfig {
  int max_level = 4;
};

struct GeneratorCheckConfig {
  int n_points = 1000;
  double halfwidth = 50;
  std::uint64_t seed = 2029;
  // extra fields to evaluate by registry name, comma separated
  // (e.g. "V,M,F_N:3"), applied at the probe point below
  std::string fields;
  double at_x = 1.0, at_y = 1.0, at_z = 2.0;
};

struct RunConfig {
  ModelParams model{10, 28, 0, 1, 0, 0};
  SimulateConfig simulate;
  HittingConfig hitting;
  StationaryConfig stationary;
  DiagnoseConfig diagnose;
  CertificateConfig certificate;
  TransienceConfig transience;
  BracketsConfig brackets;
  GeneratorCheckConfig generator_check;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (...) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + v);
  }
  if (pos != v.size())
    throw ConfigError("config: trailing junk in value for '" + key + "': " + v);
  return x;
}

inline long parse_long(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 9e15)
    throw ConfigError("config: expected an integer for '" + key + "': " + v);
  return static_cast<long>(x);
}

inline std::uint64_t parse_seed(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long s = std::stoull(v, &pos);
    if (pos != v.size()) throw ConfigError("");
    return static_cast<std::uint64_t>(s);
  } catch (...) {
    throw ConfigError("config: bad seed for '" + key + "': " + v);
  }
}

}  // namespace detail

/// Parses a strict INI config. Unknown sections/keys raise ConfigError;
/// model invariants are validated before returning.
inline RunConfig parse_config(std::istream& in) {
  std::map<std::string, std::map<std::string, std::string>> kv;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": key outside any section");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (kv[section].count(key))
      throw ConfigError("config: duplicate key '" + section + "." + key + "'");
    kv[section][key] = val;
  }

  RunConfig cfg;
  double sigma = 10, rho = 28, beta = 0, g1 = 1, g2 = 0, g3 = 0;

  auto consume = [&](const std::string& sec, const std::string& key,
                     auto&& setter) {
    auto si = kv.find(sec);
    if (si == kv.end()) return;
    auto ki = si->second.find(key);
    if (ki == si->second.end()) return;
    setter(ki->second);
    si->second.erase(ki);
  };
  auto num = [&](const std::string& sec, const std::string& key, double& dst) {
    consume(sec, key, [&](const std::string& v) {
      dst = detail::parse_double(sec + "." + key, v);
    });
  };
  auto integer = [&](const std::string& sec, const std::string& key,
                     auto& dst) {
    consume(sec, key, [&](const std::string& v) {
      dst = static_cast<std::decay_t<decltype(dst)>>(
          detail::parse_long(sec + "." + key, v));
    });
  };
  auto seed = [&](const std::string& sec, std::uint64_t& dst) {
    consume(sec, "seed", [&](const std::string& v) {
      dst = detail::parse_seed(sec + ".seed", v);
    });
  };

  num("model", "sigma", sigma);
  num("model", "rho", rho);
  num("model", "beta", beta);
  num("model", "gamma1", g1);
  num("model", "gamma2", g2);
  num("model", "gamma3", g3);
  try {
    cfg.model = ModelParams(sigma, rho, beta, g1, g2, g3);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  num("simulate", "x0", cfg.simulate.x0);
  num("simulate", "y0", cfg.simulate.y0);
  num("simulate", "z0", cfg.simulate.z0);
  num("simulate", "dt", cfg.simulate.dt);
  integer("simulate", "n_steps", cfg.simulate.n_steps);
  seed("simulate", cfg.simulate.seed);

  num("hitting", "x0", cfg.hitting.x0);
  num("hitting", "y0", cfg.hitting.y0);
  num("hitting", "z0", cfg.hitting.z0);
  num("hitting", "radius", cfg.hitting.radius);
  num("hitting", "dt", cfg.hitting.dt);
  num("hitting", "horizon", cfg.hitting.horizon);
  integer("hitting", "n_traj", cfg.hitting.n_traj);
  seed("hitting", cfg.hitting.seed);

  num("stationary", "x0", cfg.stationary.x0);
  num("stationary", "y0", cfg.stationary.y0);
  num("stationary", "z0", cfg.stationary.z0);
  num("stationary", "dt", cfg.stationary.dt);
  num("stationary", "t_burn", cfg.stationary.t_burn);
  num("stationary", "t_sample", cfg.stationary.t_sample);
  integer("stationary", "stride", cfg.stationary.stride);
  integer("stationary", "bins", cfg.stationary.bins);
  seed("stationary", cfg.stationary.seed);

  num("diagnose", "x0", cfg.diagnose.x0);
  num("diagnose", "y0", cfg.diagnose.y0);
  num("diagnose", "z0", cfg.diagnose.z0);
  num("diagnose", "dt", cfg.diagnose.dt);
  num("diagnose", "horizon", cfg.diagnose.horizon);
  integer("diagnose", "n_traj", cfg.diagnose.n_traj);
  integer("diagnose", "n_records", cfg.diagnose.n_records);
  seed("diagnose", cfg.diagnose.seed);

  integer("certificate", "budget", cfg.certificate.budget);
  integer("certificate", "samples_search", cfg.certificate.samples_search);
  integer("certificate", "samples_final", cfg.certificate.samples_final);
  integer("certificate", "ladder", cfg.certificate.ladder);
  seed("certificate", cfg.certificate.seed);

  integer("transience", "samples", cfg.transience.samples);
  integer("transience", "n_dirs", cfg.transience.n_dirs);
  integer("transience", "ladder", cfg.transience.ladder);
  num("transience", "radius", cfg.transience.radius);
  seed("transience", cfg.transience.seed);

  integer("brackets", "max_level", cfg.brackets.max_level);

  integer("generator-check", "n_points", cfg.generator_check.n_points);
  num("generator-check", "halfwidth", cfg.generator_check.halfwidth);
  seed("generator-check", cfg.generator_check.seed);
  consume("generator-check", "fields",
          [&](const std::string& v) { cfg.generator_check.fields = v; });
  num("generator-check", "at_x", cfg.generator_check.at_x);
  num("generator-check", "at_y", cfg.generator_check.at_y);
  num("generator-check", "at_z", cfg.generator_check.at_z);

  for (const auto& [sec, keys] : kv) {
    static const std::set<std::string> known{
        "model",       "simulate",   "hitting",  "stationary",
        "diagnose",    "certificate", "transience", "brackets",
        "generator-check"};
    if (!known.count(sec))
      throw ConfigError("config: unknown section [" + sec + "]");
    if (!keys.empty())
      throw ConfigError("config: unknown key '" + sec + "." +
                        keys.begin()->first + "'");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  return parse_config(in);
}

}  // namespace stolz

#endif  // STOLZ_CONFIG_HPP
