#ifndef STOLZ_CLI_HPP
#define STOLZ_CLI_HPP

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "stolz/config.hpp"
#include "stolz/generator.hpp"
#include "stolz/registry.hpp"
#include "stolz/report.hpp"
#include "stolz/simulate.hpp"

namespace stolz {

// Batch entry point. Exit codes: 0 = all checks pass, 1 = a check
// failed, 2 = configuration error. Reports are JSON, bulk data CSV;
// nothing time-stamped, so a rerun with the same config and seed
// reproduces every output byte for byte.

namespace cli_detail {

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

inline void write_json(const std::filesystem::path& p, const json& j) {
  write_text(p, j.dump(2) + "\n");
}

inline std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline int run_simulate(const RunConfig& cfg,
                        const std::filesystem::path& out) {
  const auto& s = cfg.simulate;
  const Trajectory t = simulate(cfg.model, {s.x0, s.y0, s.z0}, s.dt,
                                static_cast<std::size_t>(s.n_steps), s.seed);
  std::ofstream csv(out / "trajectory.csv", std::ios::binary);
  write_csv(t, csv);
  json j{{"subcommand", "simulate"},
         {"n_states", t.size()},
         {"escaped", t.escaped},
         {"config", to_json(cfg)}};
  write_json(out / "simulate_report.json", j);
  if (t.escaped)
    std::cerr << "simulate: trajectory escaped numeric range (flagged, "
                 "truncated)\n";
  return 0;
}

inline int run_generator_check(const RunConfig& cfg,
                               const std::filesystem::path& out) {
  const auto& g = cfg.generator_check;
  const ModelParams& mp = cfg.model;
  const ScalarField H = field_H(mp);
  const ScalarField M = field_M(mp);

  double worst_closed_H = 0.0, worst_closed_M = 0.0, worst_fd = 0.0;
  QuasiSequence seq(g.seed);
  for (int i = 0; i < g.n_points; ++i) {
    const auto u = seq.next();
    const Point3 p{g.halfwidth * (2 * u[0] - 1), g.halfwidth * (2 * u[1] - 1),
                   g.halfwidth * (2 * u[2] - 1)};
    const double lh = apply_generator(mp, H, p);
    const double lm = apply_generator(mp, M, p);
    worst_closed_H = std::max(
        worst_closed_H, std::abs(lh - lh_closed(mp, p)) /
                            std::max(1.0, std::abs(lh_closed(mp, p))));
    worst_closed_M = std::max(
        worst_closed_M, std::abs(lm - lm_closed(mp, p)) /
                            std::max(1.0, std::abs(lm_closed(mp, p))));
    for (const ScalarField* f : {&H, &M}) {
      const double ad = apply_generator(mp, *f, p);
      const double fd = apply_generator_fd(
          mp, [&](const Point3& q) { return (*f)(q); }, p);
      const double scale = std::max(1.0, generator_scale(mp, p, f->jet(p)));
      worst_fd = std::max(worst_fd, std::abs(ad - fd) / scale);
    }
  }

  // psi1 expansion oracle on R1 samples of the reduced system
  const ModelParams red(mp.sigma, 0.0, 0.0, std::max(mp.gamma1, 1e-3),
                        mp.gamma2, mp.gamma3);
  const FieldContext ctx = FieldContext::defaults(red);
  const ScalarField psi1 = field_psi1(ctx.rp.kappa1);
  double worst_psi1 = 0.0;
  long n_psi1 = 0;
  for (const auto& shell : recurrence_region_shells(ctx.rp, 1, 8)) {
    for (const Point3& p : sample_region(shell, 50, g.seed + 1)) {
      const double lhs = apply_generator(red, psi1, p);
      const double rhs = l_psi1_closed(red, ctx.rp.kappa1, p);
      worst_psi1 = std::max(
          worst_psi1, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      ++n_psi1;
    }
  }

  // named registry fields, evaluated at the configured probe point
  json named = json::object();
  if (!g.fields.empty()) {
    const Point3 at{g.at_x, g.at_y, g.at_z};
    FieldContext ctx = FieldContext::defaults(mp);
    std::istringstream list(g.fields);
    std::string name;
    while (std::getline(list, name, ',')) {
      name = detail::trim(name);
      if (name.empty()) continue;
      try {
        const ScalarField f = make_field(name, mp, ctx);
        const Jet2 jet = f.jet_checked(at);
        named[name] = json{{"value", jet.v},
                           {"grad", jet.g},
                           {"diag2", jet.h},
                           {"generator", generator_contract(mp, at, jet)}};
      } catch (const FieldDomainError& e) {
        named[name] = json{{"error", e.what()}};
      } catch (const std::invalid_argument& e) {
        named[name] = json{{"error", e.what()}};
      }
    }
  }

  const bool pass = worst_closed_H < 1e-10 && worst_closed_M < 1e-10 &&
                    worst_fd < 1e-6 && worst_psi1 < 1e-8;
  json j{{"subcommand", "generator-check"},
         {"n_points", g.n_points},
         {"max_rel_error", json{{"closed_form_H", worst_closed_H},
                                {"closed_form_M", worst_closed_M},
                                {"autodiff_vs_fd", worst_fd},
                                {"psi1_expansion", worst_psi1}}},
         {"n_psi1_samples", n_psi1},
         {"tolerances", json{{"closed_form", 1e-10},
                             {"autodiff_vs_fd", 1e-6},
                             {"psi1_expansion", 1e-8}}},
         {"fields", named},
         {"pass", pass},
         {"config", to_json(cfg)}};
  write_json(out / "generator_check_report.json", j);
  if (!pass) std::cerr << "generator-check: oracle mismatch above tolerance\n";
  return pass ? 0 : 1;
}

inline int run_certificate_recurrence(const RunConfig& cfg,
                                      const std::filesystem::path& out) {
  RecurrenceSearchOptions opt;
  opt.budget = cfg.certificate.budget;
  opt.n_search = cfg.certificate.samples_search;
  opt.n_final = cfg.certificate.samples_final;
  opt.ladder_steps = cfg.certificate.ladder;
  opt.seed = cfg.certificate.seed;
  const auto cert = search_recurrence_params(cfg.model, opt);
  json j = to_json(cert);
  j["subcommand"] = "certificate recurrence";
  j["config"] = to_json(cfg);
  write_json(out / "certificate_recurrence.json", j);
  if (!cert.found)
    std::cerr << "certificate recurrence: no certificate found ("
              << cert.failure_reason << ")\n";
  return cert.found ? 0 : 1;
}

inline int run_certificate_transience(const RunConfig& cfg,
                                      const std::filesystem::path& out) {
  TransienceParams tp = solve_transience_constants(cfg.model);
  tp.K = estimate_log_energy_drift_bound(cfg.model, tp.kappa0,
                                         cfg.transience.seed + 7,
                                         cfg.transience.radius);
  tp.validate();
  WonhamOptions opt;
  opt.radius = cfg.transience.radius;
  opt.ladder_steps = cfg.transience.ladder;
  opt.n_dirs = cfg.transience.n_dirs;
  opt.n_per_shell = cfg.transience.samples;
  opt.seed = cfg.transience.seed;
  const auto rep = check_wonham_hypotheses(cfg.model, tp, opt);
  json j{{"subcommand", "certificate transience"},
         {"constants", to_json(tp)},
         {"wonham", to_json(rep)},
         {"pass", rep.pass},
         {"config", to_json(cfg)}};
  write_json(out / "certificate_transience.json", j);
  if (!rep.pass)
    std::cerr << "certificate transience: a Wonham hypothesis failed\n";
  return rep.pass ? 0 : 1;
}

inline int run_brackets(const RunConfig& cfg,
                        const std::filesystem::path& out) {
  const BracketModel bm = bracket_model(cfg.model);
  const auto h = build_hierarchy(drift_field(bm), active_noise_fields(bm),
                                 cfg.brackets.max_level);
  const auto span = spanning_test(h);
  json j = to_json(h, span);
  j["subcommand"] = "brackets";
  j["config"] = to_json(cfg);
  write_json(out / "brackets.json", j);
  return 0;
}

inline int run_hitting(const RunConfig& cfg, const std::filesystem::path& out,
                       int threads) {
  const auto& h = cfg.hitting;
  const auto st = estimate_hitting(cfg.model, {h.x0, h.y0, h.z0}, h.radius,
                                   h.dt, h.horizon, h.n_traj, h.seed, threads);
  std::string csv = "traj_id,hit,hit_time\n";
  for (long id = 0; id < st.n_traj; ++id) {
    const double o = st.outcomes[id];
    const bool hit = o >= 0.0;
    csv += std::to_string(id) + "," + (hit ? "1" : "0") + "," +
           csv_double(hit ? o : st.horizon) + "\n";
  }
  write_text(out / "hitting_times.csv", csv);
  json j = to_json(st);
  j["subcommand"] = "hitting-time";
  j["config"] = to_json(cfg);
  write_json(out / "hitting_report.json", j);
  return 0;
}

inline int run_stationary(const RunConfig& cfg,
                          const std::filesystem::path& out) {
  const auto& s = cfg.stationary;
  EmpiricalLaw law;
  try {
    law = estimate_stationary(cfg.model, {s.x0, s.y0, s.z0}, s.dt, s.t_burn,
                              s.t_sample, s.seed, s.bins, s.stride);
  } catch (const std::runtime_error& e) {
    json j{{"subcommand", "stationary"},
           {"failed", true},
           {"reason", e.what()},
           {"config", to_json(cfg)}};
    write_json(out / "stationary_report.json", j);
    std::cerr << "stationary: " << e.what() << "\n";
    return 1;
  }
  const char* names[3] = {"hist_x.csv", "hist_y.csv", "hist_z.csv"};
  for (int c = 0; c < 3; ++c) {
    std::string csv = "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < law.counts[c].size(); ++b)
      csv += csv_double(law.bin_edges[c][b]) + "," +
             csv_double(law.bin_edges[c][b + 1]) + "," +
             std::to_string(law.counts[c][b]) + "\n";
    write_text(out / names[c], csv);
  }
  json j = to_json(law);
  j["subcommand"] = "stationary";
  j["config"] = to_json(cfg);
  write_json(out / "stationary_report.json", j);
  return 0;
}

inline int run_diagnose(const RunConfig& cfg, const std::filesystem::path& out,
                        int threads) {
  const auto& d = cfg.diagnose;
  DriftDiagnostic diag;
  try {
    diag = nonstationarity_drift_diagnostic(cfg.model, {d.x0, d.y0, d.z0},
                                            d.dt, d.horizon, d.n_traj, d.seed,
                                            d.n_records, threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "diagnose-degenerate: " << e.what() << "\n";
    return 2;
  }
  auto series_csv = [&](const std::vector<double>& mean,
                        const std::vector<double>& se) {
    std::string csv = "t,mean_M,stderr\n";
    for (std::size_t i = 0; i < diag.times.size(); ++i)
      csv += csv_double(diag.times[i]) + "," + csv_double(mean[i]) + "," +
             csv_double(se[i]) + "\n";
    return csv;
  };
  write_text(out / "diagnostic_M.csv", series_csv(diag.mean_M, diag.se_M));
  {
    std::string csv = "t,mean_z2,stderr\n";
    for (std::size_t i = 0; i < diag.times.size(); ++i)
      csv += csv_double(diag.times[i]) + "," + csv_double(diag.mean_z2[i]) +
             "," + csv_double(diag.se_z2[i]) + "\n";
    write_text(out / "diagnostic_z2.csv", csv);
  }
  const auto fit_M = fit_line(diag.times, diag.mean_M);
  const auto fit_z2 = fit_line(diag.times, diag.mean_z2);
  json j{{"subcommand", "diagnose-degenerate"},
         {"n_traj", diag.n_traj},
         {"mean_M_slope", fit_M.slope},
         {"mean_M_slope_se", fit_M.slope_se},
         {"mean_z2_slope", fit_z2.slope},
         {"mean_z2_slope_se", fit_z2.slope_se},
         {"expected_z2_slope_if_x_frozen", 2.0 * cfg.model.gamma3},
         {"config", to_json(cfg)}};
  write_json(out / "diagnose_report.json", j);
  return 0;
}

}  // namespace cli_detail

/// In-process entry point (the binary's main forwards argv here).
inline int run_cli(std::vector<std::string> args) {
  CLI::App app{"stability laboratory for the stochastic Lorenz system"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed_override = 0;
  bool has_seed_override = false;
  int threads = 0;

  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_override, "override the subcommand seed")
      ->each([&](const std::string&) { has_seed_override = true; });
  app.add_option("--threads", threads, "worker threads (0 = auto)");

  auto* sim = app.add_subcommand("simulate", "integrate one trajectory");
  auto* gen = app.add_subcommand("generator-check",
                                 "generator oracles: autodiff vs fd and "
                                 "closed forms");
  auto* cert = app.add_subcommand("certificate", "drift-condition searches");
  auto* cert_rec =
      cert->add_subcommand("recurrence", "search the composite-V certificate");
  auto* cert_tra = cert->add_subcommand(
      "transience", "solve the two-function pair and verify the hypotheses");
  cert->require_subcommand(1);
  auto* bra = app.add_subcommand("brackets",
                                 "iterated bracket hierarchy and spanning");
  auto* hit = app.add_subcommand("hitting-time", "first-passage Monte Carlo");
  auto* sta = app.add_subcommand("stationary",
                                 "long-run empirical law of one trajectory");
  auto* dia = app.add_subcommand("diagnose-degenerate",
                                 "ensemble drift of M = 2 sigma z - x^2");

  try {
    // CLI11 takes the vector in reverse order, program name excluded
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (has_seed_override) {
    cfg.simulate.seed = seed_override;
    cfg.hitting.seed = seed_override;
    cfg.stationary.seed = seed_override;
    cfg.diagnose.seed = seed_override;
    cfg.certificate.seed = seed_override;
    cfg.transience.seed = seed_override;
    cfg.generator_check.seed = seed_override;
  }
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;

  try {
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    if (*sim) return cli_detail::run_simulate(cfg, out);
    if (*gen) return cli_detail::run_generator_check(cfg, out);
    if (*cert_rec) return cli_detail::run_certificate_recurrence(cfg, out);
    if (*cert_tra) return cli_detail::run_certificate_transience(cfg, out);
    if (*bra) return cli_detail::run_brackets(cfg, out);
    if (*hit) return cli_detail::run_hitting(cfg, out, threads);
    if (*sta) return cli_detail::run_stationary(cfg, out);
    if (*dia) return cli_detail::run_diagnose(cfg, out, threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace stolz

#endif  // STOLZ_CLI_HPP
