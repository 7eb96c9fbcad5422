#ifndef STOLZ_REPORT_HPP
#define STOLZ_REPORT_HPP

#include <json.hpp>

#include "stolz/bracket.hpp"
#include "stolz/certify.hpp"
#include "stolz/config.hpp"
#include "stolz/mc.hpp"

namespace stolz {

using json = nlohmann::ordered_json;

inline json to_json(const ModelParams& m) {
  return json{{"sigma", m.sigma}, {"rho", m.rho},       {"beta", m.beta},
              {"gamma1", m.gamma1}, {"gamma2", m.gamma2}, {"gamma3", m.gamma3}};
}

/// Full resolved configuration, embedded in every report for
/// provenance.
inline json to_json(const RunConfig& c) {
  json j;
  j["model"] = to_json(c.model);
  j["simulate"] = {{"x0", c.simulate.x0},   {"y0", c.simulate.y0},
                   {"z0", c.simulate.z0},   {"dt", c.simulate.dt},
                   {"n_steps", c.simulate.n_steps},
                   {"seed", c.simulate.seed}};
  j["hitting"] = {{"x0", c.hitting.x0},         {"y0", c.hitting.y0},
                  {"z0", c.hitting.z0},         {"radius", c.hitting.radius},
                  {"dt", c.hitting.dt},         {"horizon", c.hitting.horizon},
                  {"n_traj", c.hitting.n_traj}, {"seed", c.hitting.seed}};
  j["stationary"] = {{"x0", c.stationary.x0},
                     {"y0", c.stationary.y0},
                     {"z0", c.stationary.z0},
                     {"dt", c.stationary.dt},
                     {"t_burn", c.stationary.t_burn},
                     {"t_sample", c.stationary.t_sample},
                     {"stride", c.stationary.stride},
                     {"bins", c.stationary.bins},
                     {"seed", c.stationary.seed}};
  j["diagnose"] = {{"x0", c.diagnose.x0},
                   {"y0", c.diagnose.y0},
                   {"z0", c.diagnose.z0},
                   {"dt", c.diagnose.dt},
                   {"horizon", c.diagnose.horizon},
                   {"n_traj", c.diagnose.n_traj},
                   {"n_records", c.diagnose.n_records},
                   {"seed", c.diagnose.seed}};
  j["certificate"] = {{"budget", c.certificate.budget},
                      {"samples_search", c.certificate.samples_search},
                      {"samples_final", c.certificate.samples_final},
                      {"ladder", c.certificate.ladder},
                      {"seed", c.certificate.seed}};
  j["transience"] = {{"samples", c.transience.samples},
                     {"n_dirs", c.transience.n_dirs},
                     {"ladder", c.transience.ladder},
                     {"radius", c.transience.radius},
                     {"seed", c.transience.seed}};
  j["brackets"] = {{"max_level", c.brackets.max_level}};
  j["generator-check"] = {{"n_points", c.generator_check.n_points},
                          {"halfwidth", c.generator_check.halfwidth},
                          {"seed", c.generator_check.seed}};
  return j;
}

/// JSON schema: {region, params, n_samples, worst_margin, pass,
/// witnesses: [{x, y, z, value}]}.
inline json to_json(const CertificateReport& r) {
  json w = json::array();
  for (const auto& wit : r.witnesses)
    w.push_back(json{{"x", wit.p.x},
                     {"y", wit.p.y},
                     {"z", wit.p.z},
                     {"value", wit.value}});
  json j{{"region", r.region},
         {"params", r.params},
         {"n_samples", r.n_samples},
         {"bound", r.bound},
         {"checked_bound", r.checked_bound},
         {"worst_margin", r.worst_margin},
         {"pass", r.pass},
         {"witnesses", w}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const RecurrenceParams& rp) {
  return json{{"R0", rp.R0},         {"R1", rp.R1},
              {"R2", rp.R2},         {"R3", rp.R3},
              {"kappa0", rp.kappa0}, {"kappa1", rp.kappa1},
              {"kappa2", rp.kappa2}};
}

inline json to_json(const RecurrenceCertificate& c) {
  json reports = json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  json j{{"found", c.found},
         {"label", "numerical certificate (truncated)"},
         {"gamma_bar", c.gamma_bar},
         {"drift_rate_c", c.gamma_bar},
         {"excursion_d", c.excursion_d},
         {"params", to_json(c.rp)},
         {"reports", reports}};
  if (!c.failure_reason.empty()) j["failure_reason"] = c.failure_reason;
  return j;
}

inline json to_json(const TransienceParams& tp) {
  return json{{"A", tp.A},           {"m", tp.m},   {"B", tp.B},
              {"c0", tp.c0},         {"c1", tp.c1}, {"c2", tp.c2},
              {"lambda", tp.lambda}, {"K", tp.K},   {"kappa0", tp.kappa0}};
}

inline json to_json(const WonhamReport& w) {
  return json{{"pass", w.pass},
              {"p1_v1_unbounded", w.p1},
              {"p2_v2_positive", w.p2},
              {"p3_ratio_vanishes", w.p3},
              {"p4_drift_signs", w.p4},
              {"radius", w.radius},
              {"ladder_S", w.ladder_S},
              {"v1_max", w.v1_max},
              {"v2_min", w.v2_min},
              {"ratio", w.ratio},
              {"lv1_lower", to_json(w.lv1_lower)},
              {"lv2_upper", to_json(w.lv2_upper)}};
}

inline json to_json(const BracketHierarchy& h, const SpanningResult& span) {
  auto dump_list = [](const std::vector<TrackedField>& v) {
    json arr = json::array();
    for (const auto& t : v)
      arr.push_back(json{{"provenance", t.provenance},
                         {"field", field_to_string(t.field)},
                         {"level", t.level},
                         {"constant", t.constant}});
    return arr;
  };
  json basis = json::array();
  for (std::size_t idx : span.basis)
    basis.push_back(json{{"provenance", h.odd[idx].provenance},
                         {"field", field_to_string(h.odd[idx].field)}});
  return json{{"levels", h.levels},
              {"odd", dump_list(h.odd)},
              {"even", dump_list(h.even)},
              {"spanning", json{{"spans", span.spans},
                                {"rank", span.rank},
                                {"basis", basis}}}};
}

inline json to_json(const HittingTimeStats& s) {
  return json{{"start", json{{"x", s.start.x}, {"y", s.start.y}, {"z", s.start.z}}},
              {"radius", s.radius},
              {"n_traj", s.n_traj},
              {"n_hit", s.n_hit},
              {"n_escaped", s.n_escaped},
              {"horizon", s.horizon},
              {"mean_hit_only", s.mean_hit_only},
              {"censored_mean", s.censored_mean},
              {"survival_fraction", s.survival_fraction}};
}

inline json to_json(const EmpiricalLaw& law) {
  return json{{"n_samples", law.n_samples},
              {"burn_in_time", law.burn_in_time},
              {"mean", law.mean},
              {"var", law.var}};
}

}  // namespace stolz

#endif  // STOLZ_REPORT_HPP
