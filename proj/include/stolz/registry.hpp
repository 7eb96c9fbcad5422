#ifndef STOLZ_REGISTRY_HPP
#define STOLZ_REGISTRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "stolz/cutoffs.hpp"
#include "stolz/lyapunov_recurrence.hpp"
#include "stolz/lyapunov_transience.hpp"

namespace stolz {

/// Auxiliary parameters for fields addressed by name. The recurrence
/// radii default to a moderate desk scale; V1/V2 constants are solved
/// on demand for beta < 0.
struct FieldContext {
  RecurrenceParams rp{4, 2, 4, 2, /*kappa0=*/0, 1, 1};
  std::optional<TransienceParams> tp;

  static FieldContext defaults(const ModelParams& mp) {
    FieldContext ctx;
    ctx.rp.kappa0 = mp.sigma * mp.sigma + 1.0;
    return ctx;
  }
};

/// Fields addressable by string name: H, H_tilde, M, psi1, psi2,
/// theta1, theta2, V, V1, V2, and F_N:<N> (the odd truncation composed
/// with M = 2 sigma z - x^2, its role in the stationarity diagnostics).
/// Throws std::invalid_argument for unknown names or when the model
/// range does not admit the field (V1/V2 need beta < 0, V needs
/// gamma1 > 0).
inline ScalarField make_field(const std::string& name, const ModelParams& mp,
                              FieldContext ctx = {}) {
  if (name == "H") return field_H(mp);
  if (name == "H_tilde") return field_H_tilde(mp, ctx.rp.kappa0);
  if (name == "M") return field_M(mp);
  if (name == "psi1") return field_psi1(ctx.rp.kappa1);
  if (name == "psi2") return field_psi2(mp, ctx.rp.kappa2, ctx.rp.R1);
  if (name == "theta1") return field_theta1(ctx.rp);
  if (name == "theta2") return field_theta2(ctx.rp);
  if (name == "V") return field_V(mp, ctx.rp);
  if (name == "V1" || name == "V2") {
    TransienceParams tp =
        ctx.tp ? *ctx.tp : solve_transience_constants(mp);
    if (name == "V1") return field_V1(mp, tp);
    const double k = tp.K > 0.0 ? tp.K : 1.0;
    return field_V2(mp, k, tp.kappa0);
  }
  if (name.rfind("F_N:", 0) == 0) {
    const int n = std::stoi(name.substr(4));
    if (n < 1) throw std::invalid_argument("make_field: F_N needs N >= 1");
    const double s = 2.0 * mp.sigma;
    return ScalarField(name, [n, s](const JetPoint& q) {
      return trunc(n, s * q.z - sq(q.x));
    });
  }
  throw std::invalid_argument("make_field: unknown field '" + name + "'");
}

inline std::vector<std::string> registry_names() {
  return {"H",      "H_tilde", "M", "psi1", "psi2", "theta1",
          "theta2", "V",       "V1", "V2",  "F_N:<N>"};
}

}  // namespace stolz

#endif  // STOLZ_REGISTRY_HPP
