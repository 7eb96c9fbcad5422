#ifndef STOLZ_BRACKET_HPP
#define STOLZ_BRACKET_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "stolz/poly.hpp"

namespace stolz {

/// Vector field on R^3 with polynomial components over Q[s1,s2,s3].
struct PolyVectorField {
  std::array<Poly, 3> comp;

  bool zero() const {
    return poly_zero(comp[0]) && poly_zero(comp[1]) && poly_zero(comp[2]);
  }
  bool constant() const {
    return poly_constant(comp[0]) && poly_constant(comp[1]) &&
           poly_constant(comp[2]);
  }
  bool operator==(const PolyVectorField& o) const { return comp == o.comp; }
};

inline std::string field_to_string(const PolyVectorField& f) {
  return "[" + poly_to_string(f.comp[0]) + ", " + poly_to_string(f.comp[1]) +
         ", " + poly_to_string(f.comp[2]) + "]";
}

inline std::array<double, 3> field_eval(const PolyVectorField& f,
                                        const Point3& p,
                                        const std::array<double, 3>& atoms) {
  return {poly_eval(f.comp[0], p, atoms), poly_eval(f.comp[1], p, atoms),
          poly_eval(f.comp[2], p, atoms)};
}

/// [U, W]^j = sum_k ( U^k d_k W^j - W^k d_k U^j ), exact.
inline PolyVectorField lie_bracket(const PolyVectorField& U,
                                   const PolyVectorField& W) {
  PolyVectorField r;
  for (int j = 0; j < 3; ++j) {
    Poly acc;
    for (int k = 0; k < 3; ++k) {
      acc = poly_add(acc, poly_mul(U.comp[k], poly_derivative(W.comp[j], k)));
      acc = poly_sub(acc, poly_mul(W.comp[k], poly_derivative(U.comp[j], k)));
    }
    r.comp[j] = std::move(acc);
  }
  return r;
}

/// ad^m U (W), with ad^0 U (W) = W.
inline PolyVectorField ad_power(int m, const PolyVectorField& U,
                                const PolyVectorField& W) {
  PolyVectorField r = W;
  for (int i = 0; i < m; ++i) r = lie_bracket(U, r);
  return r;
}

/// Degree functional: max_j deg_lambda of W_j(lambda G), with G a
/// constant field treated as a direction vector; the zero field has
/// degree 0.
inline int degree_n(const PolyVectorField& G, const PolyVectorField& W) {
  // component coefficients of the direction
  std::array<Coef, 3> g;
  for (int i = 0; i < 3; ++i) {
    g[i] = poly_constant(G.comp[i]) && !poly_zero(G.comp[i])
               ? G.comp[i].begin()->second
               : Coef{};
  }
  int deg = 0;
  for (int j = 0; j < 3; ++j) {
    std::map<int, Coef> lambda_poly;
    for (const auto& [m, c] : W.comp[j]) {
      Coef t = c;
      for (int i = 0; i < 3; ++i)
        if (m[i] > 0) t = coef_mul(t, coef_pow(g[i], m[i]));
      if (coef_zero(t)) continue;
      const int power = m[0] + m[1] + m[2];
      auto it = lambda_poly.find(power);
      if (it == lambda_poly.end())
        lambda_poly[power] = t;
      else {
        it->second = coef_add(it->second, t);
        if (coef_zero(it->second)) lambda_poly.erase(it);
      }
    }
    if (!lambda_poly.empty())
      deg = std::max(deg, lambda_poly.rbegin()->first);
  }
  return deg;
}

// --------------------------------------------------------------------
// Iterated bracket hierarchy
//
//   G_1^O = G_0 u { ad^n(G,F) G (F) : G in G_0, n(G,F) odd }
//   G_{j+1}^O = G_j^O u { ad^n(G,H) G (H) : G in Gbar_j^O, H in G_j,
//                         n(G,H) odd }
// and the even analogues; Gbar_j^O are the constant members of G_j^O.
// The artifact brackets against the tracked generator fields of G_j
// (structural duplicates pruned, which cannot change the span) and only
// constant odd-produced fields feed the spanning test; even-cone
// members are retained for report completeness.

struct TrackedField {
  PolyVectorField field;
  std::string provenance;
  int level = 0;
  bool constant = false;
};

struct BracketHierarchy {
  std::vector<TrackedField> odd;   // cumulative odd-produced generators
  std::vector<TrackedField> even;  // cumulative even-produced generators
  int levels = 0;

  std::vector<std::size_t> constant_odd_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < odd.size(); ++i)
      if (odd[i].constant) out.push_back(i);
    return out;
  }
};

namespace detail {

inline bool contains_field(const std::vector<TrackedField>& v,
                           const PolyVectorField& f) {
  for (const auto& t : v)
    if (t.field == f) return true;
  return false;
}

}  // namespace detail

/// Builds the hierarchy up to max_level. `noise` must be constant
/// fields (their names are used in provenance strings).
inline BracketHierarchy build_hierarchy(
    const PolyVectorField& F,
    const std::vector<std::pair<PolyVectorField, std::string>>& noise,
    int max_level = 4) {
  BracketHierarchy h;
  for (const auto& [g, name] : noise) {
    if (g.zero()) continue;
    h.odd.push_back({g, name, 1, g.constant()});
  }
  // level 1: brackets with the drift
  std::size_t base = h.odd.size();
  for (std::size_t i = 0; i < base; ++i) {
    const auto& g = h.odd[i];
    const int n = degree_n(g.field, F);
    PolyVectorField cand = ad_power(n, g.field, F);
    if (cand.zero()) continue;
    const std::string prov =
        "ad^" + std::to_string(n) + " " + g.provenance + " (F)";
    auto& dst = (n % 2 == 1) ? h.odd : h.even;
    if (!detail::contains_field(h.odd, cand) &&
        !detail::contains_field(h.even, cand))
      dst.push_back({cand, prov, 1, cand.constant()});
  }
  h.levels = 1;

  for (int level = 2; level <= max_level; ++level) {
    const std::size_t odd_snapshot = h.odd.size();
    const std::size_t even_snapshot = h.even.size();
    bool grew = false;
    for (std::size_t gi = 0; gi < odd_snapshot; ++gi) {
      if (!h.odd[gi].constant) continue;
      const TrackedField g = h.odd[gi];
      auto try_bracket = [&](const TrackedField& target) {
        const int n = degree_n(g.field, target.field);
        if (n == 0) return;  // ad^0 reproduces the target, already tracked
        PolyVectorField cand = ad_power(n, g.field, target.field);
        if (cand.zero()) return;
        if (detail::contains_field(h.odd, cand) ||
            detail::contains_field(h.even, cand))
          return;
        const std::string prov = "ad^" + std::to_string(n) + " " +
                                 g.provenance + " (" + target.provenance +
                                 ")";
        auto& dst = (n % 2 == 1) ? h.odd : h.even;
        dst.push_back({cand, prov, level, cand.constant()});
        grew = true;
      };
      for (std::size_t hi = 0; hi < odd_snapshot; ++hi)
        try_bracket(h.odd[hi]);
      for (std::size_t hi = 0; hi < even_snapshot; ++hi)
        try_bracket(h.even[hi]);
    }
    h.levels = level;
    if (!grew) break;
  }
  return h;
}

struct SpanningResult {
  bool spans = false;
  int rank = 0;
  std::vector<std::size_t> basis;  // indices into hierarchy.odd
};

namespace detail {

inline int exact_rank(std::vector<std::array<Rational, 3>> m) {
  int rank = 0;
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[rank][col];
      for (int j = 0; j < 3; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Spanning test of the bracket condition: do the constant fields in
/// the odd sets span R^3? Exact rank over Q after substituting the
/// (strictly positive) atoms by 1; returns a greedy witness basis.
inline SpanningResult spanning_test(const BracketHierarchy& h) {
  SpanningResult res;
  std::vector<std::array<Rational, 3>> rows;
  for (std::size_t idx : h.constant_odd_indices()) {
    std::array<Rational, 3> v;
    for (int j = 0; j < 3; ++j) {
      const Poly& p = h.odd[idx].field.comp[j];
      v[j] = poly_zero(p) ? Rational(0)
                          : coef_atoms_to_one(p.begin()->second);
    }
    rows.push_back(v);
    if (detail::exact_rank(rows) > res.rank) {
      res.rank = detail::exact_rank(rows);
      res.basis.push_back(idx);
      if (res.rank == 3) break;
    } else {
      rows.pop_back();
    }
  }
  res.spans = res.rank == 3;
  return res;
}

// --------------------------------------------------------------------
// Model-specific construction

/// Exact rational image of a double (doubles are dyadic rationals).
inline Rational rational_from_double(double x) { return Rational(x); }

struct BracketModel {
  Rational sigma, rho, beta;
  std::array<bool, 3> noise_active;
  std::array<double, 3> atom_values;  // sqrt(2 gamma_i), for numeric oracles
};

inline BracketModel bracket_model(const ModelParams& mp) {
  BracketModel bm;
  bm.sigma = rational_from_double(mp.sigma);
  bm.rho = rational_from_double(mp.rho);
  bm.beta = rational_from_double(mp.beta);
  bm.noise_active = {mp.gamma1 > 0.0, mp.gamma2 > 0.0, mp.gamma3 > 0.0};
  bm.atom_values = {std::sqrt(2.0 * mp.gamma1), std::sqrt(2.0 * mp.gamma2),
                    std::sqrt(2.0 * mp.gamma3)};
  return bm;
}

/// F = sigma(y-x) d_x + [x(rho-z) - y] d_y + [xy - beta z] d_z.
inline PolyVectorField drift_field(const BracketModel& bm) {
  PolyVectorField F;
  F.comp[0] = poly_scale(poly_sub(poly_var(1), poly_var(0)),
                         coef_rational(bm.sigma));
  F.comp[1] = poly_sub(
      poly_sub(poly_scale(poly_var(0), coef_rational(bm.rho)),
               poly_mul(poly_var(0), poly_var(2))),
      poly_var(1));
  F.comp[2] = poly_sub(poly_mul(poly_var(0), poly_var(1)),
                       poly_scale(poly_var(2), coef_rational(bm.beta)));
  return F;
}

/// G_i = sqrt(2 gamma_i) d_i as a constant field carrying its atom.
inline PolyVectorField noise_field(int i) {
  PolyVectorField G;
  G.comp[i] = poly_const(coef_atom(i));
  return G;
}

/// Active noise directions with provenance names G1, G2, G3.
inline std::vector<std::pair<PolyVectorField, std::string>> active_noise_fields(
    const BracketModel& bm) {
  std::vector<std::pair<PolyVectorField, std::string>> out;
  for (int i = 0; i < 3; ++i)
    if (bm.noise_active[i])
      out.emplace_back(noise_field(i), "G" + std::to_string(i + 1));
  return out;
}

}  // namespace stolz

#endif  // STOLZ_BRACKET_HPP
