#ifndef STOLZ_POLY_HPP
#define STOLZ_POLY_HPP

#include <array>
#include <map>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "stolz/model.hpp"

namespace stolz {

using Rational = boost::multiprecision::cpp_rational;

// Coefficients live in the ring Q[s1, s2, s3] where the atoms
// s_i = sqrt(2 gamma_i) are opaque strictly positive scalars: only
// linear independence over R matters downstream, so the atoms are never
// expanded numerically during the algebra.

/// Exponents of the three atoms.
using AtomExp = std::array<int, 3>;

/// Sum of rational * atom-monomial terms.
using Coef = std::map<AtomExp, Rational>;

inline Coef coef_rational(const Rational& r) {
  Coef c;
  if (r != 0) c[{0, 0, 0}] = r;
  return c;
}

inline Coef coef_atom(int atom_index) {
  Coef c;
  AtomExp e{0, 0, 0};
  e[atom_index] = 1;
  c[e] = 1;
  return c;
}

inline bool coef_zero(const Coef& c) { return c.empty(); }

inline Coef coef_add(const Coef& a, const Coef& b) {
  Coef r = a;
  for (const auto& [e, q] : b) {
    auto it = r.find(e);
    if (it == r.end()) {
      r[e] = q;
    } else {
      it->second += q;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

inline Coef coef_neg(const Coef& a) {
  Coef r = a;
  for (auto& [e, q] : r) q = -q;
  return r;
}

inline Coef coef_mul(const Coef& a, const Coef& b) {
  Coef r;
  for (const auto& [ea, qa] : a)
    for (const auto& [eb, qb] : b) {
      AtomExp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      auto it = r.find(e);
      Rational q = qa * qb;
      if (it == r.end()) {
        if (q != 0) r[e] = q;
      } else {
        it->second += q;
        if (it->second == 0) r.erase(it);
      }
    }
  return r;
}

inline Coef coef_pow(const Coef& a, int n) {
  Coef r = coef_rational(1);
  for (int i = 0; i < n; ++i) r = coef_mul(r, a);
  return r;
}

/// Numeric value with the atoms substituted (atom_values[i] = sqrt(2 g_i)).
inline double coef_eval(const Coef& c, const std::array<double, 3>& atoms) {
  double acc = 0.0;
  for (const auto& [e, q] : c) {
    double t = q.convert_to<double>();
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) t *= atoms[i];
    acc += t;
  }
  return acc;
}

/// Value with every atom set to 1. Legitimate for rank decisions on
/// constant fields, which carry a single atom monomial as an overall
/// positive factor.
inline Rational coef_atoms_to_one(const Coef& c) {
  Rational r = 0;
  for (const auto& [e, q] : c) r += q;
  return r;
}

/// Monomial x^i y^j z^k.
using Mono = std::array<int, 3>;

/// Multivariate polynomial with Coef coefficients, canonically ordered
/// and zero-pruned; equality is structural.
using Poly = std::map<Mono, Coef>;

inline Poly poly_term(const Mono& m, const Coef& c) {
  Poly p;
  if (!coef_zero(c)) p[m] = c;
  return p;
}

inline Poly poly_const(const Coef& c) { return poly_term({0, 0, 0}, c); }

inline Poly poly_var(int axis) {
  Mono m{0, 0, 0};
  m[axis] = 1;
  return poly_term(m, coef_rational(1));
}

inline bool poly_zero(const Poly& p) { return p.empty(); }

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b) {
    auto it = r.find(m);
    if (it == r.end()) {
      r[m] = c;
    } else {
      it->second = coef_add(it->second, c);
      if (coef_zero(it->second)) r.erase(it);
    }
  }
  return r;
}

inline Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r) c = coef_neg(c);
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  return poly_add(a, poly_neg(b));
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      Coef c = coef_mul(ca, cb);
      if (coef_zero(c)) continue;
      auto it = r.find(m);
      if (it == r.end()) {
        r[m] = c;
      } else {
        it->second = coef_add(it->second, c);
        if (coef_zero(it->second)) r.erase(it);
      }
    }
  return r;
}

inline Poly poly_scale(const Poly& a, const Coef& c) {
  return poly_mul(a, poly_const(c));
}

/// d/dX_axis.
inline Poly poly_derivative(const Poly& a, int axis) {
  Poly r;
  for (const auto& [m, c] : a) {
    if (m[axis] == 0) continue;
    Mono d = m;
    d[axis] -= 1;
    Coef cc = coef_mul(c, coef_rational(m[axis]));
    auto it = r.find(d);
    if (it == r.end())
      r[d] = cc;
    else
      it->second = coef_add(it->second, cc);
  }
  return r;
}

inline bool poly_constant(const Poly& a) {
  return a.empty() || (a.size() == 1 && a.begin()->first == Mono{0, 0, 0});
}

inline double poly_eval(const Poly& a, const Point3& p,
                        const std::array<double, 3>& atoms) {
  double acc = 0.0;
  for (const auto& [m, c] : a) {
    double t = coef_eval(c, atoms);
    for (int k = 0; k < m[0]; ++k) t *= p.x;
    for (int k = 0; k < m[1]; ++k) t *= p.y;
    for (int k = 0; k < m[2]; ++k) t *= p.z;
    acc += t;
  }
  return acc;
}

// printing, mostly for reports and provenance dumps

inline std::string coef_to_string(const Coef& c) {
  if (coef_zero(c)) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, q] : c) {
    if (!first) os << " + ";
    first = false;
    os << q.str();
    static const char* names[3] = {"s1", "s2", "s3"};
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      os << "*" << names[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

inline std::string poly_to_string(const Poly& p) {
  if (poly_zero(p)) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (!first) os << " + ";
    first = false;
    os << "(" << coef_to_string(c) << ")";
    static const char* vars[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
      if (m[i] == 0) continue;
      os << "*" << vars[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace stolz

#endif  // STOLZ_POLY_HPP
