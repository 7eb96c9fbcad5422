#ifndef STOLZ_FIELD_HPP
#define STOLZ_FIELD_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "stolz/jet.hpp"
#include "stolz/model.hpp"

namespace stolz {

/// Thrown when a test function is evaluated where it is not C^2
/// (e.g. psi1 at x = 0 or z = 0).
struct FieldDomainError : std::runtime_error {
  Point3 where;
  explicit FieldDomainError(const std::string& what, const Point3& p)
      : std::runtime_error(what), where(p) {}
};

/// A C^2 test function on R^3, evaluated through second-order jets.
/// Implementations are stateless value objects and safe to evaluate
/// concurrently.
class ScalarField {
 public:
  using JetFn = std::function<Jet2(const JetPoint&)>;

  ScalarField() = default;
  ScalarField(std::string name, JetFn fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  const std::string& name() const { return name_; }

  Jet2 jet(const Point3& p) const { return fn_(lift(p)); }

  /// Plain evaluation (jet value at a lifted point).
  double operator()(const Point3& p) const { return jet(p).v; }

  /// Jet with a finiteness guard; throws FieldDomainError otherwise.
  Jet2 jet_checked(const Point3& p) const {
    Jet2 j = jet(p);
    if (!j.finite())
      throw FieldDomainError("field '" + name_ + "' is not C^2 here", p);
    return j;
  }

  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  std::string name_;
  JetFn fn_;
};

}  // namespace stolz

#endif  // STOLZ_FIELD_HPP
