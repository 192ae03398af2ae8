#ifndef GSEC_STATICS_HPP
#define GSEC_STATICS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gsec/syntax.hpp"
#include "gsec/types.hpp"

namespace gsec {

struct TypeError {
  std::string rule;  // the failing rule: var, lit, lam, op, app, if, asc, label
  Span span;
  std::string message;
};

template <class T>
class CheckResult {
 public:
  CheckResult(T v) : v_(std::move(v)) {}           // NOLINT
  CheckResult(TypeError e) : v_(std::move(e)) {}   // NOLINT
  bool ok() const { return v_.index() == 0; }
  const T& value() const { return std::get<0>(v_); }
  const TypeError& error() const { return std::get<1>(v_); }
  std::optional<T> value_opt() const {
    if (ok()) return value();
    return std::nullopt;
  }

 private:
  std::variant<T, TypeError> v_;
};

/// Scoped variable typings; extension shadows.
template <class T>
class Env {
 public:
  Env() = default;
  Env extended(const std::string& name, T type) const {
    Env e = *this;
    e.vars_.emplace_back(name, std::move(type));
    return e;
  }
  const T* lookup(const std::string& name) const {
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

 private:
  std::vector<std::pair<std::string, T>> vars_;
};

using StaticEnv = Env<StaticType>;
using GradualEnv = Env<GradualType>;

// Label / type resolution against a lattice. Default labels resolve to the
// lattice bottom. `?` is rejected here; the gradual layer has its own path.
CheckResult<Label> resolve_label(const SecurityLattice& lat, const SurfaceLabel& l, Span span);
CheckResult<StaticType> resolve_static_type(const SecurityLattice& lat, const SurfaceType& t,
                                            Span span);

// Subtyping: booleans covariant in the label; functions contravariant in the
// domain, covariant in codomain and label.
bool is_subtype(const StaticType& a, const StaticType& b);

// Structural join/meet induced by subtyping; absent on constructor mismatch.
std::optional<StaticType> subtype_join(const StaticType& a, const StaticType& b);
std::optional<StaticType> subtype_meet(const StaticType& a, const StaticType& b);

/// Raises the top-level label by joining: label stamping.
StaticType stamp(const StaticType& t, Label l);

namespace rules {
// Per-node result types of the syntax-directed checker, shared between the
// recursive checker and the enumeration harness. Absent = that premise fails.
std::optional<StaticType> op_result(const StaticType& lhs, const StaticType& rhs);
std::optional<StaticType> app_result(const StaticType& fn, const StaticType& arg);
std::optional<StaticType> if_result(const StaticType& cond, const StaticType& thn,
                                    const StaticType& els);
std::optional<StaticType> asc_result(const StaticType& body, const StaticType& target);
}  // namespace rules

/// The syntax-directed checker. Rejects terms containing `?`.
CheckResult<StaticType> typecheck_static(const SecurityLattice& lat, const StaticEnv& env,
                                         const Term& t);

}  // namespace gsec

#endif
