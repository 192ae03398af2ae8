#ifndef GSEC_STATIC_EVAL_HPP
#define GSEC_STATIC_EVAL_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gsec/statics.hpp"

namespace gsec {

// Runtime representation of fully static programs: the surface forms with
// labels resolved, plus the term-stamping form that only reduction creates.
struct STerm;
using STermPtr = std::shared_ptr<const STerm>;

struct SBool {
  bool value;
  Label label;
};
struct SVar {
  std::string name;
};
struct SLam {
  std::string param;
  StaticType annot;
  STermPtr body;
  Label label;
};
struct SApp {
  STermPtr fn, arg;
};
struct SOp {
  BoolOp op;
  STermPtr lhs, rhs;
};
struct SIf {
  STermPtr cond, then_branch, else_branch;
};
struct SAsc {
  STermPtr body;
  StaticType type;
};
struct SStamp {
  STermPtr body;
  Label label;
};

struct STerm {
  std::variant<SBool, SVar, SLam, SApp, SOp, SIf, SAsc, SStamp> node;
};

STermPtr make_sterm(std::variant<SBool, SVar, SLam, SApp, SOp, SIf, SAsc, SStamp> node);

/// Resolves labels and types; call only on terms accepted by typecheck_static.
CheckResult<STermPtr> lower(const SecurityLattice& lat, const Term& t);

bool is_static_value(const STerm& t);
Label value_label(const STerm& v);
STermPtr value_with_label(const STerm& v, Label l);
bool equal(const STerm& a, const STerm& b);
std::string print(const STerm& t);

STermPtr substitute(const STermPtr& body, const std::string& name, const STermPtr& value);

/// One leftmost reduction; absent when t is a value. Throws std::logic_error
/// on a stuck non-value (cannot happen for well-typed closed input).
std::optional<STermPtr> step_static(const STermPtr& t);

/// Iterated small-step evaluation to a value. If trace is non-null, appends
/// one printed term per step.
STermPtr eval_small(const STermPtr& t, std::vector<std::string>* trace = nullptr);

/// Natural (big-step) semantics; agrees with eval_small on well-typed input.
STermPtr eval_big(const STermPtr& t);

/// Type checker over runtime terms (stamping included); used to observe
/// per-step preservation.
std::optional<StaticType> typecheck_core(const SecurityLattice& lat, const StaticEnv& env,
                                         const STerm& t);

}  // namespace gsec

#endif
