#ifndef GSEC_INTRINSIC_HPP
#define GSEC_INTRINSIC_HPP

#include <memory>
#include <string>
#include <unordered_set>
#include <variant>

#include "gsec/gradual.hpp"
#include "gsec/statics.hpp"

namespace gsec {

// Gradual label/type resolution (`?` allowed).
CheckResult<GradualLabel> resolve_gradual_label(const SecurityLattice& lat,
                                                const SurfaceLabel& l, Span span);
CheckResult<GradualType> resolve_gradual_type(const SecurityLattice& lat,
                                              const SurfaceType& t, Span span);

namespace rules {
std::optional<GradualType> gop_result(const GradualType& lhs, const GradualType& rhs);
std::optional<GradualType> gapp_result(const GradualType& fn, const GradualType& arg);
std::optional<GradualType> gif_result(const GradualType& cond, const GradualType& thn,
                                      const GradualType& els);
std::optional<GradualType> gasc_result(const GradualType& body, const GradualType& target);
}  // namespace rules

/// The gradual type checker.
CheckResult<GradualType> typecheck_gradual(const SecurityLattice& lat, const GradualEnv& env,
                                           const Term& t);

// --- Intrinsic (elaborated) terms -------------------------------------------
//
// Every judgment position wraps its subterm in evidence, and every node
// stores the type the formation rule assigns it, so types can be recomputed
// and compared during reduction.

struct ITerm;
using ITermPtr = std::shared_ptr<const ITerm>;

/// An evidence-carrying judgment position: ev justifies type(term) <~ target.
struct EvSlot {
  Evidence ev;
  ITermPtr term;
  GradualType target;
};

struct IVar {
  std::string name;
};
struct IBool {
  bool value;
  GradualLabel label;
};
struct ILam {
  std::string param;
  GradualType param_type;
  ITermPtr body;
  GradualLabel label;
};
struct IOp {
  BoolOp op;
  EvSlot lhs, rhs;
};
struct IApp {
  EvSlot fn, arg;
  GradualType fn_type;  // the function type the application was formed at
};
struct IIf {
  EvSlot cond, then_branch, else_branch;
  GradualType branch_target;  // join of branch types stamped by the condition label
};
struct IAsc {
  EvSlot body;  // body.target is the ascribed type
};

struct ITerm {
  Span span;
  GradualType type;
  std::variant<IVar, IBool, ILam, IOp, IApp, IIf, IAsc> node;
};

ITermPtr ivar(std::string name, GradualType type, Span span = {});
ITermPtr ibool(bool value, GradualLabel label, Span span = {});
ITermPtr ilam(std::string param, GradualType param_type, ITermPtr body, GradualLabel label,
              Span span = {});
ITermPtr iop(BoolOp op, EvSlot lhs, EvSlot rhs, Span span = {});
ITermPtr iapp(EvSlot fn, EvSlot arg, GradualType fn_type, Span span = {});
ITermPtr iif(EvSlot cond, EvSlot thn, EvSlot els, GradualType branch_target, Span span = {});
ITermPtr iasc(EvSlot body, Span span = {});

/// Elaboration: types the term and instantiates every consistent-subtyping
/// premise with the interior of its judgment.
CheckResult<ITermPtr> elaborate(const SecurityLattice& lat, const GradualEnv& env,
                                const Term& t);

/// Recomputes every node's type per the formation rules and checks each
/// evidence justifies its judgment. `memo` collects verified nodes across
/// calls; `trusted` is a read-only set of nodes already known well-formed.
using NodeMemo = std::unordered_set<const ITerm*>;
bool well_formed(const ITermPtr& t, std::string* why = nullptr, NodeMemo* memo = nullptr,
                 const NodeMemo* trusted = nullptr);

bool equal(const ITerm& a, const ITerm& b);
std::string print(const ITerm& t);

ITermPtr substitute(const ITermPtr& body, const std::string& name, const ITermPtr& value);

}  // namespace gsec

#endif
