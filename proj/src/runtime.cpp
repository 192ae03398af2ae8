#include "gsec/runtime.hpp"

#include <stdexcept>

namespace gsec {

std::string to_string(const RuntimeError& e) {
  return "cannot combine " + to_string(e.inner) + " with " + to_string(e.outer) + " at " +
         to_string(e.span);
}

bool is_simple_value(const ITerm& t) {
  return std::holds_alternative<IBool>(t.node) || std::holds_alternative<ILam>(t.node);
}

bool is_value(const ITerm& t) {
  if (is_simple_value(t)) return true;
  if (const auto* asc = std::get_if<IAsc>(&t.node)) {
    return is_simple_value(*asc->body.term);
  }
  return false;
}

std::optional<bool> bare_bool(const ITerm& t) {
  if (const auto* b = std::get_if<IBool>(&t.node)) return b->value;
  if (const auto* asc = std::get_if<IAsc>(&t.node)) return bare_bool(*asc->body.term);
  return std::nullopt;
}

namespace {

struct SlotStep {
  enum class State { Ready, Progress, Fail } state;
  std::optional<EvSlot> slot;  // Progress
  bool combine = false;
  std::optional<RuntimeError> error;
};

// Brings a judgment slot one step closer to evidence-on-simple-value form:
// reduce inside, or collapse an ascribed value into the slot's evidence.
SlotStep advance_slot(const EvSlot& s) {
  if (!is_value(*s.term)) {
    StepResult r = step(s.term);
    if (r.kind == StepResult::Kind::Error) {
      return {SlotStep::State::Fail, {}, r.combine, r.error};
    }
    return {SlotStep::State::Progress, EvSlot{s.ev, r.term, s.target}, r.combine, {}};
  }
  if (is_simple_value(*s.term)) return {SlotStep::State::Ready, {}, false, {}};
  const IAsc& asc = std::get<IAsc>(s.term->node);
  std::optional<Evidence> combined = consistent_transitivity(asc.body.ev, s.ev);
  if (!combined) {
    return {SlotStep::State::Fail, {}, true,
            RuntimeError{asc.body.ev, s.ev, s.term->span}};
  }
  return {SlotStep::State::Progress, EvSlot{*combined, asc.body.term, s.target}, true, {}};
}

StepResult stepped(ITermPtr t, bool combine) {
  return {StepResult::Kind::Stepped, std::move(t), combine, {}};
}

StepResult failed(RuntimeError e, bool combine = false) {
  return {StepResult::Kind::Error, nullptr, combine, std::move(e)};
}

}  // namespace

StepResult step(const ITermPtr& t) {
  if (is_value(*t)) return {StepResult::Kind::Value, t, false, {}};
  return std::visit(
      [&](const auto& x) -> StepResult {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IOp>) {
          SlotStep l = advance_slot(x.lhs);
          if (l.state == SlotStep::State::Fail) return failed(*l.error, l.combine);
          if (l.state == SlotStep::State::Progress) {
            return stepped(iop(x.op, *l.slot, x.rhs, t->span), l.combine);
          }
          SlotStep r = advance_slot(x.rhs);
          if (r.state == SlotStep::State::Fail) return failed(*r.error, r.combine);
          if (r.state == SlotStep::State::Progress) {
            return stepped(iop(x.op, x.lhs, *r.slot, t->span), r.combine);
          }
          const auto* b1 = std::get_if<IBool>(&x.lhs.term->node);
          const auto* b2 = std::get_if<IBool>(&x.rhs.term->node);
          if (!b1 || !b2) throw std::logic_error("stuck: operator on non-boolean");
          Evidence ev{
              GradualType::boolean(
                  gradual_join(x.lhs.ev.lhs.label(), x.rhs.ev.lhs.label())),
              GradualType::boolean(
                  gradual_join(x.lhs.ev.rhs.label(), x.rhs.ev.rhs.label()))};
          ITermPtr result = ibool(apply_op(x.op, b1->value, b2->value),
                                  gradual_join(b1->label, b2->label), t->span);
          return stepped(iasc(EvSlot{ev, result, t->type}, t->span), false);
        } else if constexpr (std::is_same_v<T, IApp>) {
          SlotStep f = advance_slot(x.fn);
          if (f.state == SlotStep::State::Fail) return failed(*f.error, f.combine);
          if (f.state == SlotStep::State::Progress) {
            return stepped(iapp(*f.slot, x.arg, x.fn_type, t->span), f.combine);
          }
          SlotStep a = advance_slot(x.arg);
          if (a.state == SlotStep::State::Fail) return failed(*a.error, a.combine);
          if (a.state == SlotStep::State::Progress) {
            return stepped(iapp(x.fn, *a.slot, x.fn_type, t->span), a.combine);
          }
          const auto* lam = std::get_if<ILam>(&x.fn.term->node);
          if (!lam) throw std::logic_error("stuck: applying a non-function");
          std::optional<Evidence> dom_ev = evidence_domain(x.fn.ev);
          if (!dom_ev) throw std::logic_error("stuck: function evidence has no domain");
          std::optional<Evidence> arg_ev = consistent_transitivity(x.arg.ev, *dom_ev);
          if (!arg_ev) {
            return failed(RuntimeError{x.arg.ev, *dom_ev, x.arg.term->span});
          }
          std::optional<Evidence> cod_ev = evidence_codomain(x.fn.ev);
          if (!cod_ev) throw std::logic_error("stuck: function evidence has no codomain");
          ITermPtr arg_val = iasc(EvSlot{*arg_ev, x.arg.term, lam->param_type},
                                  x.arg.term->span);
          ITermPtr body = substitute(lam->body, lam->param, arg_val);
          return stepped(iasc(EvSlot{*cod_ev, body, t->type}, t->span), false);
        } else if constexpr (std::is_same_v<T, IIf>) {
          SlotStep c = advance_slot(x.cond);
          if (c.state == SlotStep::State::Fail) return failed(*c.error, c.combine);
          if (c.state == SlotStep::State::Progress) {
            return stepped(
                iif(*c.slot, x.then_branch, x.else_branch, x.branch_target, t->span),
                c.combine);
          }
          const auto* b = std::get_if<IBool>(&x.cond.term->node);
          if (!b) throw std::logic_error("stuck: non-boolean condition");
          const EvSlot& chosen = b->value ? x.then_branch : x.else_branch;
          return stepped(
              iasc(EvSlot{chosen.ev, chosen.term, x.branch_target}, t->span), false);
        } else if constexpr (std::is_same_v<T, IAsc>) {
          SlotStep b = advance_slot(x.body);
          if (b.state == SlotStep::State::Fail) return failed(*b.error, b.combine);
          if (b.state == SlotStep::State::Progress) {
            return stepped(iasc(*b.slot, t->span), b.combine);
          }
          throw std::logic_error("stuck: ascription of a simple value is a value");
        } else {
          throw std::logic_error("stuck: free variable in evaluation");
        }
      },
      t->node);
}

std::string outcome_line(const EvalResult& r) {
  switch (r.kind) {
    case EvalResult::Kind::Value:
      return "VALUE: " + print(*r.value);
    case EvalResult::Kind::Error:
      return "ERROR: " + to_string(*r.error);
    case EvalResult::Kind::OutOfFuel:
      return "ERROR: step budget exhausted";
  }
  return "";
}

EvalResult evaluate(const ITermPtr& t, int fuel, bool want_trace) {
  EvalResult res;
  res.kind = EvalResult::Kind::OutOfFuel;
  ITermPtr cur = t;
  if (want_trace) res.trace.push_back("0: " + print(*cur));
  for (int i = 0; i < fuel; ++i) {
    StepResult r = step(cur);
    if (r.kind == StepResult::Kind::Value) {
      res.kind = EvalResult::Kind::Value;
      res.value = cur;
      break;
    }
    if (r.kind == StepResult::Kind::Error) {
      res.kind = EvalResult::Kind::Error;
      res.error = r.error;
      ++res.steps;
      if (want_trace) {
        res.trace.push_back(std::to_string(res.steps) + ": " +
                            (r.combine ? "-->c error" : "--> error"));
      }
      break;
    }
    cur = r.term;
    ++res.steps;
    if (want_trace) {
      res.trace.push_back(std::to_string(res.steps) + ": " +
                          (r.combine ? "-->c " : "--> ") + print(*cur));
    }
  }
  if (want_trace) res.trace.push_back(outcome_line(res));
  return res;
}

}  // namespace gsec
