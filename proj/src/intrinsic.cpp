#include "gsec/intrinsic.hpp"

#include <stdexcept>

namespace gsec {

CheckResult<GradualLabel> resolve_gradual_label(const SecurityLattice& lat,
                                                const SurfaceLabel& l, Span span) {
  switch (l.kind) {
    case SurfaceLabel::Kind::Default:
      return GradualLabel(lat.bottom());
    case SurfaceLabel::Kind::Unknown:
      return GradualLabel::unknown();
    case SurfaceLabel::Kind::Named:
      if (!lat.has(l.name)) {
        return TypeError{"label", span, "unknown label '" + l.name + "'"};
      }
      return GradualLabel(lat.label(l.name));
  }
  return TypeError{"label", span, "bad label"};
}

CheckResult<GradualType> resolve_gradual_type(const SecurityLattice& lat,
                                              const SurfaceType& t, Span span) {
  CheckResult<GradualLabel> l = resolve_gradual_label(lat, t.label, span);
  if (!l.ok()) return l.error();
  if (!t.is_function()) return GradualType::boolean(l.value());
  CheckResult<GradualType> d = resolve_gradual_type(lat, *t.dom, span);
  if (!d.ok()) return d;
  CheckResult<GradualType> c = resolve_gradual_type(lat, *t.cod, span);
  if (!c.ok()) return c;
  return GradualType::function(d.value(), c.value(), l.value());
}

namespace rules {

std::optional<GradualType> gop_result(const GradualType& lhs, const GradualType& rhs) {
  if (lhs.is_function() || rhs.is_function()) return std::nullopt;
  return GradualType::boolean(gradual_join(lhs.label(), rhs.label()));
}

std::optional<GradualType> gapp_result(const GradualType& fn, const GradualType& arg) {
  if (!fn.is_function()) return std::nullopt;
  if (!consistent_subtype(arg, fn.dom())) return std::nullopt;
  return gstamp(fn.cod(), fn.label());
}

std::optional<GradualType> gif_result(const GradualType& cond, const GradualType& thn,
                                      const GradualType& els) {
  if (cond.is_function()) return std::nullopt;
  std::optional<GradualType> j = consistent_join(thn, els);
  if (!j) return std::nullopt;
  return gstamp(*j, cond.label());
}

std::optional<GradualType> gasc_result(const GradualType& body, const GradualType& target) {
  if (!consistent_subtype(body, target)) return std::nullopt;
  return target;
}

}  // namespace rules

CheckResult<GradualType> typecheck_gradual(const SecurityLattice& lat, const GradualEnv& env,
                                           const Term& t) {
  return std::visit(
      [&](const auto& x) -> CheckResult<GradualType> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          CheckResult<GradualLabel> l = resolve_gradual_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          return GradualType::boolean(l.value());
        } else if constexpr (std::is_same_v<T, Var>) {
          const GradualType* ty = env.lookup(x.name);
          if (!ty) return TypeError{"var", t.span, "unbound variable '" + x.name + "'"};
          return *ty;
        } else if constexpr (std::is_same_v<T, Lam>) {
          CheckResult<GradualLabel> l = resolve_gradual_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          CheckResult<GradualType> annot = resolve_gradual_type(lat, *x.annot, t.span);
          if (!annot.ok()) return annot;
          CheckResult<GradualType> body =
              typecheck_gradual(lat, env.extended(x.param, annot.value()), *x.body);
          if (!body.ok()) return body;
          return GradualType::function(annot.value(), body.value(), l.value());
        } else if constexpr (std::is_same_v<T, BinOp>) {
          CheckResult<GradualType> l = typecheck_gradual(lat, env, *x.lhs);
          if (!l.ok()) return l;
          CheckResult<GradualType> r = typecheck_gradual(lat, env, *x.rhs);
          if (!r.ok()) return r;
          std::optional<GradualType> res = rules::gop_result(l.value(), r.value());
          if (!res) {
            return TypeError{"op", t.span, "operands of a boolean operator must be booleans"};
          }
          return *res;
        } else if constexpr (std::is_same_v<T, App>) {
          CheckResult<GradualType> f = typecheck_gradual(lat, env, *x.fn);
          if (!f.ok()) return f;
          CheckResult<GradualType> a = typecheck_gradual(lat, env, *x.arg);
          if (!a.ok()) return a;
          if (!f.value().is_function()) {
            return TypeError{"app", t.span,
                             "applied expression has type " + to_string(f.value()) +
                                 ", which is not a function type"};
          }
          std::optional<GradualType> res = rules::gapp_result(f.value(), a.value());
          if (!res) {
            return TypeError{"app", t.span,
                             "argument type " + to_string(a.value()) +
                                 " is not consistent with " + to_string(f.value().dom())};
          }
          return *res;
        } else if constexpr (std::is_same_v<T, If>) {
          CheckResult<GradualType> c = typecheck_gradual(lat, env, *x.cond);
          if (!c.ok()) return c;
          CheckResult<GradualType> a = typecheck_gradual(lat, env, *x.then_branch);
          if (!a.ok()) return a;
          CheckResult<GradualType> b = typecheck_gradual(lat, env, *x.else_branch);
          if (!b.ok()) return b;
          if (c.value().is_function()) {
            return TypeError{"if", t.span, "condition must be a boolean"};
          }
          std::optional<GradualType> res = rules::gif_result(c.value(), a.value(), b.value());
          if (!res) {
            return TypeError{"if", t.span,
                             "branch types " + to_string(a.value()) + " and " +
                                 to_string(b.value()) + " have no join"};
          }
          return *res;
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          CheckResult<GradualType> b = typecheck_gradual(lat, env, *x.body);
          if (!b.ok()) return b;
          CheckResult<GradualType> target = resolve_gradual_type(lat, *x.type, t.span);
          if (!target.ok()) return target;
          std::optional<GradualType> res = rules::gasc_result(b.value(), target.value());
          if (!res) {
            return TypeError{"asc", t.span,
                             to_string(b.value()) + " is not consistent with " +
                                 to_string(target.value())};
          }
          return *res;
        }
      },
      t.node);
}

// ---------------------------------------------------------------------------
// Intrinsic term construction
// ---------------------------------------------------------------------------

namespace {
ITermPtr make_iterm(Span span, GradualType type,
                    std::variant<IVar, IBool, ILam, IOp, IApp, IIf, IAsc> node) {
  auto t = std::make_shared<ITerm>(ITerm{span, std::move(type), std::move(node)});
  return t;
}
}  // namespace

ITermPtr ivar(std::string name, GradualType type, Span span) {
  return make_iterm(span, std::move(type), IVar{std::move(name)});
}

ITermPtr ibool(bool value, GradualLabel label, Span span) {
  return make_iterm(span, GradualType::boolean(label), IBool{value, label});
}

ITermPtr ilam(std::string param, GradualType param_type, ITermPtr body, GradualLabel label,
              Span span) {
  GradualType ty = GradualType::function(param_type, body->type, label);
  return make_iterm(span, std::move(ty),
                    ILam{std::move(param), std::move(param_type), std::move(body), label});
}

ITermPtr iop(BoolOp op, EvSlot lhs, EvSlot rhs, Span span) {
  GradualType ty =
      GradualType::boolean(gradual_join(lhs.target.label(), rhs.target.label()));
  return make_iterm(span, std::move(ty), IOp{op, std::move(lhs), std::move(rhs)});
}

ITermPtr iapp(EvSlot fn, EvSlot arg, GradualType fn_type, Span span) {
  GradualType ty = gstamp(fn_type.cod(), fn_type.label());
  return make_iterm(span, std::move(ty),
                    IApp{std::move(fn), std::move(arg), std::move(fn_type)});
}

ITermPtr iif(EvSlot cond, EvSlot thn, EvSlot els, GradualType branch_target, Span span) {
  GradualType ty = branch_target;
  return make_iterm(span, std::move(ty),
                    IIf{std::move(cond), std::move(thn), std::move(els),
                        std::move(branch_target)});
}

ITermPtr iasc(EvSlot body, Span span) {
  GradualType ty = body.target;
  return make_iterm(span, std::move(ty), IAsc{std::move(body)});
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

namespace {

// Evidence for a judgment the checker has established; the interior exists
// whenever consistent subtyping holds.
EvSlot judged_slot(const ITermPtr& term, const GradualType& target) {
  std::optional<Evidence> ev = interior(term->type, target);
  if (!ev) throw std::logic_error("interior missing for a checked judgment");
  return EvSlot{*ev, term, target};
}

}  // namespace

CheckResult<ITermPtr> elaborate(const SecurityLattice& lat, const GradualEnv& env,
                                const Term& t) {
  return std::visit(
      [&](const auto& x) -> CheckResult<ITermPtr> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          CheckResult<GradualLabel> l = resolve_gradual_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          return ibool(x.value, l.value(), t.span);
        } else if constexpr (std::is_same_v<T, Var>) {
          const GradualType* ty = env.lookup(x.name);
          if (!ty) return TypeError{"var", t.span, "unbound variable '" + x.name + "'"};
          return ivar(x.name, *ty, t.span);
        } else if constexpr (std::is_same_v<T, Lam>) {
          CheckResult<GradualLabel> l = resolve_gradual_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          CheckResult<GradualType> annot = resolve_gradual_type(lat, *x.annot, t.span);
          if (!annot.ok()) return annot.error();
          CheckResult<ITermPtr> body =
              elaborate(lat, env.extended(x.param, annot.value()), *x.body);
          if (!body.ok()) return body;
          return ilam(x.param, annot.value(), body.value(), l.value(), t.span);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          CheckResult<ITermPtr> l = elaborate(lat, env, *x.lhs);
          if (!l.ok()) return l;
          CheckResult<ITermPtr> r = elaborate(lat, env, *x.rhs);
          if (!r.ok()) return r;
          if (l.value()->type.is_function() || r.value()->type.is_function()) {
            return TypeError{"op", t.span, "operands of a boolean operator must be booleans"};
          }
          return iop(x.op, judged_slot(l.value(), l.value()->type),
                     judged_slot(r.value(), r.value()->type), t.span);
        } else if constexpr (std::is_same_v<T, App>) {
          CheckResult<ITermPtr> f = elaborate(lat, env, *x.fn);
          if (!f.ok()) return f;
          CheckResult<ITermPtr> a = elaborate(lat, env, *x.arg);
          if (!a.ok()) return a;
          const GradualType& fn_type = f.value()->type;
          if (!fn_type.is_function()) {
            return TypeError{"app", t.span,
                             "applied expression has type " + to_string(fn_type) +
                                 ", which is not a function type"};
          }
          if (!consistent_subtype(a.value()->type, fn_type.dom())) {
            return TypeError{"app", t.span,
                             "argument type " + to_string(a.value()->type) +
                                 " is not consistent with " + to_string(fn_type.dom())};
          }
          return iapp(judged_slot(f.value(), fn_type),
                      judged_slot(a.value(), fn_type.dom()), fn_type, t.span);
        } else if constexpr (std::is_same_v<T, If>) {
          CheckResult<ITermPtr> c = elaborate(lat, env, *x.cond);
          if (!c.ok()) return c;
          CheckResult<ITermPtr> a = elaborate(lat, env, *x.then_branch);
          if (!a.ok()) return a;
          CheckResult<ITermPtr> b = elaborate(lat, env, *x.else_branch);
          if (!b.ok()) return b;
          if (c.value()->type.is_function()) {
            return TypeError{"if", t.span, "condition must be a boolean"};
          }
          std::optional<GradualType> j =
              consistent_join(a.value()->type, b.value()->type);
          if (!j) {
            return TypeError{"if", t.span,
                             "branch types " + to_string(a.value()->type) + " and " +
                                 to_string(b.value()->type) + " have no join"};
          }
          GradualType target = gstamp(*j, c.value()->type.label());
          return iif(judged_slot(c.value(), c.value()->type),
                     judged_slot(a.value(), target), judged_slot(b.value(), target), target,
                     t.span);
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          CheckResult<ITermPtr> b = elaborate(lat, env, *x.body);
          if (!b.ok()) return b;
          CheckResult<GradualType> target = resolve_gradual_type(lat, *x.type, t.span);
          if (!target.ok()) return target.error();
          if (!consistent_subtype(b.value()->type, target.value())) {
            return TypeError{"asc", t.span,
                             to_string(b.value()->type) + " is not consistent with " +
                                 to_string(target.value())};
          }
          return iasc(judged_slot(b.value(), target.value()), t.span);
        }
      },
      t.node);
}

// ---------------------------------------------------------------------------
// Well-formedness: recompute node types, validate evidence
// ---------------------------------------------------------------------------

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool slot_ok(const EvSlot& s, std::string* why, NodeMemo* memo, const NodeMemo* trusted) {
  if (!well_formed(s.term, why, memo, trusted)) return false;
  if (!evidence_justifies(s.ev, s.term->type, s.target)) {
    return fail(why, "evidence " + to_string(s.ev) + " does not justify " +
                         to_string(s.term->type) + " <~ " + to_string(s.target));
  }
  return true;
}

}  // namespace

bool well_formed(const ITermPtr& t, std::string* why, NodeMemo* memo,
                 const NodeMemo* trusted) {
  if (memo && memo->count(t.get())) return true;
  if (trusted && trusted->count(t.get())) return true;
  bool ok = std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IVar>) {
          return true;
        } else if constexpr (std::is_same_v<T, IBool>) {
          if (t->type != GradualType::boolean(x.label)) return fail(why, "literal type");
          return true;
        } else if constexpr (std::is_same_v<T, ILam>) {
          if (!well_formed(x.body, why, memo, trusted)) return false;
          if (t->type != GradualType::function(x.param_type, x.body->type, x.label)) {
            return fail(why, "lambda type");
          }
          return true;
        } else if constexpr (std::is_same_v<T, IOp>) {
          if (!slot_ok(x.lhs, why, memo, trusted) || !slot_ok(x.rhs, why, memo, trusted)) return false;
          if (x.lhs.target.is_function() || x.rhs.target.is_function()) {
            return fail(why, "operator target not boolean");
          }
          GradualType want = GradualType::boolean(
              gradual_join(x.lhs.target.label(), x.rhs.target.label()));
          if (t->type != want) return fail(why, "operator node type");
          return true;
        } else if constexpr (std::is_same_v<T, IApp>) {
          if (!slot_ok(x.fn, why, memo, trusted) || !slot_ok(x.arg, why, memo, trusted)) return false;
          if (!x.fn_type.is_function()) return fail(why, "application at non-function type");
          if (x.fn.target != x.fn_type) return fail(why, "function slot target");
          if (x.arg.target != x.fn_type.dom()) return fail(why, "argument slot target");
          if (t->type != gstamp(x.fn_type.cod(), x.fn_type.label())) {
            return fail(why, "application node type");
          }
          return true;
        } else if constexpr (std::is_same_v<T, IIf>) {
          if (!slot_ok(x.cond, why, memo, trusted) ||
              !slot_ok(x.then_branch, why, memo, trusted) ||
              !slot_ok(x.else_branch, why, memo, trusted)) {
            return false;
          }
          if (x.cond.target.is_function()) return fail(why, "condition target not boolean");
          std::optional<GradualType> j =
              consistent_join(x.then_branch.term->type, x.else_branch.term->type);
          if (!j) return fail(why, "branch join undefined");
          GradualType want = gstamp(*j, x.cond.target.label());
          if (x.branch_target != want) return fail(why, "branch target");
          if (x.then_branch.target != want || x.else_branch.target != want) {
            return fail(why, "branch slot target");
          }
          if (t->type != want) return fail(why, "conditional node type");
          return true;
        } else {
          static_assert(std::is_same_v<T, IAsc>);
          if (!slot_ok(x.body, why, memo, trusted)) return false;
          if (t->type != x.body.target) return fail(why, "ascription node type");
          return true;
        }
      },
      t->node);
  if (ok && memo) memo->insert(t.get());
  return ok;
}

bool equal(const ITerm& a, const ITerm& b) {
  if (a.node.index() != b.node.index()) return false;
  if (a.type != b.type) return false;
  auto slots_equal = [](const EvSlot& x, const EvSlot& y) {
    return x.ev == y.ev && x.target == y.target && equal(*x.term, *y.term);
  };
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, IVar>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, IBool>) {
          return x.value == y.value && x.label == y.label;
        } else if constexpr (std::is_same_v<T, ILam>) {
          return x.param == y.param && x.param_type == y.param_type &&
                 x.label == y.label && equal(*x.body, *y.body);
        } else if constexpr (std::is_same_v<T, IOp>) {
          return x.op == y.op && slots_equal(x.lhs, y.lhs) && slots_equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, IApp>) {
          return x.fn_type == y.fn_type && slots_equal(x.fn, y.fn) &&
                 slots_equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, IIf>) {
          return x.branch_target == y.branch_target && slots_equal(x.cond, y.cond) &&
                 slots_equal(x.then_branch, y.then_branch) &&
                 slots_equal(x.else_branch, y.else_branch);
        } else {
          static_assert(std::is_same_v<T, IAsc>);
          return slots_equal(x.body, y.body);
        }
      },
      a.node);
}

namespace {

bool atomic(const ITerm& t) {
  return std::holds_alternative<IVar>(t.node) || std::holds_alternative<IBool>(t.node) ||
         std::holds_alternative<ILam>(t.node);
}

void print_iterm(const ITerm& t, std::string& out);

void print_islot(const EvSlot& s, std::string& out) {
  out += to_string(s.ev);
  if (atomic(*s.term)) {
    print_iterm(*s.term, out);
  } else {
    out += "(";
    print_iterm(*s.term, out);
    out += ")";
  }
}

void print_iterm(const ITerm& t, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IVar>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, IBool>) {
          out += x.value ? "true@" : "false@";
          out += to_string(x.label);
        } else if constexpr (std::is_same_v<T, ILam>) {
          out += "(\\" + x.param + ":" + to_string(x.param_type) + ". ";
          print_iterm(*x.body, out);
          out += ")@" + to_string(x.label);
        } else if constexpr (std::is_same_v<T, IOp>) {
          print_islot(x.lhs, out);
          out += " ";
          out += op_symbol(x.op);
          out += " ";
          print_islot(x.rhs, out);
        } else if constexpr (std::is_same_v<T, IApp>) {
          out += "(";
          print_islot(x.fn, out);
          out += ") (";
          print_islot(x.arg, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, IIf>) {
          out += "if ";
          print_islot(x.cond, out);
          out += " then ";
          print_islot(x.then_branch, out);
          out += " else ";
          print_islot(x.else_branch, out);
        } else {
          static_assert(std::is_same_v<T, IAsc>);
          print_islot(x.body, out);
          out += " :: " + to_string(t.type);
        }
      },
      t.node);
}

}  // namespace

std::string print(const ITerm& t) {
  std::string out;
  print_iterm(t, out);
  return out;
}

ITermPtr substitute(const ITermPtr& body, const std::string& name, const ITermPtr& value) {
  auto sub_slot = [&](const EvSlot& s, bool& changed) {
    ITermPtr t = substitute(s.term, name, value);
    if (t != s.term) changed = true;
    return EvSlot{s.ev, t, s.target};
  };
  return std::visit(
      [&](const auto& x) -> ITermPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IVar>) {
          return x.name == name ? value : body;
        } else if constexpr (std::is_same_v<T, IBool>) {
          return body;
        } else if constexpr (std::is_same_v<T, ILam>) {
          if (x.param == name) return body;  // shadowed
          ITermPtr b = substitute(x.body, name, value);
          if (b == x.body) return body;
          return make_iterm(body->span, body->type, ILam{x.param, x.param_type, b, x.label});
        } else if constexpr (std::is_same_v<T, IOp>) {
          bool changed = false;
          EvSlot l = sub_slot(x.lhs, changed);
          EvSlot r = sub_slot(x.rhs, changed);
          if (!changed) return body;
          return make_iterm(body->span, body->type, IOp{x.op, std::move(l), std::move(r)});
        } else if constexpr (std::is_same_v<T, IApp>) {
          bool changed = false;
          EvSlot f = sub_slot(x.fn, changed);
          EvSlot a = sub_slot(x.arg, changed);
          if (!changed) return body;
          return make_iterm(body->span, body->type,
                            IApp{std::move(f), std::move(a), x.fn_type});
        } else if constexpr (std::is_same_v<T, IIf>) {
          bool changed = false;
          EvSlot c = sub_slot(x.cond, changed);
          EvSlot a = sub_slot(x.then_branch, changed);
          EvSlot b = sub_slot(x.else_branch, changed);
          if (!changed) return body;
          return make_iterm(body->span, body->type,
                            IIf{std::move(c), std::move(a), std::move(b), x.branch_target});
        } else {
          static_assert(std::is_same_v<T, IAsc>);
          bool changed = false;
          EvSlot b = sub_slot(x.body, changed);
          if (!changed) return body;
          return make_iterm(body->span, body->type, IAsc{std::move(b)});
        }
      },
      body->node);
}

}  // namespace gsec
