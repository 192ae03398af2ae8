#include "gsec/statics.hpp"

namespace gsec {

CheckResult<Label> resolve_label(const SecurityLattice& lat, const SurfaceLabel& l, Span span) {
  switch (l.kind) {
    case SurfaceLabel::Kind::Default:
      return lat.bottom();
    case SurfaceLabel::Kind::Unknown:
      return TypeError{"label", span, "the unknown label '?' is not a static label"};
    case SurfaceLabel::Kind::Named:
      if (!lat.has(l.name)) {
        return TypeError{"label", span, "unknown label '" + l.name + "'"};
      }
      return lat.label(l.name);
  }
  return TypeError{"label", span, "bad label"};
}

CheckResult<StaticType> resolve_static_type(const SecurityLattice& lat, const SurfaceType& t,
                                            Span span) {
  CheckResult<Label> l = resolve_label(lat, t.label, span);
  if (!l.ok()) return l.error();
  if (!t.is_function()) return StaticType::boolean(l.value());
  CheckResult<StaticType> d = resolve_static_type(lat, *t.dom, span);
  if (!d.ok()) return d;
  CheckResult<StaticType> c = resolve_static_type(lat, *t.cod, span);
  if (!c.ok()) return c;
  return StaticType::function(d.value(), c.value(), l.value());
}

bool is_subtype(const StaticType& a, const StaticType& b) {
  if (a.is_function() != b.is_function()) return false;
  if (!leq(a.label(), b.label())) return false;
  if (!a.is_function()) return true;
  return is_subtype(b.dom(), a.dom()) && is_subtype(a.cod(), b.cod());
}

std::optional<StaticType> subtype_join(const StaticType& a, const StaticType& b) {
  if (a.is_function() != b.is_function()) return std::nullopt;
  Label l = join(a.label(), b.label());
  if (!a.is_function()) return StaticType::boolean(l);
  std::optional<StaticType> d = subtype_meet(a.dom(), b.dom());
  std::optional<StaticType> c = subtype_join(a.cod(), b.cod());
  if (!d || !c) return std::nullopt;
  return StaticType::function(*d, *c, l);
}

std::optional<StaticType> subtype_meet(const StaticType& a, const StaticType& b) {
  if (a.is_function() != b.is_function()) return std::nullopt;
  Label l = meet(a.label(), b.label());
  if (!a.is_function()) return StaticType::boolean(l);
  std::optional<StaticType> d = subtype_join(a.dom(), b.dom());
  std::optional<StaticType> c = subtype_meet(a.cod(), b.cod());
  if (!d || !c) return std::nullopt;
  return StaticType::function(*d, *c, l);
}

StaticType stamp(const StaticType& t, Label l) { return t.with_label(join(t.label(), l)); }

namespace rules {

std::optional<StaticType> op_result(const StaticType& lhs, const StaticType& rhs) {
  if (lhs.is_function() || rhs.is_function()) return std::nullopt;
  return StaticType::boolean(join(lhs.label(), rhs.label()));
}

std::optional<StaticType> app_result(const StaticType& fn, const StaticType& arg) {
  if (!fn.is_function()) return std::nullopt;
  if (!is_subtype(arg, fn.dom())) return std::nullopt;
  return stamp(fn.cod(), fn.label());
}

std::optional<StaticType> if_result(const StaticType& cond, const StaticType& thn,
                                    const StaticType& els) {
  if (cond.is_function()) return std::nullopt;
  std::optional<StaticType> j = subtype_join(thn, els);
  if (!j) return std::nullopt;
  return stamp(*j, cond.label());
}

std::optional<StaticType> asc_result(const StaticType& body, const StaticType& target) {
  if (!is_subtype(body, target)) return std::nullopt;
  return target;
}

}  // namespace rules

CheckResult<StaticType> typecheck_static(const SecurityLattice& lat, const StaticEnv& env,
                                         const Term& t) {
  return std::visit(
      [&](const auto& x) -> CheckResult<StaticType> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          CheckResult<Label> l = resolve_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          return StaticType::boolean(l.value());
        } else if constexpr (std::is_same_v<T, Var>) {
          const StaticType* ty = env.lookup(x.name);
          if (!ty) return TypeError{"var", t.span, "unbound variable '" + x.name + "'"};
          return *ty;
        } else if constexpr (std::is_same_v<T, Lam>) {
          CheckResult<Label> l = resolve_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          CheckResult<StaticType> annot = resolve_static_type(lat, *x.annot, t.span);
          if (!annot.ok()) return annot;
          CheckResult<StaticType> body =
              typecheck_static(lat, env.extended(x.param, annot.value()), *x.body);
          if (!body.ok()) return body;
          return StaticType::function(annot.value(), body.value(), l.value());
        } else if constexpr (std::is_same_v<T, BinOp>) {
          CheckResult<StaticType> l = typecheck_static(lat, env, *x.lhs);
          if (!l.ok()) return l;
          CheckResult<StaticType> r = typecheck_static(lat, env, *x.rhs);
          if (!r.ok()) return r;
          std::optional<StaticType> res = rules::op_result(l.value(), r.value());
          if (!res) {
            return TypeError{"op", t.span, "operands of a boolean operator must be booleans"};
          }
          return *res;
        } else if constexpr (std::is_same_v<T, App>) {
          CheckResult<StaticType> f = typecheck_static(lat, env, *x.fn);
          if (!f.ok()) return f;
          CheckResult<StaticType> a = typecheck_static(lat, env, *x.arg);
          if (!a.ok()) return a;
          if (!f.value().is_function()) {
            return TypeError{"app", t.span,
                             "applied expression has type " + to_string(f.value()) +
                                 ", which is not a function type"};
          }
          std::optional<StaticType> res = rules::app_result(f.value(), a.value());
          if (!res) {
            return TypeError{"app", t.span,
                             "argument type " + to_string(a.value()) +
                                 " is not a subtype of " + to_string(f.value().dom())};
          }
          return *res;
        } else if constexpr (std::is_same_v<T, If>) {
          CheckResult<StaticType> c = typecheck_static(lat, env, *x.cond);
          if (!c.ok()) return c;
          CheckResult<StaticType> a = typecheck_static(lat, env, *x.then_branch);
          if (!a.ok()) return a;
          CheckResult<StaticType> b = typecheck_static(lat, env, *x.else_branch);
          if (!b.ok()) return b;
          if (c.value().is_function()) {
            return TypeError{"if", t.span, "condition must be a boolean"};
          }
          std::optional<StaticType> res = rules::if_result(c.value(), a.value(), b.value());
          if (!res) {
            return TypeError{"if", t.span,
                             "branch types " + to_string(a.value()) + " and " +
                                 to_string(b.value()) + " have no join"};
          }
          return *res;
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          CheckResult<StaticType> b = typecheck_static(lat, env, *x.body);
          if (!b.ok()) return b;
          CheckResult<StaticType> target = resolve_static_type(lat, *x.type, t.span);
          if (!target.ok()) return target;
          std::optional<StaticType> res = rules::asc_result(b.value(), target.value());
          if (!res) {
            return TypeError{"asc", t.span,
                             to_string(b.value()) + " is not a subtype of " +
                                 to_string(target.value())};
          }
          return *res;
        }
      },
      t.node);
}

}  // namespace gsec
