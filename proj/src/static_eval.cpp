#include "gsec/static_eval.hpp"

#include <stdexcept>

namespace gsec {

STermPtr make_sterm(std::variant<SBool, SVar, SLam, SApp, SOp, SIf, SAsc, SStamp> node) {
  auto t = std::make_shared<STerm>();
  t->node = std::move(node);
  return t;
}

CheckResult<STermPtr> lower(const SecurityLattice& lat, const Term& t) {
  return std::visit(
      [&](const auto& x) -> CheckResult<STermPtr> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          CheckResult<Label> l = resolve_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          return make_sterm(SBool{x.value, l.value()});
        } else if constexpr (std::is_same_v<T, Var>) {
          return make_sterm(SVar{x.name});
        } else if constexpr (std::is_same_v<T, Lam>) {
          CheckResult<Label> l = resolve_label(lat, x.label, t.span);
          if (!l.ok()) return l.error();
          CheckResult<StaticType> annot = resolve_static_type(lat, *x.annot, t.span);
          if (!annot.ok()) return annot.error();
          CheckResult<STermPtr> body = lower(lat, *x.body);
          if (!body.ok()) return body;
          return make_sterm(SLam{x.param, annot.value(), body.value(), l.value()});
        } else if constexpr (std::is_same_v<T, App>) {
          CheckResult<STermPtr> f = lower(lat, *x.fn);
          if (!f.ok()) return f;
          CheckResult<STermPtr> a = lower(lat, *x.arg);
          if (!a.ok()) return a;
          return make_sterm(SApp{f.value(), a.value()});
        } else if constexpr (std::is_same_v<T, BinOp>) {
          CheckResult<STermPtr> l = lower(lat, *x.lhs);
          if (!l.ok()) return l;
          CheckResult<STermPtr> r = lower(lat, *x.rhs);
          if (!r.ok()) return r;
          return make_sterm(SOp{x.op, l.value(), r.value()});
        } else if constexpr (std::is_same_v<T, If>) {
          CheckResult<STermPtr> c = lower(lat, *x.cond);
          if (!c.ok()) return c;
          CheckResult<STermPtr> a = lower(lat, *x.then_branch);
          if (!a.ok()) return a;
          CheckResult<STermPtr> b = lower(lat, *x.else_branch);
          if (!b.ok()) return b;
          return make_sterm(SIf{c.value(), a.value(), b.value()});
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          CheckResult<STermPtr> b = lower(lat, *x.body);
          if (!b.ok()) return b;
          CheckResult<StaticType> ty = resolve_static_type(lat, *x.type, t.span);
          if (!ty.ok()) return ty.error();
          return make_sterm(SAsc{b.value(), ty.value()});
        }
      },
      t.node);
}

bool is_static_value(const STerm& t) {
  return std::holds_alternative<SBool>(t.node) || std::holds_alternative<SLam>(t.node);
}

Label value_label(const STerm& v) {
  if (const auto* b = std::get_if<SBool>(&v.node)) return b->label;
  return std::get<SLam>(v.node).label;
}

STermPtr value_with_label(const STerm& v, Label l) {
  if (const auto* b = std::get_if<SBool>(&v.node)) return make_sterm(SBool{b->value, l});
  const auto& lam = std::get<SLam>(v.node);
  return make_sterm(SLam{lam.param, lam.annot, lam.body, l});
}

bool equal(const STerm& a, const STerm& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SBool>) {
          return x.value == y.value && x.label == y.label;
        } else if constexpr (std::is_same_v<T, SVar>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, SLam>) {
          return x.param == y.param && x.annot == y.annot && x.label == y.label &&
                 equal(*x.body, *y.body);
        } else if constexpr (std::is_same_v<T, SApp>) {
          return equal(*x.fn, *y.fn) && equal(*x.arg, *y.arg);
        } else if constexpr (std::is_same_v<T, SOp>) {
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, SIf>) {
          return equal(*x.cond, *y.cond) && equal(*x.then_branch, *y.then_branch) &&
                 equal(*x.else_branch, *y.else_branch);
        } else if constexpr (std::is_same_v<T, SAsc>) {
          return x.type == y.type && equal(*x.body, *y.body);
        } else {
          static_assert(std::is_same_v<T, SStamp>);
          return x.label == y.label && equal(*x.body, *y.body);
        }
      },
      a.node);
}

namespace {

enum SPrec { SPrecTerm = 0, SPrecOp = 1, SPrecApp = 2, SPrecAtom = 3 };

void print_sterm(const STerm& t, SPrec ctx, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SBool>) {
          out += x.value ? "true@" : "false@";
          out += to_string(x.label);
        } else if constexpr (std::is_same_v<T, SVar>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, SLam>) {
          out += "(\\" + x.param + ":" + to_string(x.annot) + ". ";
          print_sterm(*x.body, SPrecTerm, out);
          out += ")@" + to_string(x.label);
        } else if constexpr (std::is_same_v<T, SApp>) {
          bool parens = ctx > SPrecApp;
          if (parens) out += "(";
          print_sterm(*x.fn, SPrecApp, out);
          out += " ";
          print_sterm(*x.arg, SPrecAtom, out);
          if (parens) out += ")";
        } else if constexpr (std::is_same_v<T, SOp>) {
          bool parens = ctx > SPrecOp;
          if (parens) out += "(";
          print_sterm(*x.lhs, SPrecOp, out);
          out += " ";
          out += op_symbol(x.op);
          out += " ";
          print_sterm(*x.rhs, SPrecApp, out);
          if (parens) out += ")";
        } else if constexpr (std::is_same_v<T, SIf>) {
          bool parens = ctx > SPrecTerm;
          if (parens) out += "(";
          out += "if ";
          print_sterm(*x.cond, SPrecOp, out);
          out += " then ";
          print_sterm(*x.then_branch, SPrecOp, out);
          out += " else ";
          print_sterm(*x.else_branch, SPrecOp, out);
          if (parens) out += ")";
        } else if constexpr (std::is_same_v<T, SAsc>) {
          bool parens = ctx > SPrecTerm;
          if (parens) out += "(";
          print_sterm(*x.body, SPrecOp, out);
          out += " :: " + to_string(x.type);
          if (parens) out += ")";
        } else {
          static_assert(std::is_same_v<T, SStamp>);
          bool parens = ctx > SPrecOp;
          if (parens) out += "(";
          print_sterm(*x.body, SPrecApp, out);
          out += " \\/ " + to_string(x.label);
          if (parens) out += ")";
        }
      },
      t.node);
}

}  // namespace

std::string print(const STerm& t) {
  std::string out;
  print_sterm(t, SPrecTerm, out);
  return out;
}

STermPtr substitute(const STermPtr& body, const std::string& name, const STermPtr& value) {
  return std::visit(
      [&](const auto& x) -> STermPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SBool>) {
          return body;
        } else if constexpr (std::is_same_v<T, SVar>) {
          return x.name == name ? value : body;
        } else if constexpr (std::is_same_v<T, SLam>) {
          if (x.param == name) return body;  // shadowed
          STermPtr b = substitute(x.body, name, value);
          if (b == x.body) return body;
          return make_sterm(SLam{x.param, x.annot, b, x.label});
        } else if constexpr (std::is_same_v<T, SApp>) {
          STermPtr f = substitute(x.fn, name, value);
          STermPtr a = substitute(x.arg, name, value);
          if (f == x.fn && a == x.arg) return body;
          return make_sterm(SApp{f, a});
        } else if constexpr (std::is_same_v<T, SOp>) {
          STermPtr l = substitute(x.lhs, name, value);
          STermPtr r = substitute(x.rhs, name, value);
          if (l == x.lhs && r == x.rhs) return body;
          return make_sterm(SOp{x.op, l, r});
        } else if constexpr (std::is_same_v<T, SIf>) {
          STermPtr c = substitute(x.cond, name, value);
          STermPtr a = substitute(x.then_branch, name, value);
          STermPtr b = substitute(x.else_branch, name, value);
          if (c == x.cond && a == x.then_branch && b == x.else_branch) return body;
          return make_sterm(SIf{c, a, b});
        } else if constexpr (std::is_same_v<T, SAsc>) {
          STermPtr b = substitute(x.body, name, value);
          if (b == x.body) return body;
          return make_sterm(SAsc{b, x.type});
        } else {
          static_assert(std::is_same_v<T, SStamp>);
          STermPtr b = substitute(x.body, name, value);
          if (b == x.body) return body;
          return make_sterm(SStamp{b, x.label});
        }
      },
      body->node);
}

std::optional<STermPtr> step_static(const STermPtr& t) {
  if (is_static_value(*t)) return std::nullopt;
  return std::visit(
      [&](const auto& x) -> std::optional<STermPtr> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SOp>) {
          if (auto l = step_static(x.lhs)) return make_sterm(SOp{x.op, *l, x.rhs});
          if (auto r = step_static(x.rhs)) return make_sterm(SOp{x.op, x.lhs, *r});
          const auto* a = std::get_if<SBool>(&x.lhs->node);
          const auto* b = std::get_if<SBool>(&x.rhs->node);
          if (!a || !b) throw std::logic_error("stuck: operator on non-boolean");
          return make_sterm(
              SBool{apply_op(x.op, a->value, b->value), join(a->label, b->label)});
        } else if constexpr (std::is_same_v<T, SApp>) {
          if (auto f = step_static(x.fn)) return make_sterm(SApp{*f, x.arg});
          if (auto a = step_static(x.arg)) return make_sterm(SApp{x.fn, *a});
          const auto* lam = std::get_if<SLam>(&x.fn->node);
          if (!lam) throw std::logic_error("stuck: applying a non-function");
          return make_sterm(SStamp{substitute(lam->body, lam->param, x.arg), lam->label});
        } else if constexpr (std::is_same_v<T, SIf>) {
          if (auto c = step_static(x.cond)) {
            return make_sterm(SIf{*c, x.then_branch, x.else_branch});
          }
          const auto* c = std::get_if<SBool>(&x.cond->node);
          if (!c) throw std::logic_error("stuck: non-boolean condition");
          return make_sterm(SStamp{c->value ? x.then_branch : x.else_branch, c->label});
        } else if constexpr (std::is_same_v<T, SAsc>) {
          if (auto b = step_static(x.body)) return make_sterm(SAsc{*b, x.type});
          return x.body;
        } else if constexpr (std::is_same_v<T, SStamp>) {
          if (auto b = step_static(x.body)) return make_sterm(SStamp{*b, x.label});
          return value_with_label(*x.body, join(value_label(*x.body), x.label));
        } else {
          throw std::logic_error("stuck: free variable in evaluation");
        }
      },
      t->node);
}

STermPtr eval_small(const STermPtr& t, std::vector<std::string>* trace) {
  STermPtr cur = t;
  // Strong normalization bounds every run; the cap only guards against bugs.
  for (int i = 0; i < 1000000; ++i) {
    std::optional<STermPtr> next = step_static(cur);
    if (!next) return cur;
    cur = *next;
    if (trace) trace->push_back(print(*cur));
  }
  throw std::logic_error("static evaluation did not terminate");
}

STermPtr eval_big(const STermPtr& t) {
  return std::visit(
      [&](const auto& x) -> STermPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SBool> || std::is_same_v<T, SLam>) {
          return t;
        } else if constexpr (std::is_same_v<T, SOp>) {
          STermPtr l = eval_big(x.lhs);
          STermPtr r = eval_big(x.rhs);
          const auto& a = std::get<SBool>(l->node);
          const auto& b = std::get<SBool>(r->node);
          return make_sterm(
              SBool{apply_op(x.op, a.value, b.value), join(a.label, b.label)});
        } else if constexpr (std::is_same_v<T, SApp>) {
          STermPtr f = eval_big(x.fn);
          STermPtr a = eval_big(x.arg);
          const auto& lam = std::get<SLam>(f->node);
          STermPtr r = eval_big(substitute(lam.body, lam.param, a));
          return value_with_label(*r, join(value_label(*r), lam.label));
        } else if constexpr (std::is_same_v<T, SIf>) {
          STermPtr c = eval_big(x.cond);
          const auto& b = std::get<SBool>(c->node);
          STermPtr r = eval_big(b.value ? x.then_branch : x.else_branch);
          return value_with_label(*r, join(value_label(*r), b.label));
        } else if constexpr (std::is_same_v<T, SAsc>) {
          return eval_big(x.body);
        } else if constexpr (std::is_same_v<T, SStamp>) {
          STermPtr r = eval_big(x.body);
          return value_with_label(*r, join(value_label(*r), x.label));
        } else {
          throw std::logic_error("free variable in evaluation");
        }
      },
      t->node);
}

std::optional<StaticType> typecheck_core(const SecurityLattice& lat, const StaticEnv& env,
                                         const STerm& t) {
  return std::visit(
      [&](const auto& x) -> std::optional<StaticType> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SBool>) {
          return StaticType::boolean(x.label);
        } else if constexpr (std::is_same_v<T, SVar>) {
          const StaticType* ty = env.lookup(x.name);
          if (!ty) return std::nullopt;
          return *ty;
        } else if constexpr (std::is_same_v<T, SLam>) {
          std::optional<StaticType> body =
              typecheck_core(lat, env.extended(x.param, x.annot), *x.body);
          if (!body) return std::nullopt;
          return StaticType::function(x.annot, *body, x.label);
        } else if constexpr (std::is_same_v<T, SOp>) {
          auto l = typecheck_core(lat, env, *x.lhs);
          auto r = typecheck_core(lat, env, *x.rhs);
          if (!l || !r) return std::nullopt;
          return rules::op_result(*l, *r);
        } else if constexpr (std::is_same_v<T, SApp>) {
          auto f = typecheck_core(lat, env, *x.fn);
          auto a = typecheck_core(lat, env, *x.arg);
          if (!f || !a) return std::nullopt;
          return rules::app_result(*f, *a);
        } else if constexpr (std::is_same_v<T, SIf>) {
          auto c = typecheck_core(lat, env, *x.cond);
          auto a = typecheck_core(lat, env, *x.then_branch);
          auto b = typecheck_core(lat, env, *x.else_branch);
          if (!c || !a || !b) return std::nullopt;
          return rules::if_result(*c, *a, *b);
        } else if constexpr (std::is_same_v<T, SAsc>) {
          auto b = typecheck_core(lat, env, *x.body);
          if (!b) return std::nullopt;
          return rules::asc_result(*b, x.type);
        } else {
          static_assert(std::is_same_v<T, SStamp>);
          auto b = typecheck_core(lat, env, *x.body);
          if (!b) return std::nullopt;
          return stamp(*b, x.label);
        }
      },
      t.node);
}

}  // namespace gsec
