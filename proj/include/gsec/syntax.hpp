#ifndef GSEC_SYNTAX_HPP
#define GSEC_SYNTAX_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

namespace gsec {

struct Span {
  int line = 0;
  int col = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

std::string to_string(const Span& s);

/// A label annotation as written: a name, `?`, or omitted (defaults to the
/// lattice bottom at checking time).
struct SurfaceLabel {
  enum class Kind { Default, Unknown, Named };
  Kind kind = Kind::Default;
  std::string name;

  static SurfaceLabel dflt() { return {}; }
  static SurfaceLabel unknown() { return {Kind::Unknown, ""}; }
  static SurfaceLabel named(std::string n) { return {Kind::Named, std::move(n)}; }
  friend bool operator==(const SurfaceLabel&, const SurfaceLabel&) = default;
};

struct SurfaceType;
using SurfaceTypePtr = std::shared_ptr<const SurfaceType>;

struct SurfaceType {
  SurfaceLabel label;
  SurfaceTypePtr dom, cod;  // null => Bool

  bool is_function() const { return dom != nullptr; }
  static SurfaceTypePtr boolean(SurfaceLabel l);
  static SurfaceTypePtr function(SurfaceTypePtr d, SurfaceTypePtr c, SurfaceLabel l);
};

bool equal(const SurfaceType& a, const SurfaceType& b);

enum class BoolOp { And, Or, Implies };

bool apply_op(BoolOp op, bool a, bool b);
std::string_view op_symbol(BoolOp op);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct BoolLit {
  bool value;
  SurfaceLabel label;
};
struct Var {
  std::string name;
};
struct Lam {
  std::string param;
  SurfaceTypePtr annot;
  TermPtr body;
  SurfaceLabel label;
};
struct App {
  TermPtr fn, arg;
};
struct BinOp {
  BoolOp op;
  TermPtr lhs, rhs;
};
struct If {
  TermPtr cond, then_branch, else_branch;
};
struct Ascribe {
  TermPtr body;
  SurfaceTypePtr type;
};

struct Term {
  Span span;
  std::variant<BoolLit, Var, Lam, App, BinOp, If, Ascribe> node;
};

TermPtr make_term(Span span, std::variant<BoolLit, Var, Lam, App, BinOp, If, Ascribe> node);
TermPtr lit(bool value, SurfaceLabel l, Span span = {});
TermPtr var(std::string name, Span span = {});
TermPtr lam(std::string param, SurfaceTypePtr annot, TermPtr body, SurfaceLabel l,
            Span span = {});
TermPtr app(TermPtr fn, TermPtr arg, Span span = {});
TermPtr binop(BoolOp op, TermPtr lhs, TermPtr rhs, Span span = {});
TermPtr ifte(TermPtr c, TermPtr t, TermPtr e, Span span = {});
TermPtr ascribe(TermPtr body, SurfaceTypePtr type, Span span = {});

/// Structural equality modulo spans.
bool equal(const Term& a, const Term& b);

struct ParseError : std::runtime_error {
  Span span;
  ParseError(const std::string& msg, Span s) : std::runtime_error(msg), span(s) {}
};

/// Parses a program. Throws ParseError with position on bad input.
TermPtr parse(std::string_view source);
SurfaceTypePtr parse_type(std::string_view source);

/// Pretty-printer; parse(print(t)) is structurally equal to t modulo spans.
std::string print(const Term& t);
std::string print(const SurfaceType& t);
std::string print(const SurfaceLabel& l);  // "" for Default, "?" for Unknown

}  // namespace gsec

#endif
