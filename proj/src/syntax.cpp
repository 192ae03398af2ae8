#include "gsec/syntax.hpp"

#include <cctype>
#include <sstream>

namespace gsec {

std::string to_string(const Span& s) {
  return std::to_string(s.line) + ":" + std::to_string(s.col);
}

SurfaceTypePtr SurfaceType::boolean(SurfaceLabel l) {
  auto t = std::make_shared<SurfaceType>();
  t->label = std::move(l);
  return t;
}

SurfaceTypePtr SurfaceType::function(SurfaceTypePtr d, SurfaceTypePtr c, SurfaceLabel l) {
  auto t = std::make_shared<SurfaceType>();
  t->label = std::move(l);
  t->dom = std::move(d);
  t->cod = std::move(c);
  return t;
}

bool equal(const SurfaceType& a, const SurfaceType& b) {
  if (!(a.label == b.label)) return false;
  if (a.is_function() != b.is_function()) return false;
  if (!a.is_function()) return true;
  return equal(*a.dom, *b.dom) && equal(*a.cod, *b.cod);
}

bool apply_op(BoolOp op, bool a, bool b) {
  switch (op) {
    case BoolOp::And: return a && b;
    case BoolOp::Or: return a || b;
    case BoolOp::Implies: return !a || b;
  }
  return false;
}

std::string_view op_symbol(BoolOp op) {
  switch (op) {
    case BoolOp::And: return "&&";
    case BoolOp::Or: return "||";
    case BoolOp::Implies: return "=>";
  }
  return "?";
}

TermPtr make_term(Span span, std::variant<BoolLit, Var, Lam, App, BinOp, If, Ascribe> node) {
  auto t = std::make_shared<Term>();
  t->span = span;
  t->node = std::move(node);
  return t;
}

TermPtr lit(bool value, SurfaceLabel l, Span span) {
  return make_term(span, BoolLit{value, std::move(l)});
}
TermPtr var(std::string name, Span span) { return make_term(span, Var{std::move(name)}); }
TermPtr lam(std::string param, SurfaceTypePtr annot, TermPtr body, SurfaceLabel l, Span span) {
  return make_term(span, Lam{std::move(param), std::move(annot), std::move(body), std::move(l)});
}
TermPtr app(TermPtr fn, TermPtr arg, Span span) {
  return make_term(span, App{std::move(fn), std::move(arg)});
}
TermPtr binop(BoolOp op, TermPtr lhs, TermPtr rhs, Span span) {
  return make_term(span, BinOp{op, std::move(lhs), std::move(rhs)});
}
TermPtr ifte(TermPtr c, TermPtr t, TermPtr e, Span span) {
  return make_term(span, If{std::move(c), std::move(t), std::move(e)});
}
TermPtr ascribe(TermPtr body, SurfaceTypePtr type, Span span) {
  return make_term(span, Ascribe{std::move(body), std::move(type)});
}

bool equal(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, BoolLit>) {
          return x.value == y.value && x.label == y.label;
        } else if constexpr (std::is_same_v<T, Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Lam>) {
          return x.param == y.param && equal(*x.annot, *y.annot) &&
                 equal(*x.body, *y.body) && x.label == y.label;
        } else if constexpr (std::is_same_v<T, App>) {
          return equal(*x.fn, *y.fn) && equal(*x.arg, *y.arg);
        } else if constexpr (std::is_same_v<T, BinOp>) {
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, If>) {
          return equal(*x.cond, *y.cond) && equal(*x.then_branch, *y.then_branch) &&
                 equal(*x.else_branch, *y.else_branch);
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          return equal(*x.body, *y.body) && equal(*x.type, *y.type);
        }
      },
      a.node);
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End, LParen, RParen, Backslash, Colon, Dot, DoubleColon, Arrow, At, Question,
  AndAnd, OrOr, Implies, True, False, BoolKw, IfKw, ThenKw, ElseKw, Ident,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      bump(src_[pos_]);
    }
    Span here{line_, col_};
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, "", here};
      return;
    }
    char c = src_[pos_];
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two(':', ':')) {
      bump(':'); bump(':');
      tok_ = {Tok::DoubleColon, "::", here};
      return;
    }
    if (two('-', '>')) {
      bump('-'); bump('>');
      tok_ = {Tok::Arrow, "->", here};
      return;
    }
    if (two('&', '&')) {
      bump('&'); bump('&');
      tok_ = {Tok::AndAnd, "&&", here};
      return;
    }
    if (two('|', '|')) {
      bump('|'); bump('|');
      tok_ = {Tok::OrOr, "||", here};
      return;
    }
    if (two('=', '>')) {
      bump('='); bump('>');
      tok_ = {Tok::Implies, "=>", here};
      return;
    }
    switch (c) {
      case '(': bump(c); tok_ = {Tok::LParen, "(", here}; return;
      case ')': bump(c); tok_ = {Tok::RParen, ")", here}; return;
      case '\\': bump(c); tok_ = {Tok::Backslash, "\\", here}; return;
      case ':': bump(c); tok_ = {Tok::Colon, ":", here}; return;
      case '.': bump(c); tok_ = {Tok::Dot, ".", here}; return;
      case '@': bump(c); tok_ = {Tok::At, "@", here}; return;
      case '?': bump(c); tok_ = {Tok::Question, "?", here}; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        word.push_back(src_[pos_]);
        bump(src_[pos_]);
      }
      Tok k = Tok::Ident;
      if (word == "true") k = Tok::True;
      else if (word == "false") k = Tok::False;
      else if (word == "Bool") k = Tok::BoolKw;
      else if (word == "if") k = Tok::IfKw;
      else if (word == "then") k = Tok::ThenKw;
      else if (word == "else") k = Tok::ElseKw;
      tok_ = {k, std::move(word), here};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", here);
  }

  void bump(char c) {
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_{Tok::End, "", {1, 1}};
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  TermPtr parse_program() {
    TermPtr t = parse_term();
    expect(Tok::End, "end of input");
    return t;
  }

  SurfaceTypePtr parse_type_only() {
    SurfaceTypePtr t = parse_type();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  // term := asc ; asc := opexp ["::" type]
  TermPtr parse_term() {
    Span here = lex_.peek().span;
    TermPtr t = parse_opexp();
    if (lex_.peek().kind == Tok::DoubleColon) {
      lex_.take();
      SurfaceTypePtr ty = parse_type();
      return ascribe(std::move(t), std::move(ty), here);
    }
    return t;
  }

  // opexp := "if" opexp "then" opexp "else" opexp | app { op app }
  TermPtr parse_opexp() {
    if (lex_.peek().kind == Tok::IfKw) {
      Span here = lex_.take().span;
      TermPtr c = parse_opexp();
      expect(Tok::ThenKw, "'then'");
      TermPtr t = parse_opexp();
      expect(Tok::ElseKw, "'else'");
      TermPtr e = parse_opexp();
      return ifte(std::move(c), std::move(t), std::move(e), here);
    }
    Span here = lex_.peek().span;
    TermPtr t = parse_app();
    for (;;) {
      BoolOp op;
      switch (lex_.peek().kind) {
        case Tok::AndAnd: op = BoolOp::And; break;
        case Tok::OrOr: op = BoolOp::Or; break;
        case Tok::Implies: op = BoolOp::Implies; break;
        default: return t;
      }
      lex_.take();
      TermPtr rhs = parse_app();
      t = binop(op, std::move(t), std::move(rhs), here);
    }
  }

  TermPtr parse_app() {
    Span here = lex_.peek().span;
    TermPtr t = parse_atom();
    while (starts_atom(lex_.peek().kind)) {
      TermPtr arg = parse_atom();
      t = app(std::move(t), std::move(arg), here);
    }
    return t;
  }

  static bool starts_atom(Tok k) {
    return k == Tok::True || k == Tok::False || k == Tok::Ident || k == Tok::LParen;
  }

  TermPtr parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::True:
      case Tok::False:
        return lit(t.kind == Tok::True, parse_opt_label(), t.span);
      case Tok::Ident:
        return var(t.text, t.span);
      case Tok::LParen: {
        if (lex_.peek().kind == Tok::Backslash) {
          lex_.take();
          Token name = expect(Tok::Ident, "parameter name");
          expect(Tok::Colon, "':'");
          SurfaceTypePtr annot = parse_type();
          expect(Tok::Dot, "'.'");
          TermPtr body = parse_term();
          expect(Tok::RParen, "')'");
          return lam(name.text, std::move(annot), std::move(body), parse_opt_label(), t.span);
        }
        TermPtr inner = parse_term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError("expected a term, found '" + t.text + "'", t.span);
    }
  }

  SurfaceLabel parse_opt_label() {
    if (lex_.peek().kind != Tok::At) return SurfaceLabel::dflt();
    lex_.take();
    return parse_label();
  }

  SurfaceLabel parse_label() {
    Token t = lex_.take();
    if (t.kind == Tok::Question) return SurfaceLabel::unknown();
    if (t.kind == Tok::Ident) return SurfaceLabel::named(t.text);
    throw ParseError("expected a label name or '?', found '" + t.text + "'", t.span);
  }

  // type := "Bool" "@" label | "(" type "->" type ")" "@" label
  SurfaceTypePtr parse_type() {
    Token t = lex_.take();
    if (t.kind == Tok::BoolKw) {
      expect(Tok::At, "'@'");
      return SurfaceType::boolean(parse_label());
    }
    if (t.kind == Tok::LParen) {
      SurfaceTypePtr d = parse_type();
      expect(Tok::Arrow, "'->'");
      SurfaceTypePtr c = parse_type();
      expect(Tok::RParen, "')'");
      expect(Tok::At, "'@'");
      return SurfaceType::function(std::move(d), std::move(c), parse_label());
    }
    throw ParseError("expected a type, found '" + t.text + "'", t.span);
  }

  Token expect(Tok k, const std::string& what) {
    Token t = lex_.take();
    if (t.kind != k) {
      throw ParseError("expected " + what + ", found '" +
                           (t.kind == Tok::End ? "end of input" : t.text) + "'",
                       t.span);
    }
    return t;
  }

  Lexer lex_;
};

}  // namespace

TermPtr parse(std::string_view source) { return Parser(source).parse_program(); }
SurfaceTypePtr parse_type(std::string_view source) { return Parser(source).parse_type_only(); }

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

std::string print(const SurfaceLabel& l) {
  switch (l.kind) {
    case SurfaceLabel::Kind::Default: return "";
    case SurfaceLabel::Kind::Unknown: return "?";
    case SurfaceLabel::Kind::Named: return l.name;
  }
  return "";
}

std::string print(const SurfaceType& t) {
  std::string lbl = t.label.kind == SurfaceLabel::Kind::Unknown ? "?" : t.label.name;
  if (!t.is_function()) return "Bool@" + lbl;
  return "(" + print(*t.dom) + " -> " + print(*t.cod) + ")@" + lbl;
}

namespace {

// Precedence tiers from the grammar, loosest first. OpArg is a binop operand
// position: binop chains may continue there but a bare conditional may not.
enum Prec { PrecTerm = 0, PrecOpexp = 1, PrecOpArg = 2, PrecApp = 3, PrecAtom = 4 };

void print_term(const Term& t, Prec ctx, std::string& out);

void print_label_suffix(const SurfaceLabel& l, std::string& out) {
  if (l.kind == SurfaceLabel::Kind::Default) return;
  out += "@";
  out += print(l);
}

void print_term(const Term& t, Prec ctx, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          out += x.value ? "true" : "false";
          print_label_suffix(x.label, out);
        } else if constexpr (std::is_same_v<T, Var>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, Lam>) {
          out += "(\\";
          out += x.param;
          out += ":";
          out += print(*x.annot);
          out += ". ";
          print_term(*x.body, PrecTerm, out);
          out += ")";
          print_label_suffix(x.label, out);
        } else if constexpr (std::is_same_v<T, App>) {
          bool parens = ctx > PrecApp;
          if (parens) out += "(";
          print_term(*x.fn, PrecApp, out);
          out += " ";
          print_term(*x.arg, PrecAtom, out);
          if (parens) out += ")";
        } else if constexpr (std::is_same_v<T, BinOp>) {
          bool parens = ctx > PrecOpArg;
          if (parens) out += "(";
          print_term(*x.lhs, PrecOpArg, out);  // ops are left-associative
          out += " ";
          out += op_symbol(x.op);
          out += " ";
          print_term(*x.rhs, PrecApp, out);
          if (parens) out += ")";
        } else if constexpr (std::is_same_v<T, If>) {
          bool parens = ctx > PrecOpexp;
          if (parens) out += "(";
          out += "if ";
          print_term(*x.cond, PrecOpexp, out);
          out += " then ";
          print_term(*x.then_branch, PrecOpexp, out);
          out += " else ";
          print_term(*x.else_branch, PrecOpexp, out);
          if (parens) out += ")";
        } else {
          static_assert(std::is_same_v<T, Ascribe>);
          bool parens = ctx > PrecTerm;
          if (parens) out += "(";
          print_term(*x.body, PrecOpexp, out);
          out += " :: ";
          out += print(*x.type);
          if (parens) out += ")";
        }
      },
      t.node);
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  print_term(t, PrecTerm, out);
  return out;
}

}  // namespace gsec
