#include "matlang/expr.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "matlang/errors.hpp"

namespace matlang {

// --- builders ---

namespace {
ExprPtr node(Op op, std::vector<ExprPtr> children = {}, GaussianRational scalar = {},
             std::string fn = {}) {
  return std::make_shared<Expr>(Expr{op, std::move(children), std::move(scalar), std::move(fn)});
}
}  // namespace

ExprPtr make_var() { return node(Op::Var); }
ExprPtr make_conj_transpose(ExprPtr e) { return node(Op::ConjTranspose, {std::move(e)}); }
ExprPtr make_ones(ExprPtr e) { return node(Op::Ones, {std::move(e)}); }
ExprPtr make_diag(ExprPtr e) { return node(Op::Diag, {std::move(e)}); }
ExprPtr make_mul(ExprPtr a, ExprPtr b) { return node(Op::Mul, {std::move(a), std::move(b)}); }
ExprPtr make_add(ExprPtr a, ExprPtr b) { return node(Op::Add, {std::move(a), std::move(b)}); }
ExprPtr make_scalar_mul(GaussianRational c, ExprPtr e) {
  return node(Op::ScalarMul, {std::move(e)}, std::move(c));
}
ExprPtr make_trace(ExprPtr e) { return node(Op::Trace, {std::move(e)}); }
ExprPtr make_vprod(ExprPtr a, ExprPtr b) { return node(Op::VProd, {std::move(a), std::move(b)}); }
ExprPtr make_schur(ExprPtr a, ExprPtr b) { return node(Op::Schur, {std::move(a), std::move(b)}); }
ExprPtr make_apply(std::string fn, std::vector<ExprPtr> args) {
  return node(Op::Apply, std::move(args), {}, std::move(fn));
}
ExprPtr make_const(GaussianRational c) {
  return make_scalar_mul(std::move(c), make_ones(make_trace(make_var())));
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.op != b.op || a.children.size() != b.children.size()) return false;
  if (a.op == Op::ScalarMul && a.scalar != b.scalar) return false;
  if (a.op == Op::Apply && a.fn != b.fn) return false;
  for (std::size_t k = 0; k < a.children.size(); ++k)
    if (!expr_equal(*a.children[k], *b.children[k])) return false;
  return true;
}

// --- sorts ---

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::Mat: return "Mat";
    case Sort::Col: return "Col";
    case Sort::Row: return "Row";
    case Sort::Scal: return "Scal";
  }
  return "?";
}

namespace {

[[noreturn]] void sort_fail(const Expr& e, const std::string& detail) {
  throw SortError("ill-sorted node `" + pretty_print(e) + "`: " + detail);
}

}  // namespace

Sort sort_check(const Expr& e) {
  switch (e.op) {
    case Op::Var:
      return Sort::Mat;
    case Op::ConjTranspose: {
      Sort s = sort_check(*e.children[0]);
      if (s == Sort::Col) return Sort::Row;
      if (s == Sort::Row) return Sort::Col;
      return s;
    }
    case Op::Ones: {
      Sort s = sort_check(*e.children[0]);
      if (s == Sort::Mat || s == Sort::Col) return Sort::Col;
      return Sort::Scal;  // Row and Scal both have one row
    }
    case Op::Diag: {
      Sort s = sort_check(*e.children[0]);
      if (s == Sort::Col) return Sort::Mat;
      if (s == Sort::Scal) return Sort::Scal;
      sort_fail(e, "diag expects Col or Scal, got " + sort_name(s));
    }
    case Op::Trace: {
      Sort s = sort_check(*e.children[0]);
      if (s == Sort::Mat || s == Sort::Scal) return Sort::Scal;
      sort_fail(e, "tr expects Mat or Scal, got " + sort_name(s));
    }
    case Op::Mul: {
      Sort a = sort_check(*e.children[0]);
      Sort b = sort_check(*e.children[1]);
      if (a == Sort::Mat && b == Sort::Mat) return Sort::Mat;
      if (a == Sort::Mat && b == Sort::Col) return Sort::Col;
      if (a == Sort::Row && b == Sort::Mat) return Sort::Row;
      if (a == Sort::Row && b == Sort::Col) return Sort::Scal;
      if (a == Sort::Col && b == Sort::Row) return Sort::Mat;
      if (a == Sort::Col && b == Sort::Scal) return Sort::Col;
      if (a == Sort::Scal && b == Sort::Row) return Sort::Row;
      if (a == Sort::Scal && b == Sort::Scal) return Sort::Scal;
      sort_fail(e, "product " + sort_name(a) + " * " + sort_name(b) + " is undefined");
    }
    case Op::Add: {
      Sort a = sort_check(*e.children[0]);
      Sort b = sort_check(*e.children[1]);
      if (a != b) sort_fail(e, "sum of " + sort_name(a) + " and " + sort_name(b));
      return a;
    }
    case Op::ScalarMul:
      return sort_check(*e.children[0]);
    case Op::VProd: {
      Sort a = sort_check(*e.children[0]);
      Sort b = sort_check(*e.children[1]);
      if (a == b && (a == Sort::Col || a == Sort::Scal)) return a;
      sort_fail(e, "pointwise vector product needs two Col (or Scal) operands, got " +
                       sort_name(a) + " and " + sort_name(b));
    }
    case Op::Schur: {
      Sort a = sort_check(*e.children[0]);
      Sort b = sort_check(*e.children[1]);
      if (a == b && (a == Sort::Mat || a == Sort::Scal)) return a;
      sort_fail(e, "Schur product needs two Mat (or Scal) operands, got " + sort_name(a) +
                       " and " + sort_name(b));
    }
    case Op::Apply: {
      auto fn = lookup_pointwise_fn(e.fn);
      if (!fn) sort_fail(e, "unknown pointwise function `" + e.fn + "`");
      if (fn->arity != e.children.size())
        sort_fail(e, "`" + e.fn + "` expects " + std::to_string(fn->arity) + " arguments, got " +
                         std::to_string(e.children.size()));
      Sort s = sort_check(*e.children[0]);
      for (std::size_t k = 1; k < e.children.size(); ++k) {
        Sort sk = sort_check(*e.children[k]);
        if (sk != s)
          sort_fail(e, "apply arguments must share one sort, got " + sort_name(s) + " and " +
                           sort_name(sk));
      }
      return s;
    }
  }
  throw InternalFault("unhandled node kind in sort_check");
}

// --- fragments ---

std::string op_tag_name(OpTag t) {
  switch (t) {
    case OpTag::mul: return "mul";
    case OpTag::tr: return "tr";
    case OpTag::conj: return "conj";
    case OpTag::ones: return "ones";
    case OpTag::diag: return "diag";
    case OpTag::add: return "add";
    case OpTag::smul: return "smul";
    case OpTag::vprod: return "vprod";
    case OpTag::schur: return "schur";
    case OpTag::apply_s: return "apply_s";
    case OpTag::apply_v: return "apply_v";
    case OpTag::apply_m: return "apply_m";
  }
  return "?";
}

Fragment::Fragment(std::set<OpTag> tags) : allowed(std::move(tags)) {
  allowed.insert(OpTag::mul);
}

std::optional<Fragment> fragment_by_name(const std::string& name) {
  using T = OpTag;
  // Every named fragment closes over +, scalar *, and scalar pointwise
  // functions, which never add distinguishing power; conjugate transposition
  // is likewise free wherever listed.
  static const std::map<std::string, Fragment> table = {
      {"mul-tr", Fragment({T::mul, T::tr, T::conj, T::add, T::smul, T::apply_s})},
      {"mul-conj-ones", Fragment({T::mul, T::conj, T::ones, T::add, T::smul, T::apply_s})},
      {"mul-tr-conj-ones",
       Fragment({T::mul, T::tr, T::conj, T::ones, T::add, T::smul, T::apply_s})},
      {"mul-conj-ones-diag", Fragment({T::mul, T::conj, T::ones, T::diag, T::vprod, T::add,
                                       T::smul, T::apply_s, T::apply_v})},
      {"mul-tr-conj-ones-vprod", Fragment({T::mul, T::tr, T::conj, T::ones, T::vprod, T::add,
                                           T::smul, T::apply_s, T::apply_v})},
      {"mul-tr-conj-ones-diag", Fragment({T::mul, T::tr, T::conj, T::ones, T::diag, T::vprod,
                                          T::add, T::smul, T::apply_s, T::apply_v})},
      {"full", Fragment({T::mul, T::tr, T::conj, T::ones, T::diag, T::vprod, T::schur, T::add,
                         T::smul, T::apply_s, T::apply_v, T::apply_m})},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> fragment_names() {
  return {"mul-tr",
          "mul-conj-ones",
          "mul-tr-conj-ones",
          "mul-conj-ones-diag",
          "mul-tr-conj-ones-vprod",
          "mul-tr-conj-ones-diag",
          "full"};
}

namespace {

std::optional<OpTag> node_tag(const Expr& e) {
  switch (e.op) {
    case Op::Var: return std::nullopt;
    case Op::ConjTranspose: return OpTag::conj;
    case Op::Ones: return OpTag::ones;
    case Op::Diag: return OpTag::diag;
    case Op::Mul: return OpTag::mul;
    case Op::Add: return OpTag::add;
    case Op::ScalarMul: return OpTag::smul;
    case Op::Trace: return OpTag::tr;
    case Op::VProd: return OpTag::vprod;
    case Op::Schur: return OpTag::schur;
    case Op::Apply: {
      Sort s = sort_check(*e.children[0]);
      if (s == Sort::Scal) return OpTag::apply_s;
      if (s == Sort::Mat) return OpTag::apply_m;
      return OpTag::apply_v;
    }
  }
  return std::nullopt;
}

void collect_violations(const Expr& e, const Fragment& f, std::vector<std::string>& out) {
  auto tag = node_tag(e);
  if (tag && !f.contains(*tag))
    out.push_back(op_tag_name(*tag) + ": " + pretty_print(e));
  for (const auto& c : e.children) collect_violations(*c, f, out);
}

}  // namespace

FragmentReport fragment_check(const Expr& e, const Fragment& f) {
  FragmentReport report{true, {}};
  collect_violations(e, f, report.violations);
  report.ok = report.violations.empty();
  return report;
}

// --- pointwise catalog ---

std::optional<PointwiseFn> lookup_pointwise_fn(const std::string& name) {
  if (name == "nonzero") {
    return PointwiseFn{
        name, 1, true,
        [](const std::vector<GaussianRational>& a) {
          return a[0].is_zero() ? GaussianRational(0) : GaussianRational(1);
        },
        [](const std::vector<std::complex<double>>& a) {
          return std::abs(a[0]) > 1e-12 ? std::complex<double>(1.0) : std::complex<double>(0.0);
        }};
  }
  if (name == "abs2") {
    return PointwiseFn{name, 1, true,
                       [](const std::vector<GaussianRational>& a) { return a[0] * a[0].conj(); },
                       [](const std::vector<std::complex<double>>& a) {
                         return a[0] * std::conj(a[0]);
                       }};
  }
  if (name == "sqrt") {
    // Principal square root; not closed over the rationals, so float-only.
    return PointwiseFn{name, 1, false, nullptr,
                       [](const std::vector<std::complex<double>>& a) { return std::sqrt(a[0]); }};
  }
  if (name.rfind("const", 0) == 0 && name.size() > 5) {
    try {
      mpz_class k(name.substr(5));
      GaussianRational val{mpq_class(k), mpq_class(0)};
      double d = val.re.get_d();
      return PointwiseFn{
          name, 1, true, [val](const std::vector<GaussianRational>&) { return val; },
          [d](const std::vector<std::complex<double>>&) { return std::complex<double>(d); }};
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  if (name.rfind("affine_", 0) == 0) {
    // affine_<a>_<b>: x -> a*x + b with integer a, b.
    std::size_t sep = name.find('_', 7);
    if (sep == std::string::npos || sep + 1 >= name.size()) return std::nullopt;
    try {
      mpz_class a(name.substr(7, sep - 7));
      mpz_class b(name.substr(sep + 1));
      GaussianRational ga{mpq_class(a), mpq_class(0)}, gb{mpq_class(b), mpq_class(0)};
      double da = ga.re.get_d(), db = gb.re.get_d();
      return PointwiseFn{
          name, 1, true,
          [ga, gb](const std::vector<GaussianRational>& x) { return ga * x[0] + gb; },
          [da, db](const std::vector<std::complex<double>>& x) { return da * x[0] + db; }};
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// --- parser ---

namespace {

struct Token {
  enum Kind { Ident, Int, Plus, Star, DotStar, Quote, Caret, LParen, RParen, Comma, Slash, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::End, "", start};
      return;
    }
    char c = text_[pos_];
    auto single = [&](Token::Kind k) {
      ++pos_;
      current_ = {k, std::string(1, c), start};
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      current_ = {Token::Ident, text_.substr(pos_, end - pos_), start};
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      current_ = {Token::Int, text_.substr(pos_, end - pos_), start};
      pos_ = end;
      return;
    }
    switch (c) {
      case '+': single(Token::Plus); return;
      case '*': single(Token::Star); return;
      case '\'': single(Token::Quote); return;
      case '^': single(Token::Caret); return;
      case '(': single(Token::LParen); return;
      case ')': single(Token::RParen); return;
      case ',': single(Token::Comma); return;
      case '/': single(Token::Slash); return;
      case '.':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
          pos_ += 2;
          current_ = {Token::DotStar, ".*", start};
          return;
        }
        throw SyntaxError("unexpected character '.'", start);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_{Token::End, "", 0};
};

// A parsed factor, remembering whether it is (still) a pure scalar literal
// so that `*` after a literal becomes scalar multiplication.
struct Operand {
  ExprPtr expr;
  std::optional<GaussianRational> literal;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    if (lex_.peek().kind != Token::End)
      throw SyntaxError("unexpected trailing input", lex_.peek().pos);
    return e;
  }

 private:
  ExprPtr parse_expr() {
    ExprPtr e = parse_term().expr;
    while (lex_.peek().kind == Token::Plus) {
      lex_.take();
      e = make_add(e, parse_term().expr);
    }
    return e;
  }

  Operand parse_term() {
    Operand left = parse_factor();
    while (lex_.peek().kind == Token::Star || lex_.peek().kind == Token::DotStar) {
      Token op = lex_.take();
      Operand right = parse_factor();
      if (op.kind == Token::Star) {
        if (left.literal && right.literal) {
          left = make_literal(*left.literal * *right.literal);
        } else if (left.literal) {
          left = {make_scalar_mul(*left.literal, right.expr), std::nullopt};
        } else {
          left = {make_mul(left.expr, right.expr), std::nullopt};
        }
      } else {
        left = {make_pointwise(left.expr, right.expr), std::nullopt};
      }
    }
    return left;
  }

  // `.*` selects VProd or Schur by the operand sort; if the operand does not
  // sort-check yet, default to VProd and let sort_check report the fault.
  static ExprPtr make_pointwise(ExprPtr a, ExprPtr b) {
    try {
      if (sort_check(*a) == Sort::Mat) return make_schur(std::move(a), std::move(b));
    } catch (const SortError&) {
    }
    return make_vprod(std::move(a), std::move(b));
  }

  static Operand make_literal(GaussianRational c) {
    return {make_const(c), c};
  }

  Operand parse_factor() {
    Operand f = parse_atom();
    for (;;) {
      if (lex_.peek().kind == Token::Quote) {
        lex_.take();
        if (f.literal) {
          f = make_literal(f.literal->conj());
        } else {
          f = {make_conj_transpose(f.expr), std::nullopt};
        }
      } else if (lex_.peek().kind == Token::Caret) {
        Token caret = lex_.take();
        Token k = expect(Token::Int, "exponent");
        mpz_class power(k.text);
        if (power < 1) throw SyntaxError("exponent must be a positive integer", caret.pos);
        Operand base = f;
        for (mpz_class step = 1; step < power; ++step) {
          if (f.literal && base.literal) {
            f = make_literal(*f.literal * *base.literal);
          } else {
            f = {make_mul(f.expr, base.expr), std::nullopt};
          }
        }
      } else {
        break;
      }
    }
    return f;
  }

  Operand parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Int: {
        mpz_class num(t.text);
        if (lex_.peek().kind == Token::Slash) {
          lex_.take();
          Token den = expect(Token::Int, "denominator");
          mpz_class d(den.text);
          if (d == 0) throw SyntaxError("zero denominator", den.pos);
          mpq_class q(num, d);
          q.canonicalize();
          return make_literal(GaussianRational{q, mpq_class(0)});
        }
        return make_literal(GaussianRational{mpq_class(num), mpq_class(0)});
      }
      case Token::Ident: {
        if (t.text == "X") return {make_var(), std::nullopt};
        if (t.text == "i") return make_literal(GaussianRational::imaginary_unit());
        if (t.text == "ones" || t.text == "diag" || t.text == "tr") {
          expect(Token::LParen, "'('");
          ExprPtr inner = parse_expr();
          expect(Token::RParen, "')'");
          if (t.text == "ones") return {make_ones(inner), std::nullopt};
          if (t.text == "diag") return {make_diag(inner), std::nullopt};
          return {make_trace(inner), std::nullopt};
        }
        if (t.text == "apply") {
          expect(Token::LParen, "'('");
          Token fn = expect(Token::Ident, "function name");
          std::vector<ExprPtr> args;
          while (lex_.peek().kind == Token::Comma) {
            lex_.take();
            args.push_back(parse_expr());
          }
          expect(Token::RParen, "')'");
          if (args.empty()) throw SyntaxError("apply needs at least one argument", t.pos);
          return {make_apply(fn.text, std::move(args)), std::nullopt};
        }
        throw SyntaxError("unknown identifier `" + t.text + "`", t.pos);
      }
      case Token::LParen: {
        ExprPtr inner = parse_expr();
        expect(Token::RParen, "')'");
        return {inner, std::nullopt};
      }
      default:
        throw SyntaxError("expected an expression", t.pos);
    }
  }

  Token expect(Token::Kind kind, const std::string& what) {
    if (lex_.peek().kind != kind) throw SyntaxError("expected " + what, lex_.peek().pos);
    return lex_.take();
  }

  Lexer lex_;
};

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).parse_all(); }

// --- pretty printer ---

namespace {

// Precedence levels: Add = 1; Mul/ScalarMul/VProd/Schur = 2; postfix = 3;
// atoms = 4. A child is parenthesized when its level is below the context.
int precedence(const Expr& e) {
  switch (e.op) {
    case Op::Add: return 1;
    case Op::Mul:
    case Op::ScalarMul:
    case Op::VProd:
    case Op::Schur: return 2;
    case Op::ConjTranspose: return 3;
    default: return 4;
  }
}

std::string scalar_literal(const GaussianRational& c) {
  if (c.im == 0) return rational_to_string(c.re);
  if (c.re == 0) {
    if (c.im == 1) return "i";
    return rational_to_string(c.im) + " * i";
  }
  return {};  // mixed: handled by the caller via an Add decomposition
}

std::string print(const Expr& e, int context);

std::string print_child(const Expr& e, int context) {
  if (precedence(e) < context) return "(" + print(e, 1) + ")";
  return print(e, context);
}

std::string print(const Expr& e, int context) {
  switch (e.op) {
    case Op::Var:
      return "X";
    case Op::ConjTranspose:
      return print_child(*e.children[0], 3) + "'";
    case Op::Ones:
      return "ones(" + print(*e.children[0], 1) + ")";
    case Op::Diag:
      return "diag(" + print(*e.children[0], 1) + ")";
    case Op::Trace:
      return "tr(" + print(*e.children[0], 1) + ")";
    case Op::Mul:
      return print_child(*e.children[0], 2) + " * " + print_child(*e.children[1], 3);
    case Op::Add:
      return print_child(*e.children[0], 1) + " + " + print_child(*e.children[1], 2);
    case Op::VProd:
    case Op::Schur:
      return print_child(*e.children[0], 2) + " .* " + print_child(*e.children[1], 3);
    case Op::ScalarMul: {
      std::string lit = scalar_literal(e.scalar);
      if (lit.empty()) {
        // A coefficient with nonzero real and imaginary part has no single
        // literal in the grammar; print the equivalent two-term sum.
        ExprPtr re_part = make_scalar_mul({e.scalar.re, mpq_class(0)}, e.children[0]);
        ExprPtr im_part = make_scalar_mul({mpq_class(0), e.scalar.im}, e.children[0]);
        return print(*make_add(re_part, im_part), context);
      }
      return lit + " * " + print_child(*e.children[0], 3);
    }
    case Op::Apply: {
      std::string out = "apply(" + e.fn;
      for (const auto& arg : e.children) out += ", " + print(*arg, 1);
      return out + ")";
    }
  }
  throw InternalFault("unhandled node kind in pretty_print");
}

}  // namespace

std::string pretty_print(const Expr& e) { return print(e, 1); }

}  // namespace matlang
