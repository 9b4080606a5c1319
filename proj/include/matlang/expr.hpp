#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matlang/matrix.hpp"

namespace matlang {

// --- Abstract syntax ---

enum class Op {
  Var,            // the single matrix variable X
  ConjTranspose,  // e'
  Ones,           // ones(e): all-ones column with as many rows as e
  Diag,           // diag(v): diagonal matrix from a column vector
  Mul,            // e1 * e2
  Add,            // e1 + e2
  ScalarMul,      // c * e
  Trace,          // tr(e)
  VProd,          // v1 .* v2 on column vectors
  Schur,          // m1 .* m2 on square matrices
  Apply,          // apply(f, e1, ..., ep) pointwise
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Op op;
  std::vector<ExprPtr> children;
  GaussianRational scalar;  // ScalarMul coefficient
  std::string fn;           // Apply function name
};

// Builders.
ExprPtr make_var();
ExprPtr make_conj_transpose(ExprPtr e);
ExprPtr make_ones(ExprPtr e);
ExprPtr make_diag(ExprPtr e);
ExprPtr make_mul(ExprPtr a, ExprPtr b);
ExprPtr make_add(ExprPtr a, ExprPtr b);
ExprPtr make_scalar_mul(GaussianRational c, ExprPtr e);
ExprPtr make_trace(ExprPtr e);
ExprPtr make_vprod(ExprPtr a, ExprPtr b);
ExprPtr make_schur(ExprPtr a, ExprPtr b);
ExprPtr make_apply(std::string fn, std::vector<ExprPtr> args);
// The constant scalar c, encoded with the core node kinds as
// c * ones(tr(X)) (ones of a scalar is the 1x1 all-ones matrix).
ExprPtr make_const(GaussianRational c);

bool expr_equal(const Expr& a, const Expr& b);

// --- Sorts ---

// Sorts abstract dimensions relative to the (square) input: Mat is
// alpha x alpha, Col is alpha x 1, Row is 1 x alpha, Scal is 1 x 1.
enum class Sort { Mat, Col, Row, Scal };

std::string sort_name(Sort s);

// Returns the unique sort of e, or throws SortError naming the offending
// node and the expected/actual child sorts.
Sort sort_check(const Expr& e);

// --- Fragments ---

enum class OpTag {
  mul,
  tr,
  conj,
  ones,
  diag,
  add,
  smul,
  vprod,
  schur,
  apply_s,
  apply_v,
  apply_m,
};

std::string op_tag_name(OpTag t);

struct Fragment {
  std::set<OpTag> allowed;  // always contains mul

  Fragment() : allowed{OpTag::mul} {}
  explicit Fragment(std::set<OpTag> tags);

  bool contains(OpTag t) const { return allowed.count(t) > 0; }
};

// Named fragments by CLI name (mul-tr, mul-conj-ones, mul-tr-conj-ones,
// mul-conj-ones-diag, mul-tr-conj-ones-vprod, mul-tr-conj-ones-diag, full).
// Each named fragment also admits the operations that provably do not add
// distinguishing power to it (+, scalar *, scalar pointwise functions, and
// conjugate transposition where harmless).
std::optional<Fragment> fragment_by_name(const std::string& name);
std::vector<std::string> fragment_names();

struct FragmentReport {
  bool ok;
  // Pretty-printed offending nodes with their tags.
  std::vector<std::string> violations;
};

// Accepts iff every node's operation tag lies in f.allowed; Apply nodes are
// classified as apply_s / apply_v / apply_m by the sort of their arguments.
// Requires e to sort-check. Throws nothing; returns the report.
FragmentReport fragment_check(const Expr& e, const Fragment& f);

// --- Pointwise function catalog ---

// All catalog functions are total on the complex numbers (a requirement of
// this catalog, noted here: partial functions are not admitted).
struct PointwiseFn {
  std::string name;
  std::size_t arity;
  bool exact;  // closed over Gaussian rationals; if false, float mode only
  std::function<GaussianRational(const std::vector<GaussianRational>&)> exact_fn;
  std::function<std::complex<double>(const std::vector<std::complex<double>>&)> float_fn;
};

// Recognized names: "nonzero" (1 if x != 0 else 0), "abs2" (x * conj x),
// "const<k>" (constant integer k, e.g. const0, const1), "affine_<a>_<b>"
// (x -> a*x + b with integer a, b), and "sqrt" (principal square root;
// not exact-evaluable). Returns nullopt for unknown names.
std::optional<PointwiseFn> lookup_pointwise_fn(const std::string& name);

// --- Concrete syntax ---

// Grammar:
//   expr   := term { "+" term }
//   term   := factor { ("*" | ".*") factor }
//   factor := atom { "'" | "^" int }
//   atom   := "X" | scalar | "ones(" expr ")" | "diag(" expr ")"
//           | "tr(" expr ")" | "apply(" ident { "," expr } ")" | "(" expr ")"
//   scalar := int | int "/" int | "i"
// "*" after a scalar literal is scalar multiplication; "^" k is sugar for a
// k-fold left-associated product. Whitespace-insensitive.
ExprPtr parse(const std::string& text);

// Inverse of parse up to the documented normalizations: the printed form
// re-parses to an identical tree.
std::string pretty_print(const Expr& e);

}  // namespace matlang
