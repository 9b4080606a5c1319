#pragma once

#include <utility>
#include <vector>

#include "matlang/expr.hpp"
#include "matlang/matrix.hpp"

namespace matlang {

// Evaluates a sort-checked expression on a square matrix, exactly. Throws
// EvalModeError if the expression applies a pointwise function that is not
// closed over the Gaussian rationals.
ExactMatrix evaluate(const Expr& e, const ExactMatrix& a);

// Floating-point evaluation (admits the full pointwise catalog).
FloatMatrix evaluate_float(const Expr& e, const FloatMatrix& a);

// Exact evaluation with subterm sharing: each distinct node of the
// expression DAG is evaluated once. Synthesized indicator expressions reuse
// subtrees heavily, making the plain recursive evaluator exponential on
// them; results are identical to evaluate().
ExactMatrix evaluate_shared(const Expr& e, const ExactMatrix& a);

// A formal linear combination of expressions.
using LinearCombination = std::vector<std::pair<GaussianRational, ExprPtr>>;

// Rewrites e as sum_i a_i * e_i with every e_i free of Add/ScalarMul nodes
// (Apply nodes are kept atomic: pointwise functions are not linear, so their
// arguments are normalized recursively and re-materialized in place). The
// combination evaluates to the same value as e on every input.
LinearCombination normalize_linear(const Expr& e);

// Re-materializes a combination as a single expression (Add/ScalarMul tree).
ExprPtr expr_from_combination(const LinearCombination& terms);

}  // namespace matlang
