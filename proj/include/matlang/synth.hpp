#pragma once

#include <optional>
#include <vector>

#include "matlang/expr.hpp"
#include "matlang/graph.hpp"
#include "matlang/partitions.hpp"

namespace matlang {

// The two syntactic shapes of the synthesized indicator expressions: the
// diag form stays inside {mul, conj, ones, diag, add, smul}; the vprod form
// replaces the diagonal chains with pointwise vector products and stays
// inside {mul, conj, ones, vprod, add, smul}.
enum class EqpartForm { Diag, Vprod };

// Expressions e_1..e_l such that evaluate(e_i, A_g) equals the indicator
// vector of part i of the coarsest equitable partition of g, in the
// partition's canonical part order. Verified exactly against the partition
// before returning.
std::vector<ExprPtr> synthesize_eqpart_exprs(const Graph& g, EqpartForm form = EqpartForm::Diag);

// Joint variant: when g and h have a common equitable partition, the same
// expressions evaluate on A_g and A_h to the paired indicator vectors
// (ordered like the paired certificates). Returns nullopt when no common
// equitable partition exists.
std::optional<std::vector<ExprPtr>> synthesize_common_eqpart_exprs(
    const Graph& g, const Graph& h, EqpartForm form = EqpartForm::Diag);

// Checking sentences for a synthesized indicator family: part sizes, 0/1-ness
// (zero test on e_i .* e_i - e_i), partition of the ones vector, and the
// equitability residuals e_i .* (X * e_j) - quotient(i,j) * e_i. On the
// source graph every sentence reproduces the certificate's numbers; on any
// graph with no common equitable partition with the source, at least one
// sentence evaluates differently.
std::vector<ExprPtr> eqpart_checking_sentences(const std::vector<ExprPtr>& eqpart,
                                               const EquitableCertificate& cert);

// Expressions whose evaluation on A_g reproduces the stable edge partition's
// indicator matrices, in colour order. Built by iterated value extraction
// (entrywise Lagrange interpolation) from products of previously synthesized
// class matrices; verified exactly against stable_edge_partition(g).
std::vector<ExprPtr> synthesize_stabcol_exprs(const Graph& g);

// Joint variant over the synchronized refinement of both graphs: the same
// expressions evaluate on each adjacency matrix to that graph's class
// matrices (a class missing from one graph evaluates to the zero matrix).
// Defined for every pair of equal order, including 2WL-inequivalent ones.
std::vector<ExprPtr> synthesize_joint_stabcol_exprs(const Graph& g, const Graph& h);

}  // namespace matlang
