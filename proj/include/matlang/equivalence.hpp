#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matlang/expr.hpp"
#include "matlang/graph.hpp"
#include "matlang/matrix.hpp"
#include "matlang/partitions.hpp"
#include "matlang/synth.hpp"

namespace matlang {

// Language fragments ordered by distinguishing power. MulTr and MulConjOnes
// are incomparable; both sit below MulTrConjOnes; MulConjOnesDiag sits below
// MulTrConjOnesVprod, which sits below MulTrConjOnesDiag, below FullMatlang.
enum class FragmentId {
  MulTr,               // mul-tr:                cospectrality
  MulConjOnes,         // mul-conj-ones:         equal walk counts
  MulTrConjOnes,       // mul-tr-conj-ones:      cospectral and co-main
  MulConjOnesDiag,     // mul-conj-ones-diag:    common equitable partition
  MulTrConjOnesVprod,  // mul-tr-conj-ones-vprod: cospectral + common eq. part.
  MulTrConjOnesDiag,   // mul-tr-conj-ones-diag: trace-word identities (semi)
  FullMatlang,         // full:                  2WL stable-colouring equality
};

std::string fragment_id_name(FragmentId f);  // the CLI fragment name
std::optional<FragmentId> fragment_id_by_name(const std::string& name);
Fragment fragment_of(FragmentId f);
std::vector<FragmentId> all_fragment_ids();
// Immediate predecessors in the distinguishing-power order.
std::vector<FragmentId> weaker_than(FragmentId f);

enum class Verdict { Equivalent, Distinguished, Undecided };
std::string verdict_name(Verdict v);

struct FragmentVerdict {
  Verdict verdict = Verdict::Undecided;
  ExprPtr sentence;            // set when Distinguished: evaluates unequally
  std::size_t word_bound = 0;  // set when Undecided: the exhausted word bound
};

struct EquivalenceProfile {
  std::map<FragmentId, FragmentVerdict> rows;
};

// --- conjugacy witnesses ---

enum class WitnessClass {
  Orthogonal,
  DoublyStochastic,
  DoublyQuasiStochastic,
  OrthogonalDqs,
  OrthogonalCompatible,
  OrthogonalPartitionPreserving,
};

std::string witness_class_name(WitnessClass c);

struct ConjugacyWitness {
  WitnessClass witness_class;
  // Exactly one of these is set: exact rational witnesses verify with zero
  // tolerance, floating witnesses within a residual bound.
  std::optional<ExactMatrix> exact;
  std::optional<FloatMatrix> floating;
  std::map<std::string, double> residuals;
  // Matched partitions, when the class predicate refers to them.
  std::optional<CommonEquitablePartition> partitions;
};

// Checks the class predicates (row/column sums, nonnegativity, T^T*T = I,
// compatibility, partition preservation) and the conjugation equation
// A_g * T = T * A_h; exact witnesses are checked exactly, floating ones
// within tol.
bool validate_witness(const ConjugacyWitness& w, const ExactMatrix& ag, const ExactMatrix& ah,
                      double tol);

// --- spectral invariants ---

// [tr(A^k)] for k = 1..kmax: closed-walk counts.
std::vector<mpz_class> trace_power_vector(const Graph& g, std::size_t kmax);

// Equal traces for k = 1..n; cross-checked against characteristic-polynomial
// equality (Newton's identities make the two equivalent).
bool cospectral(const Graph& g, const Graph& h);

// [1^T * A^k * 1] for k = 0..kmax: walk counts.
std::vector<mpz_class> walk_count_vector(const Graph& g, std::size_t kmax);

// Equal walk counts for k = 0..2n-1 (two exponential polynomials with at
// most 2n distinct frequencies agreeing on 2n samples agree everywhere).
bool same_walks(const Graph& g, const Graph& h);

// cospectral and co-main; cross-checked against cospectrality of the
// complement graphs.
bool cospectral_comain(const Graph& g, const Graph& h);

// If the graphs have a common equitable partition, the exact doubly
// stochastic block witness S with entries 1/|V_i| on matched parts, verified
// to satisfy A_g * S = S * A_h and the compatibility equations exactly.
std::optional<ConjugacyWitness> fractional_isomorphism_witness(const Graph& g, const Graph& h);

bool cospectral_plus_cep(const Graph& g, const Graph& h);

// Orthogonal witness O = sum_i (1/n_i) * 1_{V_i} * 1_{W_i}^T plus paired
// eigenvectors orthogonal to the indicator spans, matched by eigenvalue
// cluster. Verified within tol: O^T*O = I, A_g*O = O*A_h, and exact partition
// preservation after rounding. Throws PreconditionFailed unless the graphs
// are cospectral with a common equitable partition; EigenvaluePairingFailure
// when the complement-space spectra cannot be matched numerically.
std::optional<ConjugacyWitness> orthogonal_partition_witness(const Graph& g, const Graph& h,
                                                             double tol = 1e-8);

// --- trace-word semi-decider ---

// Alphabet letter codes: 0 = adjacency matrix, 1 = all-ones matrix J,
// 2+i = diag(1_{V_i}) over the paired common equitable partition.
struct SpechtVerdict {
  bool distinguished = false;
  std::vector<std::size_t> word;  // letter codes; empty when no common partition exists
  std::size_t bound = 0;          // exhausted exhaustive bound when not distinguished
  mpz_class value_g, value_h;     // word traces when distinguished by a word
};

// Exhausts all words up to word_bound (traces are rotation-invariant, so only
// minimal rotations are evaluated), then tries `samples` random words of
// length up to 12, exactly. A word with unequal traces distinguishes the
// graphs in the mul-tr-conj-ones-diag fragment; finding none is a
// semi-decision reported as EquivalentUpToBound.
SpechtVerdict specht_semidecider(const Graph& g, const Graph& h, std::size_t word_bound,
                                 std::size_t samples, std::uint64_t seed = 1);

// --- Laplacian invariants ---

struct LaplacianInvariants {
  std::vector<mpz_class> trace_powers;  // tr(L^k), k = 1..n
  mpz_class spanning_trees;             // matrix-tree cofactor
};

LaplacianInvariants laplacian_invariants(const Graph& g);

// The sentence counting vertices of degree d, valid on graphs of maximum
// degree at most max_degree (Lagrange extraction of the value d from the
// degree vector X * 1).
ExprPtr degree_count_sentence(std::size_t d, std::size_t max_degree,
                              EqpartForm form = EqpartForm::Diag);

// --- classification ---

struct ClassifyConfig {
  std::size_t word_bound = 6;
  std::size_t samples = 200;
  double tol = 1e-8;
  std::uint64_t seed = 1;
};

// Full per-fragment profile. Every Distinguished row carries a sentence in
// that fragment evaluating to unequal scalars (verified); verdicts respect
// the fragment order (Distinguished at a weaker fragment forces Distinguished
// at every stronger one).
EquivalenceProfile classify(const Graph& g, const Graph& h, const ClassifyConfig& config = {});

// A sentence in fragment f with evaluate(e, A_g) != evaluate(e, A_h), drawn
// from the fixed library (closed-walk counts, walk counts, degree
// extractors, partition checking sentences, Laplacian traces, triangle-path
// counts) and falling back to input-dependent synthesis. Throws
// NotDistinguishable when the fragment's decider reports equivalence;
// returns nullopt when the semi-decider is undecided.
std::optional<ExprPtr> distinguishing_sentence(const Graph& g, const Graph& h, FragmentId f,
                                               const ClassifyConfig& config = {});

}  // namespace matlang
