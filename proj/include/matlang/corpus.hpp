#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "matlang/equivalence.hpp"
#include "matlang/graph.hpp"
#include "matlang/matrix.hpp"

namespace matlang {

struct ExpectedRow {
  FragmentId fragment;
  Verdict verdict;
};

// A named landmark pair of graphs together with the per-fragment verdicts it
// is guaranteed to produce under classify() with the default configuration.
struct CorpusEntry {
  std::string name;
  Graph g, h;
  // "explicit":    adjacency data stored verbatim;
  // "constructed": built deterministically from named generators;
  // "recovered":   first pair found by the entry's deterministic search;
  // "stand-in":    found by a seeded randomized search against the oracle.
  std::string provenance;
  // Human-readable statement of the predicate the pair is verified against.
  std::string recovery_oracle;
  // Rows omitted here (the trace-word semi-decider at its default budget on
  // some entries) are budget-dependent and carry no guarantee.
  std::vector<ExpectedRow> expected_rows;
  // Stored doubly stochastic conjugacy matrix, when the entry ships one.
  std::optional<ExactMatrix> conjugacy;
};

// Search effort: the number of candidate graphs (exhaustive searches) or
// switching attempts (randomized searches) an entry's recovery may examine.
// 0 forbids searching; entries that need a search then raise RecoveryFailure.
inline constexpr std::size_t kDefaultRecoveryBudget = 4'000'000;

std::vector<std::string> corpus_entry_names();

// Throws RecoveryFailure (naming the entry) when a search exhausts the
// budget; a stored entry failing its own verification is an InternalFault.
CorpusEntry load_corpus_entry(const std::string& name,
                              std::size_t budget = kDefaultRecoveryBudget);
std::vector<CorpusEntry> load_corpus(std::size_t budget = kDefaultRecoveryBudget);

}  // namespace matlang
