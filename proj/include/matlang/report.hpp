#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "matlang/corpus.hpp"
#include "matlang/equivalence.hpp"

namespace matlang {

inline constexpr const char* kToolVersion = "matlang 0.1.0";

// Doubles rendered with 17 significant digits (lossless for IEEE doubles).
std::string format_float(double x);

// Lossless serialization: rationals as "p" / "p/q" strings, Gaussian values
// with a nonzero imaginary part as {"re", "im"} objects, floating-point
// values as 17-significant-digit strings.
nlohmann::json json_of(const GaussianRational& v);
nlohmann::json json_of(const ExactMatrix& m);
nlohmann::json json_of(const FloatMatrix& m);
nlohmann::json json_of(const ConjugacyWitness& w);
nlohmann::json json_of(const EquivalenceProfile& p);

// Human-readable rendering of a floating-point matrix (exact matrices print
// through ExactMatrix::to_string).
std::string format_float_matrix(const FloatMatrix& m);

// Full classification report: tool version, inputs (graph6 and order),
// configuration, per-fragment rows with pretty-printed sentences, available
// conjugacy witnesses, and a separate "timings" field (the only part allowed
// to vary between identically-configured runs).
nlohmann::json classify_report(const Graph& g, const Graph& h, const EquivalenceProfile& profile,
                               const ClassifyConfig& config, double elapsed_seconds);

// One corpus entry checked against its expectations: classify output versus
// the expected rows, the stored conjugacy witness, and the graph6 round
// trip. `mismatches` is empty iff the entry verifies.
struct CorpusVerification {
  std::string entry;
  std::string provenance;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

CorpusVerification verify_corpus_entry(const CorpusEntry& entry,
                                       const ClassifyConfig& config = {});
nlohmann::json json_of(const std::vector<CorpusVerification>& results);

}  // namespace matlang
