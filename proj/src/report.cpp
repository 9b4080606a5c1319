#include "matlang/report.hpp"

#include <cstdio>

#include "matlang/expr.hpp"

namespace matlang {

namespace {

std::string rational_string(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  std::string s = c.get_num().get_str();
  if (c.get_den() != 1) s += "/" + c.get_den().get_str();
  return s;
}

}  // namespace

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json json_of(const GaussianRational& v) {
  if (v.im == 0) return rational_string(v.re);
  return {{"re", rational_string(v.re)}, {"im", rational_string(v.im)}};
}

nlohmann::json json_of(const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_of(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"kind", "exact"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

nlohmann::json json_of(const FloatMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& v = m.at(i, j);
      if (v.imag() == 0.0)
        row.push_back(format_float(v.real()));
      else
        row.push_back(
            nlohmann::json{{"re", format_float(v.real())}, {"im", format_float(v.imag())}});
    }
    rows.push_back(std::move(row));
  }
  return {{"kind", "float"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

nlohmann::json json_of(const ConjugacyWitness& w) {
  nlohmann::json j{{"class", witness_class_name(w.witness_class)}};
  if (w.exact) j["matrix"] = json_of(*w.exact);
  if (w.floating) j["matrix"] = json_of(*w.floating);
  nlohmann::json residuals = nlohmann::json::object();
  for (const auto& [name, value] : w.residuals) residuals[name] = format_float(value);
  j["residuals"] = std::move(residuals);
  if (w.partitions) {
    nlohmann::json parts = nlohmann::json::array();
    const auto& cep = *w.partitions;
    for (std::size_t i = 0; i < cep.g_cert.partition.parts.size(); ++i)
      parts.push_back({{"g", cep.g_cert.partition.parts[i]}, {"h", cep.h_cert.partition.parts[i]}});
    j["matched_parts"] = std::move(parts);
  }
  return j;
}

nlohmann::json json_of(const EquivalenceProfile& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [fragment, row] : p.rows) {
    nlohmann::json r{{"fragment", fragment_id_name(fragment)},
                     {"verdict", verdict_name(row.verdict)}};
    if (row.sentence) r["sentence"] = pretty_print(*row.sentence);
    if (row.verdict == Verdict::Undecided) r["word_bound"] = row.word_bound;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string format_float_matrix(const FloatMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& v = m.at(i, j);
      if (j) out += "  ";
      out += format_float(v.real());
      if (v.imag() != 0.0) out += (v.imag() > 0 ? "+" : "") + format_float(v.imag()) + "i";
    }
    out += "\n";
  }
  return out;
}

nlohmann::json classify_report(const Graph& g, const Graph& h, const EquivalenceProfile& profile,
                               const ClassifyConfig& config, double elapsed_seconds) {
  nlohmann::json j;
  j["version"] = kToolVersion;
  j["inputs"] = {{"g", {{"order", g.order()}, {"graph6", encode_graph6(g)}}},
                 {"h", {{"order", h.order()}, {"graph6", encode_graph6(h)}}}};
  j["config"] = {{"word_bound", config.word_bound},
                 {"samples", config.samples},
                 {"seed", config.seed},
                 {"tol", format_float(config.tol)}};
  j["profile"] = json_of(profile);
  nlohmann::json witnesses = nlohmann::json::object();
  if (auto w = fractional_isomorphism_witness(g, h)) witnesses["fractional"] = json_of(*w);
  if (cospectral_plus_cep(g, h)) {
    try {
      if (auto w = orthogonal_partition_witness(g, h, config.tol))
        witnesses["orthogonal"] = json_of(*w);
    } catch (const EigenvaluePairingFailure&) {
      witnesses["orthogonal"] = {{"error", "eigenvalue pairing failed"}};
    }
  }
  j["witnesses"] = std::move(witnesses);
  j["timings"] = {{"total_seconds", elapsed_seconds}};
  return j;
}

CorpusVerification verify_corpus_entry(const CorpusEntry& entry, const ClassifyConfig& config) {
  CorpusVerification result{entry.name, entry.provenance, {}};
  if (entry.g.order() != entry.h.order()) {
    result.mismatches.push_back("orders differ");
    return result;
  }
  if (parse_graph6(encode_graph6(entry.g)) != entry.g ||
      parse_graph6(encode_graph6(entry.h)) != entry.h)
    result.mismatches.push_back("graph6 round trip failed");
  if (entry.conjugacy) {
    ConjugacyWitness w{WitnessClass::DoublyStochastic, *entry.conjugacy, std::nullopt, {},
                       std::nullopt};
    if (!validate_witness(w, entry.g.adjacency(), entry.h.adjacency(), 0.0))
      result.mismatches.push_back("stored conjugacy witness failed validation");
  }
  EquivalenceProfile profile = classify(entry.g, entry.h, config);
  for (const auto& row : entry.expected_rows) {
    auto it = profile.rows.find(row.fragment);
    if (it == profile.rows.end()) {
      result.mismatches.push_back("no verdict for " + fragment_id_name(row.fragment));
      continue;
    }
    if (it->second.verdict != row.verdict)
      result.mismatches.push_back(fragment_id_name(row.fragment) + ": expected " +
                                  verdict_name(row.verdict) + ", got " +
                                  verdict_name(it->second.verdict));
  }
  return result;
}

nlohmann::json json_of(const std::vector<CorpusVerification>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json e{{"entry", r.entry}, {"provenance", r.provenance}, {"ok", r.ok()}};
    e["mismatches"] = r.mismatches;
    j.push_back(std::move(e));
  }
  return j;
}

}  // namespace matlang
