// matlang: command-line front end for the matrix query language toolkit.
//
// Exit codes: 0 success, 1 unexpected error, 2 syntax/format error, 3 sort
// error, 4 fragment violation, 5 evaluation-mode error, 6 order mismatch,
// 7 corpus verification mismatch, 8 recovery failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "matlang/corpus.hpp"
#include "matlang/equivalence.hpp"
#include "matlang/eval.hpp"
#include "matlang/expr.hpp"
#include "matlang/report.hpp"
#include "matlang/synth.hpp"

namespace {

constexpr int kExitSyntax = 2;
constexpr int kExitSort = 3;
constexpr int kExitFragment = 4;
constexpr int kExitEvalMode = 5;
constexpr int kExitOrder = 6;
constexpr int kExitCorpus = 7;
constexpr int kExitRecovery = 8;

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw matlang::Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw matlang::Error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct EvalArgs {
  std::string expr_text, expr_file, graph_path, fragment, mode = "exact", json_path;
};

int cmd_eval(const EvalArgs& args) {
  using namespace matlang;
  std::string text = args.expr_text;
  if (text.empty()) text = read_file(args.expr_file);
  ExprPtr e = parse(text);
  Sort sort = sort_check(*e);
  if (!args.fragment.empty()) {
    auto fragment = fragment_by_name(args.fragment);
    if (!fragment) throw Error("unknown fragment '" + args.fragment + "'");
    FragmentReport gate = fragment_check(*e, *fragment);
    if (!gate.ok) {
      std::cerr << "fragment violation:";
      for (const auto& v : gate.violations) std::cerr << "\n  " << v;
      std::cerr << "\n";
      return kExitFragment;
    }
  }
  Graph g = load_graph_file(args.graph_path);
  nlohmann::json value;
  if (args.mode == "exact") {
    ExactMatrix result = evaluate_shared(*e, g.adjacency());
    std::string text_out = result.to_string();
    if (text_out.empty() || text_out.back() != '\n') text_out += '\n';
    std::cout << text_out;
    value = json_of(result);
  } else if (args.mode == "float") {
    FloatMatrix result = evaluate_float(*e, FloatMatrix::from_exact(g.adjacency()));
    std::cout << format_float_matrix(result);
    value = json_of(result);
  } else {
    throw EvalModeError("unknown mode '" + args.mode + "'");
  }
  if (!args.json_path.empty())
    write_json(args.json_path, {{"version", kToolVersion},
                                {"expression", pretty_print(*e)},
                                {"sort", sort_name(sort)},
                                {"mode", args.mode},
                                {"input", {{"order", g.order()}, {"graph6", encode_graph6(g)}}},
                                {"value", value}});
  return 0;
}

struct ClassifyArgs {
  std::string graph_a, graph_b, json_path;
  matlang::ClassifyConfig config;
};

int cmd_classify(const ClassifyArgs& args) {
  using namespace matlang;
  Graph g = load_graph_file(args.graph_a);
  Graph h = load_graph_file(args.graph_b);
  auto t0 = std::chrono::steady_clock::now();
  EquivalenceProfile profile = classify(g, h, args.config);
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& [fragment, row] : profile.rows) {
    std::cout << fragment_id_name(fragment) << ": " << verdict_name(row.verdict);
    if (row.sentence) std::cout << "  [" << pretty_print(*row.sentence) << "]";
    if (row.verdict == Verdict::Undecided)
      std::cout << "  (words exhausted up to length " << row.word_bound << ")";
    std::cout << "\n";
  }
  if (!args.json_path.empty())
    write_json(args.json_path, classify_report(g, h, profile, args.config, elapsed));
  return 0;
}

struct CorpusArgs {
  bool verify = false;
  std::size_t budget = matlang::kDefaultRecoveryBudget;
  std::string dir, json_path;
  matlang::ClassifyConfig config;
};

int cmd_corpus(const CorpusArgs& args) {
  using namespace matlang;
  namespace fs = std::filesystem;
  std::vector<CorpusEntry> entries = load_corpus(args.budget);
  if (!args.dir.empty()) {
    // Export missing graph files; load the pair back from files that exist,
    // so tampered files are caught by verification below.
    fs::create_directories(args.dir);
    for (auto& entry : entries) {
      for (auto [graph, suffix] : {std::pair<Graph*, const char*>{&entry.g, ".g.g6"},
                                   std::pair<Graph*, const char*>{&entry.h, ".h.g6"}}) {
        fs::path path = fs::path(args.dir) / (entry.name + suffix);
        if (fs::exists(path)) {
          try {
            *graph = parse_graph6(read_file(path.string()));
          } catch (const Error& err) {
            std::cerr << entry.name << ": unreadable corpus file " << path << ": " << err.what()
                      << "\n";
            return kExitCorpus;
          }
        } else {
          std::ofstream out(path);
          out << encode_graph6(*graph);
        }
      }
    }
  }
  if (!args.verify) {
    for (const auto& e : entries)
      std::cout << e.name << "  order " << e.g.order() << "  " << e.provenance << "  ["
                << e.recovery_oracle << "]\n";
    return 0;
  }
  std::vector<CorpusVerification> results;
  bool all_ok = true;
  for (const auto& e : entries) {
    results.push_back(verify_corpus_entry(e, args.config));
    const auto& r = results.back();
    std::cout << r.entry << "  " << (r.ok() ? "pass" : "FAIL");
    for (const auto& m : r.mismatches) std::cout << "\n    " << m;
    std::cout << "\n";
    all_ok = all_ok && r.ok();
  }
  if (!args.json_path.empty())
    write_json(args.json_path, {{"version", matlang::kToolVersion}, {"results", json_of(results)}});
  return all_ok ? 0 : kExitCorpus;
}

struct SynthArgs {
  std::string graph_path, kind = "eqpart";
};

int cmd_synth(const SynthArgs& args) {
  using namespace matlang;
  Graph g = load_graph_file(args.graph_path);
  std::vector<ExprPtr> exprs = args.kind == "stabcol"
                                   ? synthesize_stabcol_exprs(g)
                                   : synthesize_eqpart_exprs(g);
  for (const auto& e : exprs) std::cout << pretty_print(*e) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix query language toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(matlang::kToolVersion));

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "evaluate an expression on a graph");
  eval->add_option("-e,--expr", eval_args.expr_text, "expression text");
  eval->add_option("--expr-file", eval_args.expr_file, "file containing the expression");
  eval->add_option("graph", eval_args.graph_path, "graph file (.g6 or .json)")->required();
  eval->add_option("--fragment", eval_args.fragment, "fragment gate to enforce");
  eval->add_option("--mode", eval_args.mode, "exact or float");
  eval->add_option("--json", eval_args.json_path, "write a JSON report here");

  ClassifyArgs classify_args;
  CLI::App* classify = app.add_subcommand("classify", "per-fragment equivalence profile");
  classify->add_option("graph-a", classify_args.graph_a, "first graph file")->required();
  classify->add_option("graph-b", classify_args.graph_b, "second graph file")->required();
  classify->add_option("--json", classify_args.json_path, "write a JSON report here");
  classify->add_option("--seed", classify_args.config.seed, "random seed");
  classify->add_option("--word-bound", classify_args.config.word_bound,
                       "exhaustive trace-word bound");
  classify->add_option("--samples", classify_args.config.samples, "random trace-word samples");
  classify->add_option("--tol", classify_args.config.tol, "floating witness tolerance");

  CorpusArgs corpus_args;
  CLI::App* corpus = app.add_subcommand("corpus", "list or verify the landmark pairs");
  corpus->add_flag("--verify", corpus_args.verify, "verify entries against expectations");
  corpus->add_option("--budget", corpus_args.budget, "recovery search budget (0 disables)");
  corpus->add_option("--dir", corpus_args.dir, "export/load corpus graph files here");
  corpus->add_option("--json", corpus_args.json_path, "write a JSON report here");
  corpus->add_option("--seed", corpus_args.config.seed, "random seed");
  corpus->add_option("--word-bound", corpus_args.config.word_bound,
                     "exhaustive trace-word bound");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "synthesize partition-indicator expressions");
  synth->add_option("graph", synth_args.graph_path, "graph file (.g6 or .json)")->required();
  synth->add_option("--kind", synth_args.kind, "eqpart or stabcol");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (eval->parsed()) {
      if (eval_args.expr_text.empty() == eval_args.expr_file.empty())
        throw matlang::Error("exactly one of -e and --expr-file is required");
      return cmd_eval(eval_args);
    }
    if (classify->parsed()) return cmd_classify(classify_args);
    if (corpus->parsed()) return cmd_corpus(corpus_args);
    if (synth->parsed()) return cmd_synth(synth_args);
  } catch (const matlang::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kExitSyntax;
  } catch (const matlang::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitSyntax;
  } catch (const matlang::SortError& e) {
    std::cerr << "sort error: " << e.what() << "\n";
    return kExitSort;
  } catch (const matlang::FragmentViolation& e) {
    std::cerr << "fragment violation: " << e.what() << "\n";
    return kExitFragment;
  } catch (const matlang::EvalModeError& e) {
    std::cerr << "evaluation mode error: " << e.what() << "\n";
    return kExitEvalMode;
  } catch (const matlang::OrderMismatch& e) {
    std::cerr << "order mismatch: " << e.what() << "\n";
    return kExitOrder;
  } catch (const matlang::RecoveryFailure& e) {
    std::cerr << "recovery failure: " << e.what() << "\n";
    return kExitRecovery;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
