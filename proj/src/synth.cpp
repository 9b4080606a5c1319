#include "matlang/synth.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "matlang/errors.hpp"
#include "matlang/eval.hpp"

namespace matlang {

namespace {

// --- coarsest-equitable-partition expressions ---
//
// Both synthesizers below refine a class list by entrywise Lagrange
// interpolation: a class splits on the distinct values of a count vector
// (or matrix), and the indicator of the vertices (pairs) holding value v is
// the product of the shifted counts over the other occurring values, scaled
// by 1 / prod (v - v'). Splitting one class at a time against one reference
// class reaches the same fixed point as the simultaneous refinement.

struct EqClass {
  ExprPtr expr;                  // Col-sorted indicator expression
  std::vector<ExactMatrix> ind;  // per-graph indicator column
};

ExprPtr ones_column(const ExprPtr& x) { return make_ones(x); }

// prod_{k != pick} (m - values[k] * 1) masked by the class indicator, scaled
// so the product is exactly 1 on entries of m holding values[pick].
ExprPtr extract_vector_value(const ExprPtr& x, const ExprPtr& m, const ExprPtr& mask,
                             const std::vector<mpq_class>& values, std::size_t pick,
                             EqpartForm form) {
  GaussianRational scale(1);
  ExprPtr acc = mask;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == pick) continue;
    ExprPtr shift = make_add(m, make_scalar_mul(GaussianRational(-values[k]), ones_column(x)));
    acc = (form == EqpartForm::Diag) ? make_mul(make_diag(shift), acc) : make_vprod(shift, acc);
    scale = scale * GaussianRational(values[pick] - values[k]);
  }
  return make_scalar_mul(GaussianRational(1) / scale, acc);
}

std::vector<EqClass> synth_eqpart_core(const std::vector<const Graph*>& graphs,
                                       EqpartForm form) {
  const ExprPtr x = make_var();
  std::vector<EqClass> classes;
  {
    EqClass all{ones_column(x), {}};
    for (const Graph* g : graphs) {
      ExactMatrix col(g->order(), 1);
      for (std::size_t v = 0; v < g->order(); ++v) col.at(v, 0) = GaussianRational(1);
      all.ind.push_back(std::move(col));
    }
    classes.push_back(std::move(all));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < classes.size() && !changed; ++i) {
      for (std::size_t j = 0; j < classes.size() && !changed; ++j) {
        // Distinct neighbour counts into class j over the support of class i.
        std::set<mpq_class> value_set;
        std::vector<std::vector<mpq_class>> counts(graphs.size());
        for (std::size_t k = 0; k < graphs.size(); ++k) {
          const Graph& g = *graphs[k];
          counts[k].assign(g.order(), 0);
          for (std::size_t v = 0; v < g.order(); ++v) {
            if (classes[i].ind[k].at(v, 0).is_zero()) continue;
            long deg = 0;
            for (std::size_t u = 0; u < g.order(); ++u)
              if (g.adjacent(v, u) && !classes[j].ind[k].at(u, 0).is_zero()) ++deg;
            counts[k][v] = deg;
            value_set.insert(counts[k][v]);
          }
        }
        if (value_set.size() <= 1) continue;

        const std::vector<mpq_class> values(value_set.begin(), value_set.end());
        const ExprPtr m = make_mul(x, classes[j].expr);
        std::vector<EqClass> split;
        for (std::size_t pick = 0; pick < values.size(); ++pick) {
          EqClass nc{extract_vector_value(x, m, classes[i].expr, values, pick, form), {}};
          for (std::size_t k = 0; k < graphs.size(); ++k) {
            ExactMatrix col(graphs[k]->order(), 1);
            for (std::size_t v = 0; v < graphs[k]->order(); ++v)
              if (!classes[i].ind[k].at(v, 0).is_zero() && counts[k][v] == values[pick])
                col.at(v, 0) = GaussianRational(1);
            nc.ind.push_back(std::move(col));
          }
          split.push_back(std::move(nc));
        }
        classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(i));
        classes.insert(classes.begin() + static_cast<std::ptrdiff_t>(i),
                       std::make_move_iterator(split.begin()),
                       std::make_move_iterator(split.end()));
        changed = true;
      }
    }
  }
  return classes;
}

// Reorders classes so classes[p].ind[k] matches targets[k][p] for all k, and
// verifies the expressions reproduce the indicators exactly.
std::vector<ExprPtr> order_and_verify(std::vector<EqClass> classes,
                                      const std::vector<const Graph*>& graphs,
                                      const std::vector<std::vector<ExactMatrix>>& targets) {
  std::vector<ExprPtr> out(targets.front().size());
  for (std::size_t p = 0; p < targets.front().size(); ++p) {
    bool found = false;
    for (const EqClass& c : classes) {
      bool match = true;
      for (std::size_t k = 0; k < graphs.size() && match; ++k)
        match = (c.ind[k] == targets[k][p]);
      if (!match) continue;
      out[p] = c.expr;
      found = true;
      break;
    }
    if (!found) throw InternalFault("synthesized classes do not cover the refined partition");
  }
  if (classes.size() != targets.front().size())
    throw InternalFault("synthesized class count disagrees with the refined partition");
  for (std::size_t k = 0; k < graphs.size(); ++k)
    for (std::size_t p = 0; p < out.size(); ++p)
      if (evaluate_shared(*out[p], graphs[k]->adjacency()) != targets[k][p])
        throw InternalFault("synthesized indicator expression failed exact verification");
  return out;
}

std::vector<ExactMatrix> part_indicators(const EquitableCertificate& cert) {
  std::vector<ExactMatrix> out;
  for (std::size_t p = 0; p < cert.partition.parts.size(); ++p)
    out.push_back(cert.partition.indicator(p));
  return out;
}

}  // namespace

std::vector<ExprPtr> synthesize_eqpart_exprs(const Graph& g, EqpartForm form) {
  auto classes = synth_eqpart_core({&g}, form);
  return order_and_verify(std::move(classes), {&g},
                          {part_indicators(coarsest_equitable_partition(g))});
}

std::optional<std::vector<ExprPtr>> synthesize_common_eqpart_exprs(const Graph& g, const Graph& h,
                                                                   EqpartForm form) {
  auto common = common_equitable_partition(g, h);
  if (!common) return std::nullopt;
  auto classes = synth_eqpart_core({&g, &h}, form);
  return order_and_verify(std::move(classes), {&g, &h},
                          {part_indicators(common->g_cert), part_indicators(common->h_cert)});
}

std::vector<ExprPtr> eqpart_checking_sentences(const std::vector<ExprPtr>& eqpart,
                                               const EquitableCertificate& cert) {
  const ExprPtr x = make_var();
  const ExprPtr ones = ones_column(x);
  const ExprPtr row = make_conj_transpose(ones);
  auto zero_test = [&](const ExprPtr& t) { return make_mul(row, make_vprod(t, t)); };

  std::vector<ExprPtr> out;
  // Part sizes.
  for (const ExprPtr& e : eqpart) out.push_back(make_mul(row, e));
  // 0/1-ness: sum (e_i^2 - e_i)^2 vanishes iff every entry is 0 or 1.
  for (const ExprPtr& e : eqpart)
    out.push_back(zero_test(make_add(make_vprod(e, e), make_scalar_mul(GaussianRational(-1), e))));
  // The parts cover the ones vector.
  ExprPtr sum = eqpart.front();
  for (std::size_t i = 1; i < eqpart.size(); ++i) sum = make_add(sum, eqpart[i]);
  out.push_back(zero_test(make_add(sum, make_scalar_mul(GaussianRational(-1), ones))));
  // Equitability: e_i .* (X * e_j) = quotient(i,j) * e_i.
  for (std::size_t i = 0; i < eqpart.size(); ++i)
    for (std::size_t j = 0; j < eqpart.size(); ++j) {
      ExprPtr t = make_add(
          make_vprod(eqpart[i], make_mul(x, eqpart[j])),
          make_scalar_mul(GaussianRational(0) - cert.quotient.at(i, j), eqpart[i]));
      out.push_back(zero_test(t));
    }
  return out;
}

// --- stable-edge-partition expressions ---

namespace {

struct StabClass {
  ExprPtr expr;                  // Mat-sorted 0/1 class matrix expression
  std::vector<ExactMatrix> ind;  // per-graph class matrix
};

std::vector<StabClass> synth_stabcol_core(const std::vector<const Graph*>& graphs) {
  const ExprPtr x = make_var();
  const ExprPtr ones = make_ones(x);
  const ExprPtr jmat = make_mul(ones, make_conj_transpose(ones));
  const ExprPtr imat = make_diag(ones);
  const ExprPtr non_edge = make_add(
      make_add(jmat, make_scalar_mul(GaussianRational(-1), imat)),
      make_scalar_mul(GaussianRational(-1), x));

  auto class_matrix = [&](const Graph& g, int seed) {
    ExactMatrix e(g.order(), g.order());
    for (std::size_t v = 0; v < g.order(); ++v)
      for (std::size_t w = 0; w < g.order(); ++w) {
        int s = (v == w) ? 2 : (g.adjacent(v, w) ? 1 : 0);
        if (s == seed) e.at(v, w) = GaussianRational(1);
      }
    return e;
  };

  // Seed classes in ascending seed value (non-edge, edge, loop), keeping only
  // the ones that occur in some graph.
  std::vector<StabClass> classes;
  for (int seed : {0, 1, 2}) {
    StabClass c{seed == 0 ? non_edge : (seed == 1 ? x : imat), {}};
    bool occurs = false;
    for (const Graph* g : graphs) {
      c.ind.push_back(class_matrix(*g, seed));
      for (std::size_t v = 0; v < g->order() && !occurs; ++v)
        for (std::size_t w = 0; w < g->order() && !occurs; ++w)
          occurs = !c.ind.back().at(v, w).is_zero();
    }
    if (occurs) classes.push_back(std::move(c));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < classes.size() && !changed; ++c) {
      for (std::size_t d = 0; d < classes.size() && !changed; ++d) {
        std::vector<ExactMatrix> products;
        for (std::size_t k = 0; k < graphs.size(); ++k)
          products.push_back(mat_mul(classes[c].ind[k], classes[d].ind[k]));
        for (std::size_t t = 0; t < classes.size() && !changed; ++t) {
          // Distinct two-step counts over the support of class t.
          std::set<mpq_class> value_set;
          for (std::size_t k = 0; k < graphs.size(); ++k) {
            const std::size_t n = graphs[k]->order();
            for (std::size_t v = 0; v < n; ++v)
              for (std::size_t w = 0; w < n; ++w)
                if (!classes[t].ind[k].at(v, w).is_zero())
                  value_set.insert(products[k].at(v, w).re);
          }
          if (value_set.size() <= 1) continue;

          const std::vector<mpq_class> values(value_set.begin(), value_set.end());
          const ExprPtr m = make_mul(classes[c].expr, classes[d].expr);
          std::vector<StabClass> split;
          for (std::size_t pick = 0; pick < values.size(); ++pick) {
            GaussianRational scale(1);
            ExprPtr acc = classes[t].expr;
            for (std::size_t k = 0; k < values.size(); ++k) {
              if (k == pick) continue;
              ExprPtr shift = make_add(m, make_scalar_mul(GaussianRational(-values[k]), jmat));
              acc = make_schur(shift, acc);
              scale = scale * GaussianRational(values[pick] - values[k]);
            }
            StabClass nc{make_scalar_mul(GaussianRational(1) / scale, acc), {}};
            for (std::size_t k = 0; k < graphs.size(); ++k) {
              const std::size_t n = graphs[k]->order();
              ExactMatrix e(n, n);
              for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = 0; w < n; ++w)
                  if (!classes[t].ind[k].at(v, w).is_zero() &&
                      products[k].at(v, w).re == values[pick])
                    e.at(v, w) = GaussianRational(1);
              nc.ind.push_back(std::move(e));
            }
            split.push_back(std::move(nc));
          }
          classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(t));
          classes.insert(classes.begin() + static_cast<std::ptrdiff_t>(t),
                         std::make_move_iterator(split.begin()),
                         std::make_move_iterator(split.end()));
          changed = true;
        }
      }
    }
  }
  return classes;
}

}  // namespace

std::vector<ExprPtr> synthesize_stabcol_exprs(const Graph& g) {
  auto classes = synth_stabcol_core({&g});
  EdgePartition stable = stable_edge_partition(g);
  if (classes.size() != stable.num_colours)
    throw InternalFault("synthesized class count disagrees with the stable edge partition");
  std::vector<ExprPtr> out(stable.num_colours);
  for (std::size_t colour = 0; colour < stable.num_colours; ++colour) {
    ExactMatrix target = stable.indicator(colour);
    bool found = false;
    for (const StabClass& c : classes) {
      if (c.ind[0] != target) continue;
      if (evaluate_shared(*c.expr, g.adjacency()) != target)
        throw InternalFault("synthesized class expression failed exact verification");
      out[colour] = c.expr;
      found = true;
      break;
    }
    if (!found) throw InternalFault("synthesized classes do not cover the stable edge partition");
  }
  return out;
}

std::vector<ExprPtr> synthesize_joint_stabcol_exprs(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) throw OrderMismatch("graphs must have the same order");
  auto classes = synth_stabcol_core({&g, &h});
  std::vector<ExprPtr> out;
  const std::vector<const Graph*> graphs{&g, &h};
  for (const StabClass& c : classes) {
    for (std::size_t k = 0; k < graphs.size(); ++k)
      if (evaluate_shared(*c.expr, graphs[k]->adjacency()) != c.ind[k])
        throw InternalFault("synthesized class expression failed exact verification");
    out.push_back(c.expr);
  }
  return out;
}

}  // namespace matlang
