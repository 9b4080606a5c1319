#include "matlang/randexpr.hpp"

#include <functional>
#include <vector>

#include "matlang/errors.hpp"

namespace matlang {

namespace {

GaussianRational random_coefficient(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  int n = num(rng);
  if (n == 0) n = 1;
  mpq_class value(n, den(rng));
  value.canonicalize();
  return GaussianRational{value, mpq_class(0)};
}

std::string random_exact_fn(std::mt19937& rng) {
  static const std::vector<std::string> names = {"nonzero", "abs2", "const0", "const1",
                                                 "affine_2_1", "affine_3_2"};
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  return names[pick(rng)];
}

struct Generator {
  std::mt19937& rng;
  const Fragment& frag;
  bool col_ok;
  bool row_ok;

  bool has(OpTag t) const { return frag.contains(t); }

  ExprPtr gen(Sort target, std::size_t depth) {
    // Candidate productions for the target sort, filtered by fragment and
    // child-sort reachability; depth 0 forces a terminal.
    std::vector<std::function<ExprPtr()>> options;
    auto add = [&](bool cond, std::function<ExprPtr()> f) {
      if (cond) options.push_back(std::move(f));
    };
    const bool deep = depth > 0;
    switch (target) {
      case Sort::Mat:
        if (!deep) return make_var();
        add(true, [&] { return make_var(); });
        add(true, [&] { return make_mul(gen(Sort::Mat, depth - 1), gen(Sort::Mat, depth - 1)); });
        add(col_ok && row_ok,
            [&] { return make_mul(gen(Sort::Col, depth - 1), gen(Sort::Row, depth - 1)); });
        add(has(OpTag::diag) && col_ok, [&] { return make_diag(gen(Sort::Col, depth - 1)); });
        add(has(OpTag::conj), [&] { return make_conj_transpose(gen(Sort::Mat, depth - 1)); });
        add(has(OpTag::add),
            [&] { return make_add(gen(Sort::Mat, depth - 1), gen(Sort::Mat, depth - 1)); });
        add(has(OpTag::smul),
            [&] { return make_scalar_mul(random_coefficient(rng), gen(Sort::Mat, depth - 1)); });
        add(has(OpTag::schur),
            [&] { return make_schur(gen(Sort::Mat, depth - 1), gen(Sort::Mat, depth - 1)); });
        add(has(OpTag::apply_m),
            [&] { return make_apply(random_exact_fn(rng), {gen(Sort::Mat, depth - 1)}); });
        break;
      case Sort::Col:
        if (!col_ok) throw InternalFault("Col sort unreachable in this fragment");
        if (!deep) return make_ones(make_var());
        add(true, [&] { return make_ones(make_var()); });
        add(true, [&] { return make_ones(gen(Sort::Mat, depth - 1)); });
        add(true, [&] { return make_ones(gen(Sort::Col, depth - 1)); });
        add(true, [&] { return make_mul(gen(Sort::Mat, depth - 1), gen(Sort::Col, depth - 1)); });
        add(has(OpTag::tr) || row_ok,
            [&] { return make_mul(gen(Sort::Col, depth - 1), gen(Sort::Scal, depth - 1)); });
        add(row_ok && has(OpTag::conj),
            [&] { return make_conj_transpose(gen(Sort::Row, depth - 1)); });
        add(has(OpTag::add),
            [&] { return make_add(gen(Sort::Col, depth - 1), gen(Sort::Col, depth - 1)); });
        add(has(OpTag::smul),
            [&] { return make_scalar_mul(random_coefficient(rng), gen(Sort::Col, depth - 1)); });
        add(has(OpTag::vprod),
            [&] { return make_vprod(gen(Sort::Col, depth - 1), gen(Sort::Col, depth - 1)); });
        add(has(OpTag::apply_v),
            [&] { return make_apply(random_exact_fn(rng), {gen(Sort::Col, depth - 1)}); });
        break;
      case Sort::Row:
        if (!row_ok) throw InternalFault("Row sort unreachable in this fragment");
        if (!deep) return make_conj_transpose(make_ones(make_var()));
        add(true, [&] { return make_conj_transpose(gen(Sort::Col, depth - 1)); });
        add(true, [&] { return make_mul(gen(Sort::Row, depth - 1), gen(Sort::Mat, depth - 1)); });
        add(has(OpTag::add),
            [&] { return make_add(gen(Sort::Row, depth - 1), gen(Sort::Row, depth - 1)); });
        add(has(OpTag::smul),
            [&] { return make_scalar_mul(random_coefficient(rng), gen(Sort::Row, depth - 1)); });
        break;
      case Sort::Scal: {
        auto terminal = [&]() -> ExprPtr {
          if (has(OpTag::tr)) return make_trace(make_var());
          return make_mul(make_conj_transpose(make_ones(make_var())), make_ones(make_var()));
        };
        if (!deep) return terminal();
        add(true, terminal);
        add(has(OpTag::tr), [&] { return make_trace(gen(Sort::Mat, depth - 1)); });
        add(row_ok,
            [&] { return make_mul(gen(Sort::Row, depth - 1), gen(Sort::Col, depth - 1)); });
        add(true, [&] { return make_mul(gen(Sort::Scal, depth - 1), gen(Sort::Scal, depth - 1)); });
        add(has(OpTag::add),
            [&] { return make_add(gen(Sort::Scal, depth - 1), gen(Sort::Scal, depth - 1)); });
        add(has(OpTag::smul),
            [&] { return make_scalar_mul(random_coefficient(rng), gen(Sort::Scal, depth - 1)); });
        add(has(OpTag::apply_s),
            [&] { return make_apply(random_exact_fn(rng), {gen(Sort::Scal, depth - 1)}); });
        break;
      }
    }
    if (options.empty()) throw InternalFault("no production available for requested sort");
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    return options[pick(rng)]();
  }
};

}  // namespace

ExprPtr random_expr(std::mt19937& rng, const Fragment& fragment, Sort target,
                    std::size_t max_depth) {
  bool col_ok = fragment.contains(OpTag::ones);
  bool row_ok = col_ok && fragment.contains(OpTag::conj);
  if ((target == Sort::Col && !col_ok) || (target == Sort::Row && !row_ok))
    throw InternalFault("requested sort unreachable in this fragment");
  Generator g{rng, fragment, col_ok, row_ok};
  return g.gen(target, max_depth);
}

ExprPtr random_sentence(std::mt19937& rng, const Fragment& fragment, std::size_t max_depth) {
  return random_expr(rng, fragment, Sort::Scal, max_depth);
}

}  // namespace matlang
