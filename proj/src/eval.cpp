#include "matlang/eval.hpp"

#include <map>

#include "matlang/errors.hpp"

namespace matlang {

namespace {

template <typename Matrix, typename Scalar, typename ApplyFn, typename ChildEval>
Matrix eval_node(const Expr& e, const Matrix& a, const ApplyFn& apply_fn, const ChildEval& ev) {
  switch (e.op) {
    case Op::Var:
      return a;
    case Op::ConjTranspose: {
      Matrix v = ev(*e.children[0]);
      if constexpr (std::is_same_v<Matrix, ExactMatrix>) {
        return conj_transpose(v);
      } else {
        Matrix out(v.cols(), v.rows());
        for (std::size_t i = 0; i < v.rows(); ++i)
          for (std::size_t j = 0; j < v.cols(); ++j) out.at(j, i) = std::conj(v.at(i, j));
        return out;
      }
    }
    case Op::Ones: {
      Matrix v = ev(*e.children[0]);
      Matrix out(v.rows(), 1);
      for (std::size_t i = 0; i < v.rows(); ++i) out.at(i, 0) = Scalar(1);
      return out;
    }
    case Op::Diag: {
      Matrix v = ev(*e.children[0]);
      if (v.cols() != 1) throw InternalFault("diag on a non-column value");
      Matrix out(v.rows(), v.rows());
      for (std::size_t i = 0; i < v.rows(); ++i) out.at(i, i) = v.at(i, 0);
      return out;
    }
    case Op::Trace: {
      Matrix v = ev(*e.children[0]);
      if (v.rows() != v.cols()) throw InternalFault("trace on a non-square value");
      Matrix out(1, 1);
      for (std::size_t i = 0; i < v.rows(); ++i) out.at(0, 0) += v.at(i, i);
      return out;
    }
    case Op::Mul: {
      Matrix lhs = ev(*e.children[0]);
      Matrix rhs = ev(*e.children[1]);
      if constexpr (std::is_same_v<Matrix, ExactMatrix>) {
        return mat_mul(lhs, rhs);
      } else {
        return lhs * rhs;
      }
    }
    case Op::Add:
      return ev(*e.children[0]) + ev(*e.children[1]);
    case Op::ScalarMul: {
      Matrix v = ev(*e.children[0]);
      if constexpr (std::is_same_v<Matrix, ExactMatrix>) {
        return v.scaled(e.scalar);
      } else {
        Matrix out(v.rows(), v.cols());
        std::complex<double> c = e.scalar.to_complex();
        for (std::size_t i = 0; i < v.rows(); ++i)
          for (std::size_t j = 0; j < v.cols(); ++j) out.at(i, j) = c * v.at(i, j);
        return out;
      }
    }
    case Op::VProd:
    case Op::Schur: {
      Matrix lhs = ev(*e.children[0]);
      Matrix rhs = ev(*e.children[1]);
      if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw InternalFault("pointwise product shape mismatch");
      Matrix out(lhs.rows(), lhs.cols());
      for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j) out.at(i, j) = lhs.at(i, j) * rhs.at(i, j);
      return out;
    }
    case Op::Apply: {
      std::vector<Matrix> args;
      args.reserve(e.children.size());
      for (const auto& c : e.children) args.push_back(ev(*c));
      for (const auto& v : args)
        if (v.rows() != args[0].rows() || v.cols() != args[0].cols())
          throw InternalFault("apply argument shape mismatch");
      Matrix out(args[0].rows(), args[0].cols());
      std::vector<Scalar> point(args.size());
      for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) {
          for (std::size_t k = 0; k < args.size(); ++k) point[k] = args[k].at(i, j);
          out.at(i, j) = apply_fn(e.fn, point);
        }
      return out;
    }
  }
  throw InternalFault("unhandled node kind in evaluate");
}

template <typename Matrix, typename Scalar, typename ApplyFn>
Matrix eval_impl(const Expr& e, const Matrix& a, const ApplyFn& apply_fn) {
  auto ev = [&](const Expr& c) { return eval_impl<Matrix, Scalar>(c, a, apply_fn); };
  return eval_node<Matrix, Scalar>(e, a, apply_fn, ev);
}

}  // namespace

ExactMatrix evaluate(const Expr& e, const ExactMatrix& a) {
  if (!a.is_square()) throw NotSquare("evaluate expects a square assignment for X");
  auto apply_fn = [](const std::string& name, const std::vector<GaussianRational>& point) {
    auto fn = lookup_pointwise_fn(name);
    if (!fn) throw InternalFault("unknown pointwise function `" + name + "`");
    if (!fn->exact)
      throw EvalModeError("pointwise function `" + name +
                          "` is not exact-evaluable; use float mode");
    return fn->exact_fn(point);
  };
  return eval_impl<ExactMatrix, GaussianRational>(e, a, apply_fn);
}

FloatMatrix evaluate_float(const Expr& e, const FloatMatrix& a) {
  if (a.rows() != a.cols()) throw NotSquare("evaluate expects a square assignment for X");
  auto apply_fn = [](const std::string& name, const std::vector<std::complex<double>>& point) {
    auto fn = lookup_pointwise_fn(name);
    if (!fn) throw InternalFault("unknown pointwise function `" + name + "`");
    return fn->float_fn(point);
  };
  return eval_impl<FloatMatrix, std::complex<double>>(e, a, apply_fn);
}

ExactMatrix evaluate_shared(const Expr& e, const ExactMatrix& a) {
  if (!a.is_square()) throw NotSquare("evaluate expects a square assignment for X");
  auto apply_fn = [](const std::string& name, const std::vector<GaussianRational>& point) {
    auto fn = lookup_pointwise_fn(name);
    if (!fn) throw InternalFault("unknown pointwise function `" + name + "`");
    if (!fn->exact)
      throw EvalModeError("pointwise function `" + name +
                          "` is not exact-evaluable; use float mode");
    return fn->exact_fn(point);
  };
  std::map<const Expr*, ExactMatrix> cache;
  // Shared nodes of the expression DAG are evaluated once.
  std::function<ExactMatrix(const Expr&)> ev = [&](const Expr& c) -> ExactMatrix {
    auto it = cache.find(&c);
    if (it != cache.end()) return it->second;
    ExactMatrix v = eval_node<ExactMatrix, GaussianRational>(c, a, apply_fn, ev);
    return cache.emplace(&c, std::move(v)).first->second;
  };
  return ev(e);
}

// --- normalize_linear ---

namespace {

LinearCombination combine(LinearCombination terms) {
  std::map<std::string, std::pair<GaussianRational, ExprPtr>> buckets;
  std::vector<std::string> order;
  for (auto& [coef, expr] : terms) {
    std::string key = pretty_print(*expr);
    auto it = buckets.find(key);
    if (it == buckets.end()) {
      buckets.emplace(key, std::make_pair(coef, expr));
      order.push_back(std::move(key));
    } else {
      it->second.first += coef;
    }
  }
  LinearCombination out;
  for (const auto& key : order) {
    auto& [coef, expr] = buckets.at(key);
    if (!coef.is_zero()) out.emplace_back(coef, expr);
  }
  // Keep one zero term rather than an empty combination so the shape of the
  // value stays recoverable.
  if (out.empty() && !terms.empty())
    out.emplace_back(GaussianRational(0), terms.front().second);
  return out;
}

LinearCombination norm(const Expr& e) {
  switch (e.op) {
    case Op::Var:
      return {{GaussianRational(1), make_var()}};
    case Op::Add: {
      LinearCombination out = norm(*e.children[0]);
      LinearCombination rhs = norm(*e.children[1]);
      out.insert(out.end(), rhs.begin(), rhs.end());
      return combine(std::move(out));
    }
    case Op::ScalarMul: {
      LinearCombination out = norm(*e.children[0]);
      for (auto& [coef, expr] : out) coef = coef * e.scalar;
      return combine(std::move(out));
    }
    case Op::Mul:
    case Op::VProd:
    case Op::Schur: {
      // All three products are bilinear, so the combinations multiply out.
      LinearCombination lhs = norm(*e.children[0]);
      LinearCombination rhs = norm(*e.children[1]);
      LinearCombination out;
      for (const auto& [ca, ea] : lhs)
        for (const auto& [cb, eb] : rhs) {
          ExprPtr prod = e.op == Op::Mul     ? make_mul(ea, eb)
                         : e.op == Op::VProd ? make_vprod(ea, eb)
                                             : make_schur(ea, eb);
          out.emplace_back(ca * cb, std::move(prod));
        }
      return combine(std::move(out));
    }
    case Op::ConjTranspose: {
      // (sum a_i e_i)' = sum conj(a_i) e_i'.
      LinearCombination out = norm(*e.children[0]);
      for (auto& [coef, expr] : out) {
        coef = coef.conj();
        expr = make_conj_transpose(expr);
      }
      return combine(std::move(out));
    }
    case Op::Trace: {
      LinearCombination out = norm(*e.children[0]);
      for (auto& [coef, expr] : out) expr = make_trace(expr);
      return combine(std::move(out));
    }
    case Op::Diag: {
      LinearCombination out = norm(*e.children[0]);
      for (auto& [coef, expr] : out) expr = make_diag(expr);
      return combine(std::move(out));
    }
    case Op::Ones: {
      // ones() only looks at the shape of its argument, and every term of
      // the combination has that same shape: keep the first term.
      LinearCombination inner = norm(*e.children[0]);
      return {{GaussianRational(1), make_ones(inner.front().second)}};
    }
    case Op::Apply: {
      // Pointwise functions are not linear; normalize the arguments and
      // re-materialize them, keeping the Apply node atomic.
      std::vector<ExprPtr> args;
      args.reserve(e.children.size());
      for (const auto& c : e.children) args.push_back(expr_from_combination(norm(*c)));
      return {{GaussianRational(1), make_apply(e.fn, std::move(args))}};
    }
  }
  throw InternalFault("unhandled node kind in normalize_linear");
}

}  // namespace

LinearCombination normalize_linear(const Expr& e) { return combine(norm(e)); }

ExprPtr expr_from_combination(const LinearCombination& terms) {
  if (terms.empty()) throw InternalFault("empty linear combination");
  ExprPtr out;
  for (const auto& [coef, expr] : terms) {
    ExprPtr term = (coef == GaussianRational(1)) ? expr : make_scalar_mul(coef, expr);
    out = out ? make_add(out, term) : term;
  }
  return out;
}

}  // namespace matlang
