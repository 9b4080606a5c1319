#include "matlang/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace matlang {

// --- ExactMatrix ---

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols,
                         std::vector<GaussianRational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (check_shape(rows, cols) != entries_.size())
    throw DimensionMismatch("entry count does not match shape");
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
  return m;
}

ExactMatrix ExactMatrix::ones(std::size_t rows, std::size_t cols) {
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = GaussianRational(1);
  return m;
}

ExactMatrix ExactMatrix::scalar(GaussianRational v) {
  ExactMatrix m(1, 1);
  m.at(0, 0) = std::move(v);
  return m;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionMismatch("addition shape mismatch");
  ExactMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    out.entries_[k] = a.entries_[k] + b.entries_[k];
  return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionMismatch("subtraction shape mismatch");
  ExactMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    out.entries_[k] = a.entries_[k] - b.entries_[k];
  return out;
}

ExactMatrix ExactMatrix::scaled(const GaussianRational& c) const {
  ExactMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] * c;
  return out;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).to_string();
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  return os.str();
}

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("mat_mul: " + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()));
  ExactMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GaussianRational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

ExactMatrix conj_transpose(const ExactMatrix& a) {
  ExactMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j).conj();
  return out;
}

GaussianRational trace(const ExactMatrix& a) {
  if (!a.is_square()) throw NotSquare("trace of non-square matrix");
  GaussianRational t;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a.at(i, i);
  return t;
}

ExactMatrix schur_product(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("pointwise product shape mismatch");
  ExactMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) * b.at(i, j);
  return out;
}

// --- Polynomial ---

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::constant(mpq_class c) { return Polynomial({std::move(c)}); }
Polynomial Polynomial::x() { return Polynomial({mpq_class(0), mpq_class(1)}); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()), mpq_class(0));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) - b.coeff(k);
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw InternalFault("polynomial division by zero");
  if (is_zero()) return Polynomial();
  if (coeffs_.size() < divisor.coeffs_.size())
    throw InternalFault("polynomial division is not exact");
  std::vector<mpq_class> rem = coeffs_;
  std::vector<mpq_class> quot(coeffs_.size() - divisor.coeffs_.size() + 1, mpq_class(0));
  const mpq_class& lead = divisor.coeffs_.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpq_class q = rem[k + divisor.coeffs_.size() - 1] / lead;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < divisor.coeffs_.size(); ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  for (const auto& r : rem)
    if (r != 0) throw InternalFault("polynomial division is not exact");
  return Polynomial(std::move(quot));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] == 0) continue;
    if (!first) os << (coeffs_[k] > 0 ? " + " : " - ");
    mpq_class c = (!first && coeffs_[k] < 0) ? mpq_class(-coeffs_[k]) : coeffs_[k];
    if (k == 0 || c != 1) os << rational_to_string(c);
    if (k > 0) {
      if (c != 1) os << "*";
      os << "x";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

// --- char_poly / determinant ---

namespace {

void require_real(const ExactMatrix& a, const char* what) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_real()) throw PreconditionFailed(std::string(what) + ": entries must be real rationals");
}

}  // namespace

Polynomial char_poly(const ExactMatrix& a) {
  if (!a.is_square()) throw NotSquare("char_poly of non-square matrix");
  require_real(a, "char_poly");
  const std::size_t n = a.rows();
  // Fraction-free (Bareiss) elimination of M = xI - A over Q[x]: after step
  // k the (k,k) entry is the k-th leading principal minor, so the final
  // pivot is det(xI - A) itself.
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = Polynomial::constant(-a.at(i, j).re);
      if (i == j) m[i][j] = m[i][j] + Polynomial::x();
    }
  Polynomial prev = Polynomial::constant(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      // det(xI - A) is monic of degree n, so a fully zero pivot column is
      // impossible at a surviving step.
      if (swap_row == n) throw InternalFault("char_poly: zero pivot column");
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divide_exact(prev);
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  if (sign < 0) det = det * Polynomial::constant(-1);
  return det;
}

Polynomial char_poly_faddeev(const ExactMatrix& a) {
  if (!a.is_square()) throw NotSquare("char_poly of non-square matrix");
  require_real(a, "char_poly");
  const std::size_t n = a.rows();
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr(M_1);
  // M_k = A*(M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k.
  std::vector<mpq_class> coeffs(n + 1, mpq_class(0));
  coeffs[n] = 1;
  ExactMatrix m = a;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      ExactMatrix shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) += GaussianRational(coeffs[n - k + 1]);
      m = mat_mul(a, shifted);
    }
    coeffs[n - k] = -trace(m).re / mpq_class(static_cast<long>(k));
  }
  return Polynomial(std::move(coeffs));
}

GaussianRational determinant(const ExactMatrix& a) {
  if (!a.is_square()) throw NotSquare("determinant of non-square matrix");
  const std::size_t n = a.rows();
  // Bareiss fraction-free elimination with row pivoting.
  std::vector<std::vector<GaussianRational>> m(n, std::vector<GaussianRational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
  GaussianRational prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return GaussianRational(0);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  GaussianRational det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

ExactMatrix inverse(const ExactMatrix& a) {
  if (!a.is_square()) throw NotSquare("inverse of non-square matrix");
  const std::size_t n = a.rows();
  // Gauss-Jordan on [A | I].
  std::vector<std::vector<GaussianRational>> m(n, std::vector<GaussianRational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    m[i][n + i] = GaussianRational(1);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) throw PreconditionFailed("inverse: matrix is singular");
    std::swap(m[k], m[piv]);
    GaussianRational inv_p = GaussianRational(1) / m[k][k];
    for (std::size_t j = 0; j < 2 * n; ++j) m[k][j] *= inv_p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k].is_zero()) continue;
      GaussianRational f = m[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = m[i][n + j];
  return out;
}

// --- FloatMatrix ---

FloatMatrix::FloatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrices must be at least 1x1");
}

FloatMatrix FloatMatrix::identity(std::size_t n) {
  FloatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

FloatMatrix FloatMatrix::from_exact(const ExactMatrix& a) {
  FloatMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j).to_complex();
  return m;
}

FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("float mat_mul shape mismatch");
  FloatMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto aik = a.at(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

FloatMatrix operator+(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionMismatch("float addition shape mismatch");
  FloatMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    out.entries_[k] = a.entries_[k] + b.entries_[k];
  return out;
}

FloatMatrix operator-(const FloatMatrix& a, const FloatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionMismatch("float subtraction shape mismatch");
  FloatMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    out.entries_[k] = a.entries_[k] - b.entries_[k];
  return out;
}

FloatMatrix FloatMatrix::transpose() const {
  FloatMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

double FloatMatrix::max_norm() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

EigenDecomposition sym_eigendecomposition(const FloatMatrix& a, double tol) {
  if (a.rows() != a.cols()) throw NotSquare("sym_eigendecomposition of non-square matrix");
  const std::size_t n = a.rows();
  const double scale = std::max(a.max_norm(), 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(a.at(i, j).imag()) > tol * scale)
        throw NotSymmetric("sym_eigendecomposition: matrix has complex entries");
      if (std::abs(a.at(i, j) - a.at(j, i)) > tol * scale)
        throw NotSymmetric("sym_eigendecomposition: matrix is not symmetric");
    }

  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = 0.5 * (a.at(i, j).real() + a.at(j, i).real());
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  // Cyclic Jacobi sweeps: zero each off-diagonal (p,q) by a plane rotation
  // until all off-diagonal mass is below the threshold.
  const int max_sweeps = 100;
  const double thresh = 1e-15 * scale * static_cast<double>(n);
  bool converged = (n == 1);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(m[p][q]);
    if (off <= thresh) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = m[p][q];
        if (std::abs(apq) <= 1e-18 * scale) continue;
        double theta = 0.5 * (m[q][q] - m[p][p]) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(m[p][q]);
    if (off > tol * scale) throw ConvergenceFailure("Jacobi iteration did not converge");
  }

  // Sort eigenpairs ascending by eigenvalue.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return m[x][x] < m[y][y]; });
  EigenDecomposition out{std::vector<double>(n), FloatMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = m[order[k]][order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors.at(i, k) = v[i][order[k]];
  }
  return out;
}

}  // namespace matlang
