#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "matlang/errors.hpp"
#include "matlang/rational.hpp"

namespace matlang {

// Dense row-major matrix over Gaussian rationals. 0x0 matrices are rejected
// at construction: every value in this library is at least 1x1 (scalars are
// 1x1 matrices).
class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(check_shape(rows, cols)) {}
  ExactMatrix(std::size_t rows, std::size_t cols, std::vector<GaussianRational> entries);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ExactMatrix ones(std::size_t rows, std::size_t cols);
  static ExactMatrix scalar(GaussianRational v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }

  const GaussianRational& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  GaussianRational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  ExactMatrix scaled(const GaussianRational& c) const;

  std::string to_string() const;

 private:
  static std::size_t check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw DimensionMismatch("matrices must be at least 1x1");
    return rows * cols;
  }
  std::size_t rows_, cols_;
  std::vector<GaussianRational> entries_;
};

// Dense row-major matrix over complex doubles; the floating-point backend
// for the eigendecomposition witness path.
class FloatMatrix {
 public:
  FloatMatrix(std::size_t rows, std::size_t cols);

  static FloatMatrix identity(std::size_t n);
  static FloatMatrix from_exact(const ExactMatrix& a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const std::complex<double>& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::complex<double>& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  friend FloatMatrix operator*(const FloatMatrix& a, const FloatMatrix& b);
  friend FloatMatrix operator+(const FloatMatrix& a, const FloatMatrix& b);
  friend FloatMatrix operator-(const FloatMatrix& a, const FloatMatrix& b);
  FloatMatrix transpose() const;

  // Largest entry magnitude (max norm).
  double max_norm() const;

 private:
  std::size_t rows_, cols_;
  std::vector<std::complex<double>> entries_;
};

// Polynomial over rationals, coefficients degree-indexed ascending.
// Trailing zero coefficients are trimmed (zero polynomial = empty vector).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);

  static Polynomial constant(mpq_class c);
  static Polynomial x();  // the monomial x

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as 0 for convenience.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  mpq_class coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : mpq_class(0); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Exact division, throws InternalFault if the remainder is nonzero.
  Polynomial divide_exact(const Polynomial& divisor) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

// --- Exact operations ---

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix conj_transpose(const ExactMatrix& a);
GaussianRational trace(const ExactMatrix& a);
// Entrywise (Schur/Hadamard) product; also used for the pointwise vector
// product on columns.
ExactMatrix schur_product(const ExactMatrix& a, const ExactMatrix& b);

// Monic characteristic polynomial det(xI - A), by fraction-free (Bareiss)
// elimination over the polynomial ring.
Polynomial char_poly(const ExactMatrix& a);
// Independent computation via the Faddeev-LeVerrier recurrence; used as a
// cross-check of char_poly.
Polynomial char_poly_faddeev(const ExactMatrix& a);

// Exact determinant (fraction-free Bareiss elimination).
GaussianRational determinant(const ExactMatrix& a);

// Exact inverse by Gaussian elimination; throws PreconditionFailed if
// singular. (Utility for tests and witness checks.)
ExactMatrix inverse(const ExactMatrix& a);

// --- Floating-point eigendecomposition ---

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  FloatMatrix eigenvectors;         // orthonormal columns, column k pairs with eigenvalues[k]
};

// Cyclic Jacobi rotations on a real symmetric matrix. `a` must be real and
// symmetric within tol; result satisfies |A*V - V*Lambda|_max <= tol*n*|A|_max.
EigenDecomposition sym_eigendecomposition(const FloatMatrix& a, double tol = 1e-10);

}  // namespace matlang
