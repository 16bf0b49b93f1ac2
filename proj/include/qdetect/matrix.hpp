#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qdetect {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws InvalidArgument if the entry count is wrong or an entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix column(std::span<const Complex> entries);
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  /// Columns [first, first + count).
  ComplexMatrix column_block(std::size_t first, std::size_t count) const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex(s); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s); }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Horizontal concatenation [a b c ...]. All blocks must share a row count.
ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks);

/// a * b^*
ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);
/// a^* * b
ComplexMatrix adjoint_multiply(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Re tr(a b), the real inner product on Hermitian matrices.
double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double kHermiticityTol = 1e-12;

/// Square complex matrix equal to its adjoint. Construction symmetrizes
/// (A + A^*)/2, so diagonals are exactly real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Checks |a_ij - conj(a_ji)| <= tol * max|a| and symmetrizes.
  /// Throws InvalidArgument if `a` is not square or not Hermitian.
  explicit HermitianMatrix(const ComplexMatrix& a, double hermiticity_tol = kHermiticityTol);

  /// Symmetrizes without checking. For results that are Hermitian up to
  /// rounding by construction (products like B B^*, congruences).
  static HermitianMatrix symmetrized(const ComplexMatrix& a);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix real_diagonal(std::span<const double> d);
  /// f f^*
  static HermitianMatrix outer(const ComplexMatrix& f);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.frobenius_norm(); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

  /// u h u^*
  HermitianMatrix conjugated_by(const ComplexMatrix& u) const;

 private:
  explicit HermitianMatrix(ComplexMatrix m, int) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

}  // namespace qdetect
