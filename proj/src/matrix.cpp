#include "qdetect/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdetect/errors.hpp"

namespace qdetect {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    std::ostringstream msg;
    msg << "matrix " << rows << "x" << cols << " needs " << rows * cols << " entries, got "
        << data_.size();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (!all_finite()) throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> entries) {
  return ComplexMatrix(entries.size(), 1, std::vector<Complex>(entries.begin(), entries.end()));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix d(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  return d;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw Error(ErrorCode::InvalidArgument, "column block out of range");
  ComplexMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matrix product: " << a.rows() << "x" << a.cols() << " times " << b.rows() << "x"
        << b.cols();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error(ErrorCode::DimensionMismatch, "hconcat: row count mismatch");
    cols += b.cols();
  }
  ComplexMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, offset + j) = b(i, j);
    offset += b.cols();
  }
  return out;
}

ComplexMatrix multiply_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "a b^*: column mismatch");
  ComplexMatrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(b(j, k));
      c(i, j) = s;
    }
  return c;
}

ComplexMatrix adjoint_multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "a^* b: row mismatch");
  ComplexMatrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const Complex aki = std::conj(a(k, i));
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aki * b(k, j);
    }
  return c;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "frobenius distance: shape mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) s += std::norm(a.entries()[k] - b.entries()[k]);
  return std::sqrt(s);
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "trace product: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += (a(i, k) * b(k, i)).real();
  return s;
}

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a, double hermiticity_tol) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidArgument, "Hermitian matrix must be square");
  if (!a.all_finite()) throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
  const double scale = std::max(a.max_abs(), 1e-300);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > hermiticity_tol * scale) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian at (" << i << "," << j << ")";
        throw Error(ErrorCode::InvalidArgument, msg.str());
      }
    }
  *this = symmetrized(a);
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidArgument, "Hermitian matrix must be square");
  const std::size_t n = a.rows();
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(std::move(s), 0);
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n), 0);
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) { return HermitianMatrix(ComplexMatrix(n, n), 0); }

HermitianMatrix HermitianMatrix::real_diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HermitianMatrix(std::move(m), 0);
}

HermitianMatrix HermitianMatrix::outer(const ComplexMatrix& f) {
  return symmetrized(multiply_adjoint(f, f));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  return HermitianMatrix(m_ + other.m_, 0);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  return HermitianMatrix(m_ - other.m_, 0);
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(m_ * s, 0); }

HermitianMatrix HermitianMatrix::conjugated_by(const ComplexMatrix& u) const {
  return symmetrized(multiply_adjoint(u * m_, u));
}

}  // namespace qdetect
