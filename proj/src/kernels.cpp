#include "qdetect/kernels.hpp"

#include <cmath>
#include <numbers>

#include "qdetect/errors.hpp"

namespace qdetect::kernels {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

bool is_identity_orbit(std::span<const ComplexMatrix> orbit) {
  if (orbit.size() != 1) return false;
  const auto& u = orbit.front();
  return frobenius_distance(u, ComplexMatrix::identity(u.rows())) == 0.0;
}

// Column b of the Schur matrix: coordinates of orbit(sum_k Pi_k B_b Zinv_k).
void schur_column(const SchurOperands& ops, std::size_t b, std::span<double> column) {
  const ComplexMatrix& image = ops.basis_images[b];
  const std::size_t n = image.rows();
  ComplexMatrix sum(n, n);
  for (std::size_t k = 0; k < ops.primal.size(); ++k)
    sum += ops.primal[k] * image * ops.dual_inverse[k];
  if (ops.reduction.empty()) {
    hermitian_coordinates(orbit_apply(ops.orbit, sum), column);
    return;
  }
  const std::vector<double> full = hermitian_coordinates(orbit_apply(ops.orbit, sum));
  for (std::size_t a = 0; a < column.size(); ++a) {
    double s = 0.0;
    for (std::size_t c = 0; c < full.size(); ++c) s += ops.reduction[a * full.size() + c] * full[c];
    column[a] = s;
  }
}

}  // namespace

void hermitian_coordinates(const ComplexMatrix& h, std::span<double> out) {
  const std::size_t n = h.rows();
  if (out.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "coordinate buffer size");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) out[idx++] = h(j, j).real();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const Complex v = 0.5 * (h(j, k) + std::conj(h(k, j)));
      out[idx++] = kSqrt2 * v.real();
      out[idx++] = kSqrt2 * v.imag();
    }
}

std::vector<double> hermitian_coordinates(const ComplexMatrix& h) {
  std::vector<double> out(h.rows() * h.rows());
  hermitian_coordinates(h, out);
  return out;
}

ComplexMatrix from_hermitian_coordinates(std::span<const double> coords, std::size_t n) {
  if (coords.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "coordinate count");
  ComplexMatrix h(n, n);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) h(j, j) = coords[idx++];
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const Complex v(coords[idx] / kSqrt2, coords[idx + 1] / kSqrt2);
      idx += 2;
      h(j, k) = v;
      h(k, j) = std::conj(v);
    }
  return h;
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  std::vector<double> e(n * n, 0.0);
  for (std::size_t b = 0; b < n * n; ++b) {
    e[b] = 1.0;
    basis.push_back(from_hermitian_coordinates(e, n));
    e[b] = 0.0;
  }
  return basis;
}

std::vector<double> orbit_range_basis(std::span<const ComplexMatrix> orbit, std::size_t n) {
  if (is_identity_orbit(orbit)) return {};
  const std::size_t dim = hermitian_dim(n);
  std::vector<double> rows;
  std::size_t count = 0;
  for (const auto& e : hermitian_basis(n)) {
    std::vector<double> v = hermitian_coordinates(orbit_apply(orbit, e));
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t r = 0; r < count; ++r) {
        double dot = 0.0;
        for (std::size_t c = 0; c < dim; ++c) dot += rows[r * dim + c] * v[c];
        for (std::size_t c = 0; c < dim; ++c) v[c] -= dot * rows[r * dim + c];
      }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= 1e-8 * static_cast<double>(orbit.size())) continue;
    for (double x : v) rows.push_back(x / norm);
    ++count;
  }
  if (count == dim) return {};
  return rows;
}

void assemble_schur_serial(const SchurOperands& ops, std::span<double> out) {
  const std::size_t dim = ops.basis_images.size();
  if (out.size() != dim * dim) throw Error(ErrorCode::DimensionMismatch, "Schur buffer size");
  std::vector<double> column(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    schur_column(ops, b, column);
    for (std::size_t a = 0; a < dim; ++a) out[a * dim + b] = column[a];
  }
}

void assemble_schur_parallel(const SchurOperands& ops, std::span<double> out) {
  const std::size_t dim = ops.basis_images.size();
  if (out.size() != dim * dim) throw Error(ErrorCode::DimensionMismatch, "Schur buffer size");
  const auto count = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel
  {
    std::vector<double> column(dim);
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < count; ++b) {
      schur_column(ops, static_cast<std::size_t>(b), column);
      for (std::size_t a = 0; a < dim; ++a) out[a * dim + static_cast<std::size_t>(b)] = column[a];
    }
  }
}

ComplexMatrix orbit_apply(std::span<const ComplexMatrix> orbit, const ComplexMatrix& y) {
  if (is_identity_orbit(orbit)) return y;
  ComplexMatrix sum(y.rows(), y.cols());
  for (const auto& u : orbit) sum += multiply_adjoint(u * y, u);
  return sum;
}

ComplexMatrix orbit_adjoint_apply(std::span<const ComplexMatrix> orbit, const ComplexMatrix& y) {
  if (is_identity_orbit(orbit)) return y;
  ComplexMatrix sum(y.rows(), y.cols());
  for (const auto& u : orbit) sum += adjoint_multiply(u, y * u);
  return sum;
}

bool cholesky_in_place(std::span<double> a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
  }
  return true;
}

void cholesky_solve(std::span<const double> l, std::size_t n, std::span<double> b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * b[k];
    b[i] = s / l[i * n + i];
  }
}

}  // namespace qdetect::kernels
