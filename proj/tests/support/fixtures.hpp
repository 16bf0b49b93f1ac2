#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qdetect/ensemble.hpp"
#include "qdetect/symmetry.hpp"

namespace fixtures {

using qdetect::Complex;
using qdetect::ComplexMatrix;
using qdetect::HermitianMatrix;
using qdetect::UnitaryGroup;

using Rng = std::mt19937_64;

inline ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix a(rows, cols);
  for (auto& x : a.entries()) x = Complex(normal(rng), normal(rng));
  return a;
}

inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix a = gaussian_matrix(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(a(r, k)) * a(r, j);
      for (std::size_t r = 0; r < n; ++r) a(r, j) -= dot * a(r, k);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(a(r, j));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) a(r, j) /= norm;
  }
  return a;
}

/// Unit vector as an n x 1 factor.
inline ComplexMatrix random_pure_factor(std::size_t n, Rng& rng) {
  ComplexMatrix v = gaussian_matrix(n, 1, rng);
  return v * (1.0 / v.frobenius_norm());
}

/// n x rank factor with unit Frobenius norm, so phi phi^* has unit trace.
inline ComplexMatrix random_mixed_factor(std::size_t n, std::size_t rank, Rng& rng) {
  ComplexMatrix f = gaussian_matrix(n, rank, rng);
  return f * (1.0 / f.frobenius_norm());
}

inline std::vector<double> random_priors(std::size_t m, Rng& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> p(m);
  double s = 0.0;
  for (auto& x : p) s += (x = u(rng));
  for (auto& x : p) x /= s;
  return p;
}

inline UnitaryGroup conjugated(const UnitaryGroup& g, const ComplexMatrix& v) {
  std::vector<ComplexMatrix> elements;
  for (const auto& u : g.elements()) elements.push_back(qdetect::multiply_adjoint(v * u, v));
  return UnitaryGroup::build(std::move(elements));
}

/// Z_m acting on C^n as diag(w^{k_1}, ..., w^{k_n}), w = e^{2 pi i / m}.
inline UnitaryGroup phase_representation(std::size_t m, const std::vector<std::size_t>& exponents) {
  std::vector<ComplexMatrix> elements;
  for (std::size_t p = 0; p < m; ++p) {
    std::vector<Complex> d;
    for (auto k : exponents)
      d.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(p * k % m) /
                                      static_cast<double>(m)));
    elements.push_back(ComplexMatrix::diagonal(d));
  }
  return UnitaryGroup::build(std::move(elements));
}

/// Symmetries of the n-gon permuting the n coordinates (order 2n).
inline UnitaryGroup dihedral_permutations(std::size_t n) {
  ComplexMatrix rot(n, n), ref(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    rot((i + 1) % n, i) = 1.0;
    ref((n - i) % n, i) = 1.0;
  }
  return UnitaryGroup::generated_by({rot, ref});
}

/// Quaternion group {+-1, +-i sx, +-i sy, +-i sz}, repeated `copies` times on the diagonal.
inline UnitaryGroup quaternion_group(std::size_t copies = 1) {
  const Complex i(0.0, 1.0);
  const std::size_t n = 2 * copies;
  auto block = [&](Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix u(n, n);
    for (std::size_t k = 0; k < copies; ++k) {
      u(2 * k, 2 * k) = a;
      u(2 * k, 2 * k + 1) = b;
      u(2 * k + 1, 2 * k) = c;
      u(2 * k + 1, 2 * k + 1) = d;
    }
    return u;
  };
  return UnitaryGroup::generated_by({block(0.0, i, i, 0.0), block(0.0, 1.0, -1.0, 0.0)});
}

/// U = (1/2)[[1, sqrt3], [sqrt3, -1]] with generators (1, +-1)/sqrt2.
inline qdetect::CguSpec reflection_example() {
  const double s3 = std::sqrt(3.0);
  const ComplexMatrix u(2, 2, {0.5, 0.5 * s3, 0.5 * s3, -0.5});
  const double h = 1.0 / std::sqrt(2.0);
  return {UnitaryGroup::build({ComplexMatrix::identity(2), u}),
          {ComplexMatrix(2, 1, {h, h}), ComplexMatrix(2, 1, {h, -h})}};
}

/// Group {I, Z} with Z the swap, generators B^k phi for B = diag(1, -1),
/// phi = (2, 1)/sqrt5.
inline qdetect::CguSpec swap_phase_example() {
  const ComplexMatrix z(2, 2, {0.0, 1.0, 1.0, 0.0});
  const double b1 = 2.0 / std::sqrt(5.0);
  const double b2 = 1.0 / std::sqrt(5.0);
  return {UnitaryGroup::build({ComplexMatrix::identity(2), z}),
          {ComplexMatrix(2, 1, {b1, b2}), ComplexMatrix(2, 1, {b1, -b2})}};
}

/// Two real unit vectors with inner product `overlap`.
inline qdetect::Ensemble pure_pair(double overlap, double p1) {
  const double s = std::sqrt(1.0 - overlap * overlap);
  return qdetect::Ensemble::from_factors(
      {ComplexMatrix(2, 1, {1.0, 0.0}), ComplexMatrix(2, 1, {overlap, s})}, {p1, 1.0 - p1});
}

}  // namespace fixtures
