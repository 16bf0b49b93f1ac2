#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdetect/matrix.hpp"

// Dense kernels used inside the interior-point solver. Each parallel kernel
// has a serial twin with identical arithmetic per output entry; the serial one
// is the reference the tests compare against.
namespace qdetect::kernels {

/// Number of real coordinates of an n x n Hermitian matrix.
inline std::size_t hermitian_dim(std::size_t n) { return n * n; }

/// Coordinates in the orthonormal basis (under Re tr(AB)) made of e_j e_j^*,
/// (e_j e_k^* + e_k e_j^*)/sqrt2 and i(e_j e_k^* - e_k e_j^*)/sqrt2.
/// Only the Hermitian part of `h` contributes.
void hermitian_coordinates(const ComplexMatrix& h, std::span<double> out);
std::vector<double> hermitian_coordinates(const ComplexMatrix& h);

/// Inverse of hermitian_coordinates.
ComplexMatrix from_hermitian_coordinates(std::span<const double> coords, std::size_t n);

/// The basis matrices in coordinate order.
std::vector<ComplexMatrix> hermitian_basis(std::size_t n);

/// Operands of the Schur complement of the HKM Newton system
///   M[a][b] = sum_k Re tr(B_a Pi_k B_b Zinv_k),   B_b = sum_g U_g^* E_b U_g.
struct SchurOperands {
  std::span<const ComplexMatrix> orbit;          ///< U_g
  std::span<const ComplexMatrix> basis_images;   ///< B_b, one per coordinate
  std::span<const ComplexMatrix> primal;         ///< Pi_k
  std::span<const ComplexMatrix> dual_inverse;   ///< Z_k^{-1}
  /// Row-major N x n^2 map from full coordinates to the coordinates used for
  /// the constraints; empty when all n^2 coordinates are used.
  std::span<const double> reduction = {};
};

/// Orthonormal coordinate basis (rows of a row-major N x n^2 matrix) of the
/// range of Y -> sum_g U_g Y U_g^*. Empty when that range is everything.
std::vector<double> orbit_range_basis(std::span<const ComplexMatrix> orbit, std::size_t n);

/// Row-major N x N output, N = basis_images.size().
void assemble_schur_serial(const SchurOperands& ops, std::span<double> out);
void assemble_schur_parallel(const SchurOperands& ops, std::span<double> out);

/// sum_g U_g Y U_g^*
ComplexMatrix orbit_apply(std::span<const ComplexMatrix> orbit, const ComplexMatrix& y);
/// sum_g U_g^* Y U_g
ComplexMatrix orbit_adjoint_apply(std::span<const ComplexMatrix> orbit, const ComplexMatrix& y);

/// In-place Cholesky of a row-major symmetric positive definite matrix
/// (lower triangle overwritten). Returns false if a pivot is not positive.
bool cholesky_in_place(std::span<double> a, std::size_t n);
/// Solves (L L^T) x = b with the factor from cholesky_in_place.
void cholesky_solve(std::span<const double> l, std::size_t n, std::span<double> b);

}  // namespace qdetect::kernels
