#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qdetect/matrix.hpp"

namespace qdetect {

inline constexpr double kDefaultRankTol = 1e-10;

/// H = U diag(eigenvalues) U^*, eigenvalues ascending, eigenvectors in the
/// columns of U.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  /// U f(diag) U^*
  HermitianMatrix apply(const std::function<double(double)>& f) const;
};

struct JacobiOptions {
  int max_sweeps = 100;
  /// Stop once the off-diagonal Frobenius norm falls below this fraction of ||H||_F.
  double relative_off_diagonal_tol = 1e-15;
};

/// Cyclic complex Jacobi. Throws NoConvergenceError carrying the remaining
/// off-diagonal norm if the sweep cap is reached.
EigenDecomposition eigh(const HermitianMatrix& h, const JacobiOptions& options = {});

enum class SingularPolicy {
  Error,          ///< throw Singular
  PseudoInverse,  ///< invert only on the support
};

/// H^{-1/2}. Eigenvalues in [-rank_tol, rank_tol] * lambda_max count as zero;
/// anything more negative is NotPsd.
HermitianMatrix matrix_inv_sqrt(const HermitianMatrix& h, double rank_tol = kDefaultRankTol,
                                SingularPolicy policy = SingularPolicy::Error);

/// Unique PSD square root. Small negative eigenvalues (within rank_tol of
/// lambda_max) are clamped to zero.
HermitianMatrix matrix_sqrt(const HermitianMatrix& h, double rank_tol = kDefaultRankTol);

/// lambda_min(H) >= -tol * max(1, lambda_max(H))
bool is_psd(const HermitianMatrix& h, double tol);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues zeroed).
HermitianMatrix psd_projection(const HermitianMatrix& h);

/// phi with phi phi^* = rho, one column per eigenvalue above rank_tol * lambda_max,
/// largest eigenvalue first.
ComplexMatrix factorize(const HermitianMatrix& rho, double rank_tol = kDefaultRankTol);

/// Lower-triangular L with L L^* = H, or nullopt if H is not numerically
/// positive definite.
std::optional<ComplexMatrix> cholesky(const HermitianMatrix& h);

/// Solves L Y = B for lower-triangular L.
ComplexMatrix lower_solve(const ComplexMatrix& l, const ComplexMatrix& b);

/// Inverse of a positive definite matrix through its Cholesky factor.
std::optional<HermitianMatrix> inverse_pd(const HermitianMatrix& h);

}  // namespace qdetect
