#pragma once

#include <vector>

#include "qdetect/ensemble.hpp"

namespace qdetect {

inline constexpr double kDefaultConditionTol = 1e-8;

/// Least-squares (square-root) measurement of an ensemble.
struct LsmResult {
  HermitianMatrix transform;           ///< T = (Psi Psi^*)^{-1/2}
  HermitianMatrix gram;                ///< W = Psi Psi^*
  std::vector<ComplexMatrix> factors;  ///< mu_i = T psi_i
  Povm povm;                           ///< Sigma_i = mu_i mu_i^*
};

/// Outcome of testing psi_i^* T psi_i = alpha I for every i.
struct OptimalityReport {
  bool condition_holds = false;
  double alpha = 0.0;
  std::vector<HermitianMatrix> per_state_matrices;  ///< psi_i^* T psi_i, sized by rank of rho_i
  std::vector<double> deviations;                   ///< || psi_i^* T psi_i - alpha I ||_F
  double max_deviation = 0.0;
};

/// Throws Singular when Psi Psi^* cannot be inverted.
LsmResult least_squares_measurement(const Ensemble& e);

/// Evaluates the sufficient optimality condition. `cond_tol` is relative to
/// alpha. alpha is the mean diagonal of the first product.
OptimalityReport check_square_root_condition(const Ensemble& e, const LsmResult& lsm,
                                             double cond_tol = kDefaultConditionTol);

/// X = alpha W^{1/2}. Dominates every p_i rho_i and annihilates the LSM
/// operators, so it certifies the LSM as minimum-error. Throws
/// ConditionNotMet unless report.condition_holds.
HermitianMatrix certificate_from_condition(const Ensemble& e, const LsmResult& lsm,
                                           const OptimalityReport& report);

}  // namespace qdetect
