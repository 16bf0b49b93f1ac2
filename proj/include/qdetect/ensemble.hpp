#pragma once

#include <span>
#include <vector>

#include "qdetect/hermitian.hpp"
#include "qdetect/matrix.hpp"

namespace qdetect {

inline constexpr double kStatePsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPriorSumTol = 1e-10;
inline constexpr double kPovmTol = 1e-9;

/// PSD Hermitian operator with unit trace.
class DensityOperator {
 public:
  /// Throws NotPsd or InvalidArgument (trace != 1).
  explicit DensityOperator(HermitianMatrix rho);

  const HermitianMatrix& matrix() const noexcept { return rho_; }
  std::size_t dim() const noexcept { return rho_.dim(); }

 private:
  HermitianMatrix rho_;
};

/// States rho_i with priors p_i and factors phi_i (phi_i phi_i^* = rho_i).
/// The weighted factors psi_i = sqrt(p_i) phi_i are the block columns of Psi.
class Ensemble {
 public:
  /// Factors each state by eigendecomposition.
  static Ensemble build(std::vector<DensityOperator> states, std::vector<double> priors);

  /// Uses the given factors; rho_i = phi_i phi_i^* must have unit trace.
  static Ensemble from_factors(std::vector<ComplexMatrix> factors, std::vector<double> priors);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return states_.size(); }

  const std::vector<DensityOperator>& states() const noexcept { return states_; }
  const std::vector<double>& priors() const noexcept { return priors_; }
  const std::vector<ComplexMatrix>& factors() const noexcept { return factors_; }
  const std::vector<ComplexMatrix>& weighted_factors() const noexcept { return weighted_; }

  /// p_i rho_i
  HermitianMatrix weighted_state(std::size_t i) const;

  /// Psi = [psi_1 psi_2 ...]
  ComplexMatrix weighted_factor_matrix() const;

  /// Same states and priors, factors replaced (phi_i -> phi_i Q_i and the like).
  /// Each new factor must reproduce its state.
  Ensemble with_factors(std::vector<ComplexMatrix> factors) const;

 private:
  Ensemble() = default;
  static Ensemble assemble(std::vector<DensityOperator> states, std::vector<double> priors,
                           std::vector<ComplexMatrix> factors);

  std::size_t dim_ = 0;
  std::vector<DensityOperator> states_;
  std::vector<double> priors_;
  std::vector<ComplexMatrix> factors_;
  std::vector<ComplexMatrix> weighted_;
};

/// PSD operators summing to the identity.
class Povm {
 public:
  /// Throws NotPsd or InvalidArgument when an operator is not PSD within
  /// `tol` or || sum - I ||_F > tol.
  explicit Povm(std::vector<HermitianMatrix> operators, double tol = kPovmTol);

  /// No validation; used to carry candidate measurements into diagnostics.
  static Povm unchecked(std::vector<HermitianMatrix> operators);

  std::size_t dim() const noexcept { return ops_.empty() ? 0 : ops_.front().dim(); }
  std::size_t size() const noexcept { return ops_.size(); }
  const std::vector<HermitianMatrix>& operators() const noexcept { return ops_; }
  const HermitianMatrix& operator[](std::size_t i) const { return ops_[i]; }

  /// || sum_i Pi_i - I ||_F
  double completeness_residual() const;

 private:
  Povm() = default;
  std::vector<HermitianMatrix> ops_;
};

/// tr(rho_j Pi_j) for each j, priors excluded.
std::vector<double> per_state_detection(const Ensemble& e, const Povm& m);

/// P_d = sum_i p_i tr(rho_i Pi_i)
double correct_detection_probability(const Ensemble& e, const Povm& m);

/// Sum of psi_i psi_i^* over the ensemble, i.e. Psi Psi^*.
HermitianMatrix weighted_gram(const Ensemble& e);

/// Phi Phi^* with unweighted factors.
HermitianMatrix factor_gram(const Ensemble& e);

}  // namespace qdetect
