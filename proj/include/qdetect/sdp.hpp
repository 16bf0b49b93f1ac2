#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qdetect/ensemble.hpp"
#include "qdetect/errors.hpp"
#include "qdetect/symmetry.hpp"

namespace qdetect {

/// Interior-point settings. The starting point is strictly feasible
/// (X0 = (1 + max lambda_max(p_i rho_i)) I, Pi_i = I/m), which fixes the
/// initial barrier parameter.
struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-9;
  /// Target for max_i || Z_i Pi_i ||_F. Once the gap and feasibility tests
  /// pass, at most `polish_iters` further steps are spent approaching it.
  double complementarity_tol = 1e-10;
  std::size_t polish_iters = 6;
  std::size_t max_iters = 200;
  /// Mehrotra predictor-corrector; when off, every step targets sigma * mu.
  bool predictor_corrector = true;
  /// Centering factor for the plain path-following step, in (0, 1).
  double sigma = 0.1;
  /// Fraction of the distance to the cone boundary taken per step, in (0, 1).
  double step_fraction = 0.98;
  /// Assemble the Newton system with the OpenMP kernel.
  bool parallel_kernels = false;

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

/// Dual variable X with X >= p_i rho_i; tr(X) bounds every achievable P_d.
struct Certificate {
  HermitianMatrix x;
  std::vector<HermitianMatrix> slacks;  ///< X - p_i rho_i
  double trace = 0.0;
};

Certificate make_certificate(const Ensemble& e, HermitianMatrix x);

struct SolverDiagnostics {
  std::string form;  ///< "full", "gu" or "cgu"
  std::size_t real_unknowns = 0;
  std::size_t constraint_blocks = 0;
  std::size_t full_real_unknowns = 0;
  std::size_t full_constraint_blocks = 0;
  /// tr(X) minus the primal objective at every iterate, before each step.
  std::vector<double> gap_history;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  /// max_i || (X - p_i rho_i) Pi_i ||_F of the returned solution.
  double max_complementarity = 0.0;
};

struct Solution {
  Povm povm;
  Certificate certificate;
  double p_correct = 0.0;
  double duality_gap = 0.0;
  std::size_t iterations = 0;
  SolverDiagnostics diagnostics;
};

/// Raised when the iteration cap is reached; carries the last iterate.
class MaxIterationsError : public Error {
 public:
  MaxIterationsError(const std::string& message, Solution best)
      : Error(ErrorCode::MaxIterations, message), best_(std::move(best)) {}
  const Solution& best() const noexcept { return best_; }

 private:
  Solution best_;
};

/// Minimum-error measurement over all POVMs with m outcomes.
Solution solve_optimal(const Ensemble& e, const SolverOptions& opts = {});

/// Same optimum through the single generator Pi, constrained by
/// sum_i U_i Pi U_i^* = I; the result is expanded to Pi_i = U_i Pi U_i^*.
Solution solve_gu(const GuSpec& spec, const SolverOptions& opts = {});

/// Same optimum through generators Pi_k with sum_{i,k} U_i Pi_k U_i^* = I,
/// expanded in generate_cgu order.
Solution solve_cgu(const CguSpec& spec, const SolverOptions& opts = {});

/// A measurement supported on the kernels of the certificate's slacks that
/// sums to I. Optimal measurements are not unique; this returns one of them.
/// Throws RecoveryInfeasible when no completion exists within 1e-6.
Povm recover_povm(const Ensemble& e, const Certificate& cert);

struct OptimalityVerification {
  std::vector<double> slack_min_eigenvalues;
  bool slacks_psd = false;
  std::vector<double> complementarity_residuals;  ///< || (X - p_i rho_i) Pi_i ||_F
  double max_complementarity = 0.0;
  bool complementary = false;
  double completeness_residual = 0.0;
  double povm_min_eigenvalue = 0.0;
  bool povm_valid = false;
  double trace_x = 0.0;
  double p_correct = 0.0;

  bool optimal() const { return slacks_psd && complementary && povm_valid; }
};

/// Checks dual feasibility, complementary slackness and measurement validity
/// at tolerance `tol`. Never throws on a failed check.
OptimalityVerification verify_optimality(const Ensemble& e, const Povm& m, const Certificate& cert,
                                         double tol);

}  // namespace qdetect
