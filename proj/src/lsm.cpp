#include "qdetect/lsm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdetect/errors.hpp"

namespace qdetect {

LsmResult least_squares_measurement(const Ensemble& e) {
  HermitianMatrix gram = weighted_gram(e);
  HermitianMatrix transform = matrix_inv_sqrt(gram);

  std::vector<ComplexMatrix> mu;
  std::vector<HermitianMatrix> ops;
  mu.reserve(e.size());
  ops.reserve(e.size());
  for (const auto& psi : e.weighted_factors()) {
    mu.push_back(transform.matrix() * psi);
    ops.push_back(HermitianMatrix::outer(mu.back()));
  }
  return LsmResult{std::move(transform), std::move(gram), std::move(mu), Povm(std::move(ops))};
}

OptimalityReport check_square_root_condition(const Ensemble& e, const LsmResult& lsm,
                                             double cond_tol) {
  OptimalityReport report;
  report.per_state_matrices.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    // mu_i^* psi_i = psi_i^* T psi_i
    report.per_state_matrices.push_back(
        HermitianMatrix::symmetrized(adjoint_multiply(lsm.factors[i], e.weighted_factors()[i])));
  }

  const auto& first = report.per_state_matrices.front();
  double diag = 0.0;
  for (std::size_t j = 0; j < first.dim(); ++j) diag += first(j, j).real();
  report.alpha = first.dim() > 0 ? diag / static_cast<double>(first.dim()) : 0.0;

  for (const auto& p : report.per_state_matrices) {
    const double dev = (p - HermitianMatrix::identity(p.dim()) * report.alpha).frobenius_norm();
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.condition_holds =
      report.alpha > 0.0 && report.max_deviation <= cond_tol * report.alpha;
  return report;
}

HermitianMatrix certificate_from_condition(const Ensemble& e, const LsmResult& lsm,
                                           const OptimalityReport& report) {
  if (!report.condition_holds) {
    std::ostringstream msg;
    msg << "square-root condition does not hold (max deviation " << report.max_deviation
        << ", alpha " << report.alpha << ")";
    throw Error(ErrorCode::ConditionNotMet, msg.str());
  }
  if (lsm.gram.dim() != e.dim())
    throw Error(ErrorCode::DimensionMismatch, "LSM was computed for a different ensemble");
  return matrix_sqrt(lsm.gram) * report.alpha;
}

}  // namespace qdetect
