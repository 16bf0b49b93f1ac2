#include "qdetect/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qdetect/errors.hpp"

namespace qdetect {
namespace {

void check_priors(std::span<const double> priors) {
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (!(priors[i] > 0.0) || !std::isfinite(priors[i])) {
      std::ostringstream msg;
      msg << "priors must be positive (prior " << i << " is " << priors[i] << ")";
      throw Error(ErrorCode::PriorsInvalid, msg.str());
    }
  }
  const double sum = std::accumulate(priors.begin(), priors.end(), 0.0);
  if (std::abs(sum - 1.0) > kPriorSumTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "priors must sum to 1 (sum is " << sum << ")";
    throw Error(ErrorCode::PriorsInvalid, msg.str());
  }
}

}  // namespace

DensityOperator::DensityOperator(HermitianMatrix rho) : rho_(std::move(rho)) {
  if (rho_.dim() == 0) throw Error(ErrorCode::InvalidArgument, "density operator is empty");
  const double tr = rho_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density operator must have unit trace (trace is " << tr << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (!is_psd(rho_, kStatePsdTol))
    throw Error(ErrorCode::NotPsd, "density operator is not positive semidefinite");
}

Ensemble Ensemble::build(std::vector<DensityOperator> states, std::vector<double> priors) {
  std::vector<ComplexMatrix> factors;
  factors.reserve(states.size());
  for (const auto& s : states) {
    factors.push_back(factorize(psd_projection(s.matrix())));
  }
  return assemble(std::move(states), std::move(priors), std::move(factors));
}

Ensemble Ensemble::from_factors(std::vector<ComplexMatrix> factors, std::vector<double> priors) {
  std::vector<DensityOperator> states;
  states.reserve(factors.size());
  for (const auto& f : factors) states.emplace_back(HermitianMatrix::outer(f));
  return assemble(std::move(states), std::move(priors), std::move(factors));
}

Ensemble Ensemble::with_factors(std::vector<ComplexMatrix> factors) const {
  return assemble(states_, priors_, std::move(factors));
}

Ensemble Ensemble::assemble(std::vector<DensityOperator> states, std::vector<double> priors,
                            std::vector<ComplexMatrix> factors) {
  if (states.empty()) throw Error(ErrorCode::InvalidArgument, "ensemble has no states");
  if (states.size() != priors.size()) {
    std::ostringstream msg;
    msg << "ensemble has " << states.size() << " states but " << priors.size() << " priors";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  if (factors.size() != states.size())
    throw Error(ErrorCode::DimensionMismatch, "one factor per state is required");
  const std::size_t n = states.front().dim();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != n) {
      std::ostringstream msg;
      msg << "state " << i << " has dimension " << states[i].dim() << ", expected " << n;
      throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    if (factors[i].rows() != n) throw Error(ErrorCode::DimensionMismatch, "factor row count");
    const double err = frobenius_distance(multiply_adjoint(factors[i], factors[i]),
                                          states[i].matrix().matrix());
    // Loose enough to absorb states that are PSD only up to kStatePsdTol.
    if (err > kStatePsdTol * std::max(1.0, states[i].matrix().frobenius_norm())) {
      std::ostringstream msg;
      msg << "factor " << i << " does not reproduce its state (residual " << err << ")";
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
  }
  check_priors(priors);

  Ensemble e;
  e.dim_ = n;
  e.states_ = std::move(states);
  e.priors_ = std::move(priors);
  e.factors_ = std::move(factors);
  e.weighted_.reserve(e.factors_.size());
  for (std::size_t i = 0; i < e.factors_.size(); ++i)
    e.weighted_.push_back(e.factors_[i] * std::sqrt(e.priors_[i]));

  // The states must jointly span the space; otherwise Psi Psi^* is singular.
  const auto eig = eigh(weighted_gram(e));
  const double floor = kDefaultRankTol * std::max(eig.max(), 0.0);
  std::size_t deficiency = 0;
  for (double lambda : eig.eigenvalues)
    if (lambda <= floor) ++deficiency;
  if (deficiency > 0) {
    std::ostringstream msg;
    msg << "the states span only " << n - deficiency << " of " << n
        << " dimensions; restate the problem on the subspace they span";
    throw SpanDeficientError(msg.str(), deficiency);
  }
  return e;
}

HermitianMatrix Ensemble::weighted_state(std::size_t i) const {
  return states_.at(i).matrix() * priors_.at(i);
}

ComplexMatrix Ensemble::weighted_factor_matrix() const { return hconcat(weighted_); }

// ---------------------------------------------------------------------------

Povm::Povm(std::vector<HermitianMatrix> operators, double tol) : ops_(std::move(operators)) {
  if (ops_.empty()) throw Error(ErrorCode::InvalidArgument, "measurement has no operators");
  const std::size_t n = ops_.front().dim();
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].dim() != n) throw Error(ErrorCode::DimensionMismatch, "measurement operator size");
    if (!is_psd(ops_[i], tol)) {
      std::ostringstream msg;
      msg << "measurement operator " << i << " is not positive semidefinite";
      throw Error(ErrorCode::NotPsd, msg.str());
    }
  }
  const double residual = completeness_residual();
  if (residual > tol) {
    std::ostringstream msg;
    msg << "measurement operators do not sum to the identity (residual " << residual << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

Povm Povm::unchecked(std::vector<HermitianMatrix> operators) {
  Povm m;
  m.ops_ = std::move(operators);
  return m;
}

double Povm::completeness_residual() const {
  if (ops_.empty()) return 0.0;
  ComplexMatrix sum(dim(), dim());
  for (const auto& op : ops_) sum += op.matrix();
  return frobenius_distance(sum, ComplexMatrix::identity(dim()));
}

std::vector<double> per_state_detection(const Ensemble& e, const Povm& m) {
  if (m.size() != e.size() || m.dim() != e.dim()) {
    std::ostringstream msg;
    msg << "ensemble has " << e.size() << " states in dimension " << e.dim()
        << " but the measurement has " << m.size() << " operators in dimension " << m.dim();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  std::vector<double> out(e.size());
  for (std::size_t j = 0; j < e.size(); ++j)
    out[j] = real_trace_product(e.states()[j].matrix().matrix(), m[j].matrix());
  return out;
}

double correct_detection_probability(const Ensemble& e, const Povm& m) {
  const auto per_state = per_state_detection(e, m);
  double pd = 0.0;
  for (std::size_t j = 0; j < per_state.size(); ++j) pd += e.priors()[j] * per_state[j];
  return pd;
}

HermitianMatrix weighted_gram(const Ensemble& e) {
  ComplexMatrix w(e.dim(), e.dim());
  for (const auto& psi : e.weighted_factors()) w += multiply_adjoint(psi, psi);
  return HermitianMatrix::symmetrized(w);
}

HermitianMatrix factor_gram(const Ensemble& e) {
  ComplexMatrix g(e.dim(), e.dim());
  for (const auto& phi : e.factors()) g += multiply_adjoint(phi, phi);
  return HermitianMatrix::symmetrized(g);
}

}  // namespace qdetect
