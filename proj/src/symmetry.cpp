#include "qdetect/symmetry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qdetect/errors.hpp"
#include "qdetect/hermitian.hpp"

namespace qdetect {
namespace {

// Index of the element nearest to `x` and its Frobenius distance.
std::pair<std::size_t, double> nearest(const std::vector<ComplexMatrix>& elements,
                                       const ComplexMatrix& x) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const double d = frobenius_distance(elements[k], x);
    if (d < best_dist) {
      best_dist = d;
      best = k;
    }
  }
  return {best, best_dist};
}

HermitianMatrix cgu_gram(const UnitaryGroup& g, const std::vector<ComplexMatrix>& generators) {
  ComplexMatrix inner(g.dim(), g.dim());
  for (const auto& phi : generators) {
    if (phi.rows() != g.dim())
      throw Error(ErrorCode::DimensionMismatch, "generator dimension does not match the group");
    inner += multiply_adjoint(phi, phi);
  }
  return g.orbit_sum(HermitianMatrix::symmetrized(inner));
}

}  // namespace

UnitaryGroup UnitaryGroup::build(std::vector<ComplexMatrix> elements, double element_match_tol) {
  if (elements.empty()) throw Error(ErrorCode::InvalidArgument, "group has no elements");
  const std::size_t n = elements.front().rows();
  const std::size_t m = elements.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& u = elements[i];
    if (!u.is_square() || u.rows() != n) {
      std::ostringstream msg;
      msg << "group element " << i << " is " << u.rows() << "x" << u.cols() << ", expected " << n
          << "x" << n;
      throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    const double err = frobenius_distance(adjoint_multiply(u, u), id);
    if (err > kUnitaryTol) {
      std::ostringstream msg;
      msg << "group element " << i << " is not unitary (||U^*U - I|| = " << err << ")";
      throw NotUnitaryError(msg.str(), i);
    }
  }
  if (frobenius_distance(elements.front(), id) > element_match_tol)
    throw Error(ErrorCode::NoIdentity, "the first group element must be the identity");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (frobenius_distance(elements[i], elements[j]) < element_match_tol) {
        std::ostringstream msg;
        msg << "group elements " << i << " and " << j << " coincide";
        throw Error(ErrorCode::DuplicateElement, msg.str());
      }

  UnitaryGroup g;
  g.elements_ = std::move(elements);
  g.mult_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto [k, dist] = nearest(g.elements_, g.elements_[i] * g.elements_[j]);
      if (dist > element_match_tol) {
        std::ostringstream msg;
        msg << "product of elements " << i << " and " << j << " is not in the set (distance "
            << dist << ")";
        throw NotClosedError(msg.str(), i, j, dist);
      }
      g.mult_[i * m + j] = k;
    }
  g.inverse_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto [k, dist] = nearest(g.elements_, g.elements_[i].adjoint());
    if (dist > element_match_tol) {
      std::ostringstream msg;
      msg << "inverse of element " << i << " is not in the set";
      throw NotClosedError(msg.str(), i, i, dist);
    }
    g.inverse_[i] = k;
  }
  g.r_.resize(m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) g.r_[j * m + i] = g.product(g.inverse_[j], i);
  return g;
}

UnitaryGroup UnitaryGroup::generated_by(const std::vector<ComplexMatrix>& generators,
                                        std::size_t max_order) {
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "no generators");
  const std::size_t n = generators.front().rows();
  std::vector<ComplexMatrix> elements{ComplexMatrix::identity(n)};
  for (std::size_t next = 0; next < elements.size(); ++next) {
    for (const auto& s : generators) {
      ComplexMatrix candidate = elements[next] * s;
      if (nearest(elements, candidate).second > kElementMatchTol) {
        if (elements.size() == max_order)
          throw Error(ErrorCode::InvalidArgument, "generated group exceeds the order limit");
        elements.push_back(std::move(candidate));
      }
    }
  }
  return build(std::move(elements));
}

HermitianMatrix UnitaryGroup::orbit_sum(const HermitianMatrix& y) const {
  ComplexMatrix sum(y.dim(), y.dim());
  for (const auto& u : elements_) sum += multiply_adjoint(u * y.matrix(), u);
  return HermitianMatrix::symmetrized(sum);
}

UnitaryGroup cyclic_shift_group(std::size_t l) {
  ComplexMatrix z(l, l);
  for (std::size_t i = 0; i < l; ++i) z(i, (i + 1) % l) = 1.0;
  std::vector<ComplexMatrix> elements{ComplexMatrix::identity(l)};
  for (std::size_t p = 1; p < l; ++p) elements.push_back(elements.back() * z);
  return UnitaryGroup::build(std::move(elements));
}

UnitaryGroup diagonal_phase_group(std::size_t l) {
  std::vector<ComplexMatrix> elements;
  for (std::size_t k = 0; k < l; ++k) {
    std::vector<Complex> d(l);
    for (std::size_t s = 0; s < l; ++s)
      d[s] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(s * k % l) /
                                 static_cast<double>(l));
    elements.push_back(ComplexMatrix::diagonal(d));
  }
  return UnitaryGroup::build(std::move(elements));
}

Ensemble generate_gu(const GuSpec& spec) {
  return generate_cgu(CguSpec{spec.group, {spec.generator_factor}});
}

Ensemble generate_cgu(const CguSpec& spec) {
  if (spec.generator_factors.empty())
    throw Error(ErrorCode::InvalidArgument, "compound set needs at least one generator");
  const std::size_t l = spec.group.order();
  const std::size_t r = spec.generator_factors.size();
  std::vector<ComplexMatrix> factors;
  factors.reserve(l * r);
  for (std::size_t i = 0; i < l; ++i)
    for (const auto& phi : spec.generator_factors) {
      if (phi.rows() != spec.group.dim())
        throw Error(ErrorCode::DimensionMismatch, "generator dimension does not match the group");
      factors.push_back(spec.group[i] * phi);
    }
  std::vector<double> priors(l * r, 1.0 / static_cast<double>(l * r));
  return Ensemble::from_factors(std::move(factors), std::move(priors));
}

ComplexMatrix gu_lsm_generator(const GuSpec& spec) {
  return cgu_lsm_generators(CguSpec{spec.group, {spec.generator_factor}}).front();
}

std::vector<ComplexMatrix> cgu_lsm_generators(const CguSpec& spec) {
  const HermitianMatrix m = matrix_inv_sqrt(cgu_gram(spec.group, spec.generator_factors));
  std::vector<ComplexMatrix> mu;
  mu.reserve(spec.generator_factors.size());
  for (const auto& phi : spec.generator_factors) mu.push_back(m.matrix() * phi);
  return mu;
}

PhaseCommutationReport check_phase_commutation(const UnitaryGroup& g, const UnitaryGroup& q) {
  if (g.dim() != q.dim())
    throw Error(ErrorCode::DimensionMismatch, "groups act on spaces of different dimension");
  PhaseCommutationReport report;
  report.q_order = q.order();
  report.commutes = true;
  std::vector<double> phases(g.order() * q.order(), 0.0);
  for (std::size_t p = 0; p < g.order(); ++p)
    for (std::size_t t = 0; t < q.order(); ++t) {
      const ComplexMatrix uv = g[p] * q[t];
      const ComplexMatrix vu = q[t] * g[p];
      // Phase from the largest entry of V_t U_p.
      std::size_t best = 0;
      for (std::size_t k = 1; k < vu.entries().size(); ++k)
        if (std::abs(vu.entries()[k]) > std::abs(vu.entries()[best])) best = k;
      const Complex ratio = uv.entries()[best] / vu.entries()[best];
      double theta = std::arg(ratio);
      if (theta <= -std::numbers::pi + 1e-12) theta = std::numbers::pi;
      const double residual = frobenius_distance(uv, vu * std::polar(1.0, theta));
      report.max_residual = std::max(report.max_residual, residual);
      if (residual > kPhaseTol) report.commutes = false;
      phases[p * q.order() + t] = theta;
    }
  if (report.commutes) {
    report.all_phases_trivial = true;
    for (double th : phases)
      if (std::abs(th) > kPhaseTol) report.all_phases_trivial = false;
    report.phases = std::move(phases);
  }
  return report;
}

ComplexMatrix cgu_gu_lsm_single_generator(const CguSpec& spec, const UnitaryGroup& q) {
  if (spec.generator_factors.size() != q.order()) {
    std::ostringstream msg;
    msg << spec.generator_factors.size() << " generators but the generator group has order "
        << q.order();
    throw Error(ErrorCode::GeneratorsNotGu, msg.str());
  }
  const ComplexMatrix& phi = spec.generator_factors.front();
  for (std::size_t k = 0; k < q.order(); ++k) {
    const double err = frobenius_distance(spec.generator_factors[k], q[k] * phi);
    if (err > kElementMatchTol) {
      std::ostringstream msg;
      msg << "generator " << k << " is not V_" << k << " applied to the first generator (residual "
          << err << ")";
      throw Error(ErrorCode::GeneratorsNotGu, msg.str());
    }
  }
  const auto report = check_phase_commutation(spec.group, q);
  if (!report.commutes) {
    std::ostringstream msg;
    msg << "the groups do not commute up to a phase (residual " << report.max_residual << ")";
    throw Error(ErrorCode::NotPhaseCommuting, msg.str());
  }
  const HermitianMatrix m = matrix_inv_sqrt(cgu_gram(spec.group, spec.generator_factors));
  return m.matrix() * phi;
}

Povm symmetrize_povm(const UnitaryGroup& g, const Povm& m, std::size_t r) {
  const std::size_t l = g.order();
  if (r == 0 || m.size() != l * r) {
    std::ostringstream msg;
    msg << "measurement has " << m.size() << " operators, expected " << l << " x " << r;
    throw Error(ErrorCode::CountMismatch, msg.str());
  }
  if (m.dim() != g.dim())
    throw Error(ErrorCode::DimensionMismatch, "measurement and group dimensions differ");
  const double inv_l = 1.0 / static_cast<double>(l);
  std::vector<HermitianMatrix> generators;
  generators.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    ComplexMatrix sum(g.dim(), g.dim());
    for (std::size_t s = 0; s < l; ++s)
      sum += adjoint_multiply(g[s], m[cgu_index(s, k, r)].matrix() * g[s]);
    generators.push_back(HermitianMatrix::symmetrized(sum * inv_l));
  }
  std::vector<HermitianMatrix> ops;
  ops.reserve(l * r);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < r; ++k) ops.push_back(generators[k].conjugated_by(g[i]));
  return Povm(std::move(ops));
}

}  // namespace qdetect
