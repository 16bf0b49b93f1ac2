#include "qdetect/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <spdlog/spdlog.h>

#include "qdetect/hermitian.hpp"
#include "qdetect/kernels.hpp"

namespace qdetect {
namespace {

// max sum_k Re tr(C_k Pi_k)  s.t.  sum_k orbit(Pi_k) = I,  Pi_k >= 0
// min tr(X)                  s.t.  orbit^*(X) - C_k = Z_k >= 0
// with orbit(Y) = sum_g U_g Y U_g^*. The unreduced problem uses the trivial
// orbit {I} and one block per state.
struct BlockProblem {
  std::size_t n = 0;
  std::vector<ComplexMatrix> orbit;
  std::vector<ComplexMatrix> costs;
};

struct Iterate {
  std::vector<ComplexMatrix> primal;  // Pi_k
  ComplexMatrix dual;                 // X
  std::vector<ComplexMatrix> slack;   // Z_k
};

struct Direction {
  std::vector<ComplexMatrix> primal;
  ComplexMatrix dual;
  std::vector<ComplexMatrix> slack;
};

struct RawResult {
  Iterate point;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> gap_history;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return HermitianMatrix::symmetrized(a).matrix();
}

// Largest alpha <= cap with p + alpha d >= 0 for every block.
double max_step(const std::vector<ComplexMatrix>& p, const std::vector<ComplexMatrix>& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto l = cholesky(HermitianMatrix::symmetrized(p[k]));
    if (!l) return 0.0;
    const ComplexMatrix y = lower_solve(*l, d[k]);
    const ComplexMatrix s = lower_solve(*l, y.adjoint());
    const double lmin = eigh(HermitianMatrix::symmetrized(s)).min();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

double inner(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += real_trace_product(a[k], b[k]);
  return s;
}

class InteriorPoint {
 public:
  InteriorPoint(const BlockProblem& problem, const SolverOptions& opts)
      : p_(problem),
        opts_(opts),
        n_(problem.n),
        full_dim_(kernels::hermitian_dim(problem.n)),
        reduction_(kernels::orbit_range_basis(problem.orbit, problem.n)) {
    dim_ = reduction_.empty() ? full_dim_ : reduction_.size() / full_dim_;
    for (std::size_t a = 0; a < dim_; ++a) {
      std::vector<double> e(dim_, 0.0);
      e[a] = 1.0;
      images_.push_back(kernels::orbit_adjoint_apply(p_.orbit, from_coords(e)));
    }
  }

  RawResult run() {
    const std::size_t blocks = p_.costs.size();
    const double group = static_cast<double>(p_.orbit.size());
    double cmax = 0.0;
    for (const auto& c : p_.costs) cmax = std::max(cmax, eigh(HermitianMatrix::symmetrized(c)).max());

    Iterate it;
    it.dual = ComplexMatrix::identity(n_) * ((1.0 + cmax) / group);
    const ComplexMatrix start_primal =
        ComplexMatrix::identity(n_) * (1.0 / (static_cast<double>(blocks) * group));
    const ComplexMatrix dual_image = kernels::orbit_adjoint_apply(p_.orbit, it.dual);
    for (const auto& c : p_.costs) {
      it.primal.push_back(start_primal);
      it.slack.push_back(dual_image - c);
    }

    RawResult out;
    // Best iterate that met the gap and feasibility tests, by complementarity.
    std::optional<Iterate> best;
    double best_comp = std::numeric_limits<double>::infinity();
    double best_rp = 0.0;
    double best_rd = 0.0;
    std::size_t best_iter = 0;
    std::size_t polished = 0;
    auto finish = [&]() {
      out.point = std::move(*best);
      out.converged = true;
      out.iterations = best_iter;
      out.primal_residual = best_rp;
      out.dual_residual = best_rd;
      return std::move(out);
    };

    const ComplexMatrix id = ComplexMatrix::identity(n_);
    for (std::size_t iter = 0;; ++iter) {
      // Residuals of the linear constraints.
      ComplexMatrix primal_sum(n_, n_);
      for (const auto& pk : it.primal) primal_sum += pk;
      const ComplexMatrix rp = id - kernels::orbit_apply(p_.orbit, primal_sum);
      const ComplexMatrix image = kernels::orbit_adjoint_apply(p_.orbit, it.dual);
      std::vector<ComplexMatrix> rd;
      double rd_norm = 0.0;
      for (std::size_t k = 0; k < blocks; ++k) {
        rd.push_back(p_.costs[k] + it.slack[k] - image);
        rd_norm = std::max(rd_norm, rd.back().frobenius_norm());
      }
      double pobj = 0.0;
      for (std::size_t k = 0; k < blocks; ++k) pobj += real_trace_product(p_.costs[k], it.primal[k]);
      const double dobj = it.dual.trace().real();
      const double gap = dobj - pobj;
      double comp = 0.0;
      for (std::size_t k = 0; k < blocks; ++k)
        comp = std::max(comp, (it.slack[k] * it.primal[k]).frobenius_norm() / group);
      out.gap_history.push_back(gap);
      out.primal_residual = rp.frobenius_norm();
      out.dual_residual = rd_norm;
      out.iterations = iter;
      spdlog::debug(
          "ipm iter {:3d}  pobj {:.12e}  dobj {:.12e}  gap {:.3e}  rp {:.2e}  rd {:.2e}  comp {:.2e}",
          iter, pobj, dobj, gap, out.primal_residual, rd_norm, comp);

      const bool settled = std::abs(gap) <= 0.5 * opts_.gap_tol * std::max(1.0, std::abs(pobj)) &&
                           out.primal_residual <= opts_.feas_tol && rd_norm <= opts_.feas_tol;
      if (settled && comp < best_comp) {
        best = it;
        best_comp = comp;
        best_rp = out.primal_residual;
        best_rd = rd_norm;
        best_iter = iter;
      }
      if (best && (best_comp <= opts_.complementarity_tol || polished >= opts_.polish_iters))
        return finish();
      if (best) ++polished;
      if (iter >= opts_.max_iters) {
        if (best) return finish();
        break;
      }

      const double mu = inner(it.primal, it.slack) / static_cast<double>(blocks * n_);
      std::vector<ComplexMatrix> zinv;
      for (const auto& z : it.slack) {
        auto inv = inverse_pd(HermitianMatrix::symmetrized(z));
        if (!inv) break;
        zinv.push_back(inv->matrix());
      }
      if (zinv.size() != blocks) {
        if (best) return finish();
        throw Error(ErrorCode::NumericalBreakdown, "dual slack lost definiteness");
      }

      schur_.assign(dim_ * dim_, 0.0);
      const kernels::SchurOperands ops{p_.orbit, images_, it.primal, zinv, reduction_};
      if (opts_.parallel_kernels)
        kernels::assemble_schur_parallel(ops, schur_);
      else
        kernels::assemble_schur_serial(ops, schur_);
      for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = a + 1; b < dim_; ++b) {
          const double v = 0.5 * (schur_[a * dim_ + b] + schur_[b * dim_ + a]);
          schur_[a * dim_ + b] = v;
          schur_[b * dim_ + a] = v;
        }
      if (!kernels::cholesky_in_place(schur_, dim_)) {
        if (best) return finish();
        throw Error(ErrorCode::NumericalBreakdown, "Newton system is not positive definite");
      }

      Direction step;
      if (opts_.predictor_corrector) {
        std::vector<ComplexMatrix> zero_target(blocks, ComplexMatrix(n_, n_));
        const Direction affine = direction(it, zero_target, rp, rd, zinv);
        const double ap = std::min(1.0, max_step(it.primal, affine.primal));
        const double ad = std::min(1.0, max_step(it.slack, affine.slack));
        double mu_aff = 0.0;
        for (std::size_t k = 0; k < blocks; ++k)
          mu_aff += real_trace_product(it.primal[k] + affine.primal[k] * ap,
                                       it.slack[k] + affine.slack[k] * ad);
        mu_aff /= static_cast<double>(blocks * n_);
        const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
        const double sigma = ratio * ratio * ratio;
        std::vector<ComplexMatrix> target;
        for (std::size_t k = 0; k < blocks; ++k)
          target.push_back(id * (sigma * mu) - affine.primal[k] * affine.slack[k]);
        step = direction(it, target, rp, rd, zinv);
      } else {
        std::vector<ComplexMatrix> target(blocks, id * (opts_.sigma * mu));
        step = direction(it, target, rp, rd, zinv);
      }

      const double ap = std::min(1.0, opts_.step_fraction * max_step(it.primal, step.primal));
      const double ad = std::min(1.0, opts_.step_fraction * max_step(it.slack, step.slack));
      if (!(ap > 0.0) || !(ad > 0.0)) {
        if (best) return finish();
        throw Error(ErrorCode::NumericalBreakdown, "interior-point step length collapsed");
      }
      for (std::size_t k = 0; k < blocks; ++k) {
        it.primal[k] = hermitian_part(it.primal[k] + step.primal[k] * ap);
        it.slack[k] = hermitian_part(it.slack[k] + step.slack[k] * ad);
      }
      it.dual = hermitian_part(it.dual + step.dual * ad);
    }
    out.point = std::move(it);
    return out;
  }

 private:
  // HKM direction for the complementarity target Pi dZ + dPi Z = R_c - Pi Z.
  Direction direction(const Iterate& it, const std::vector<ComplexMatrix>& target,
                      const ComplexMatrix& rp, const std::vector<ComplexMatrix>& rd,
                      const std::vector<ComplexMatrix>& zinv) const {
    const std::size_t blocks = it.primal.size();
    ComplexMatrix inner_sum(n_, n_);
    for (std::size_t k = 0; k < blocks; ++k)
      inner_sum += (target[k] + it.primal[k] * rd[k]) * zinv[k] - it.primal[k];
    const ComplexMatrix rhs_matrix = kernels::orbit_apply(p_.orbit, inner_sum) - rp;
    std::vector<double> rhs = to_coords(rhs_matrix);
    kernels::cholesky_solve(schur_, dim_, rhs);

    Direction d;
    d.dual = from_coords(rhs);
    const ComplexMatrix image = kernels::orbit_adjoint_apply(p_.orbit, d.dual);
    for (std::size_t k = 0; k < blocks; ++k) {
      d.slack.push_back(image - rd[k]);
      d.primal.push_back(hermitian_part((target[k] - it.primal[k] * d.slack.back()) * zinv[k]) -
                         it.primal[k]);
    }
    return d;
  }

  // Coordinates in the constraint basis: all Hermitian matrices for the
  // trivial orbit, otherwise the range of the orbit map.
  std::vector<double> to_coords(const ComplexMatrix& h) const {
    std::vector<double> full = kernels::hermitian_coordinates(h);
    if (reduction_.empty()) return full;
    std::vector<double> out(dim_, 0.0);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t c = 0; c < full_dim_; ++c) out[a] += reduction_[a * full_dim_ + c] * full[c];
    return out;
  }

  ComplexMatrix from_coords(const std::vector<double>& y) const {
    if (reduction_.empty()) return kernels::from_hermitian_coordinates(y, n_);
    std::vector<double> full(full_dim_, 0.0);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t c = 0; c < full_dim_; ++c) full[c] += reduction_[a * full_dim_ + c] * y[a];
    return kernels::from_hermitian_coordinates(full, n_);
  }

  const BlockProblem& p_;
  const SolverOptions& opts_;
  std::size_t n_;
  std::size_t full_dim_;
  std::vector<double> reduction_;
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> images_;
  std::vector<double> schur_;
};

// Builds the Solution on the expanded ensemble: renormalizes the measurement
// to sum exactly to I and lifts X just enough to dominate every p_i rho_i.
Solution finalize(const Ensemble& e, std::vector<HermitianMatrix> ops, const HermitianMatrix& x,
                  const RawResult& raw, SolverDiagnostics diag) {
  ComplexMatrix sum(e.dim(), e.dim());
  for (auto& op : ops) {
    op = psd_projection(op);
    sum += op.matrix();
  }
  const HermitianMatrix root = matrix_inv_sqrt(HermitianMatrix::symmetrized(sum));
  for (auto& op : ops) op = op.conjugated_by(root.matrix());

  double lift = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    lift = std::max(lift, -eigh(x - e.weighted_state(i)).min());
  const HermitianMatrix lifted = x + HermitianMatrix::identity(e.dim()) * lift;

  Povm povm(std::move(ops));
  Certificate cert = make_certificate(e, lifted);
  const double pd = correct_detection_probability(e, povm);

  diag.gap_history = raw.gap_history;
  diag.primal_residual = raw.primal_residual;
  diag.dual_residual = raw.dual_residual;
  for (std::size_t i = 0; i < e.size(); ++i)
    diag.max_complementarity =
        std::max(diag.max_complementarity,
                 (cert.slacks[i].matrix() * povm[i].matrix()).frobenius_norm());

  const double gap = std::abs(cert.trace - pd);
  return Solution{std::move(povm), std::move(cert), pd, gap, raw.iterations, std::move(diag)};
}

template <class Expand>
Solution solve_blocks(const Ensemble& e, const BlockProblem& problem, const SolverOptions& opts,
                      SolverDiagnostics diag, Expand expand) {
  opts.validate();
  InteriorPoint ipm(problem, opts);
  RawResult raw = ipm.run();
  auto [ops, x] = expand(raw.point);
  Solution sol = finalize(e, std::move(ops), x, raw, std::move(diag));
  if (!raw.converged) {
    std::ostringstream msg;
    msg << "interior point stopped after " << raw.iterations << " iterations with gap "
        << sol.duality_gap;
    throw MaxIterationsError(msg.str(), std::move(sol));
  }
  return sol;
}

std::vector<ComplexMatrix> group_elements(const UnitaryGroup& g) { return g.elements(); }

// (1/|G|) sum_g U_g X U_g^*
HermitianMatrix group_average(const UnitaryGroup& g, const ComplexMatrix& x) {
  return g.orbit_sum(HermitianMatrix::symmetrized(x)) * (1.0 / static_cast<double>(g.order()));
}

Solution solve_compound(const CguSpec& spec, const SolverOptions& opts, const char* form) {
  const Ensemble e = generate_cgu(spec);
  const std::size_t l = spec.group.order();
  const std::size_t r = spec.generator_factors.size();
  const std::size_t n = e.dim();

  BlockProblem problem;
  problem.n = n;
  problem.orbit = group_elements(spec.group);
  for (const auto& phi : spec.generator_factors)
    problem.costs.push_back(multiply_adjoint(phi, phi) * (1.0 / static_cast<double>(r)));

  SolverDiagnostics diag;
  diag.form = form;
  diag.real_unknowns = r * n * n;
  diag.constraint_blocks = r + 1;
  diag.full_real_unknowns = l * r * n * n;
  diag.full_constraint_blocks = l * r + 1;

  return solve_blocks(e, problem, opts, std::move(diag), [&](const Iterate& it) {
    std::vector<HermitianMatrix> ops;
    ops.reserve(l * r);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t k = 0; k < r; ++k)
        ops.push_back(HermitianMatrix::symmetrized(it.primal[k]).conjugated_by(spec.group[i]));
    return std::pair{std::move(ops), group_average(spec.group, it.dual)};
  });
}

}  // namespace

void SolverOptions::validate() const {
  if (!(gap_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "gap_tol must be positive");
  if (!(feas_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "feas_tol must be positive");
  if (max_iters == 0) throw Error(ErrorCode::InvalidArgument, "max_iters must be positive");
  if (!(complementarity_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "complementarity_tol must be positive");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw Error(ErrorCode::InvalidArgument, "sigma must lie in (0, 1)");
  if (!(step_fraction > 0.0 && step_fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "step_fraction must lie in (0, 1)");
}

Certificate make_certificate(const Ensemble& e, HermitianMatrix x) {
  if (x.dim() != e.dim())
    throw Error(ErrorCode::DimensionMismatch, "certificate dimension does not match the ensemble");
  Certificate cert;
  for (std::size_t i = 0; i < e.size(); ++i) cert.slacks.push_back(x - e.weighted_state(i));
  cert.trace = x.trace();
  cert.x = std::move(x);
  return cert;
}

Solution solve_optimal(const Ensemble& e, const SolverOptions& opts) {
  const std::size_t n = e.dim();
  const std::size_t m = e.size();
  BlockProblem problem;
  problem.n = n;
  problem.orbit = {ComplexMatrix::identity(n)};
  for (std::size_t i = 0; i < m; ++i) problem.costs.push_back(e.weighted_state(i).matrix());

  SolverDiagnostics diag;
  diag.form = "full";
  diag.real_unknowns = diag.full_real_unknowns = m * n * n;
  diag.constraint_blocks = diag.full_constraint_blocks = m + 1;

  return solve_blocks(e, problem, opts, std::move(diag), [](const Iterate& it) {
    std::vector<HermitianMatrix> ops;
    for (const auto& p : it.primal) ops.push_back(HermitianMatrix::symmetrized(p));
    return std::pair{std::move(ops), HermitianMatrix::symmetrized(it.dual)};
  });
}

Solution solve_gu(const GuSpec& spec, const SolverOptions& opts) {
  return solve_compound(CguSpec{spec.group, {spec.generator_factor}}, opts, "gu");
}

Solution solve_cgu(const CguSpec& spec, const SolverOptions& opts) {
  return solve_compound(spec, opts, "cgu");
}

// ---------------------------------------------------------------------------

Povm recover_povm(const Ensemble& e, const Certificate& cert) {
  const std::size_t n = e.dim();
  const std::size_t m = e.size();
  if (cert.x.dim() != n)
    throw Error(ErrorCode::DimensionMismatch, "certificate dimension does not match the ensemble");
  const double x_scale = std::max(std::abs(eigh(cert.x).max()), 1e-300);

  // Orthonormal kernel basis V_i of each slack.
  std::vector<ComplexMatrix> kernels_of;
  std::size_t unknowns = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto eig = eigh(cert.x - e.weighted_state(i));
    const double threshold = 1e-7 * std::max(eig.max(), x_scale);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (eig.eigenvalues[j] <= threshold) cols.push_back(j);
    ComplexMatrix v(n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) v(r, c) = eig.eigenvectors(r, cols[c]);
    unknowns += cols.size() * cols.size();
    kernels_of.push_back(std::move(v));
  }
  if (unknowns == 0)
    throw Error(ErrorCode::RecoveryInfeasible, "no slack has a kernel; the certificate is not optimal");

  // Linear map from stacked coordinates of C_i to coordinates of sum V_i C_i V_i^*.
  const std::size_t rows = n * n;
  std::vector<double> a(rows * unknowns, 0.0);
  std::vector<std::size_t> offset(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t d = kernels_of[i].cols();
    offset[i + 1] = offset[i] + d * d;
    const auto basis = kernels::hermitian_basis(d);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto col = kernels::hermitian_coordinates(
          multiply_adjoint(kernels_of[i] * basis[b], kernels_of[i]));
      for (std::size_t r = 0; r < rows; ++r) a[r * unknowns + offset[i] + b] = col[r];
    }
  }
  const std::vector<double> target = kernels::hermitian_coordinates(ComplexMatrix::identity(n));

  // Orthogonal projector onto {c : A c = target} via the pseudo-inverse of A A^T.
  ComplexMatrix aat(rows, rows);
  for (std::size_t r1 = 0; r1 < rows; ++r1)
    for (std::size_t r2 = 0; r2 < rows; ++r2) {
      double s = 0.0;
      for (std::size_t u = 0; u < unknowns; ++u) s += a[r1 * unknowns + u] * a[r2 * unknowns + u];
      aat(r1, r2) = s;
    }
  const auto aat_eig = eigh(HermitianMatrix::symmetrized(aat));
  const double aat_floor = 1e-12 * std::max(aat_eig.max(), 1e-300);
  const HermitianMatrix aat_pinv =
      aat_eig.apply([aat_floor](double v) { return v > aat_floor ? 1.0 / v : 0.0; });

  auto residual_of = [&](const std::vector<double>& c) {
    std::vector<double> res(target);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t u = 0; u < unknowns; ++u) res[r] -= a[r * unknowns + u] * c[u];
    return res;
  };
  auto project_affine = [&](std::vector<double>& c) {
    const auto res = residual_of(c);
    std::vector<double> y(rows, 0.0);
    for (std::size_t r1 = 0; r1 < rows; ++r1)
      for (std::size_t r2 = 0; r2 < rows; ++r2) y[r1] += aat_pinv(r1, r2).real() * res[r2];
    for (std::size_t u = 0; u < unknowns; ++u)
      for (std::size_t r = 0; r < rows; ++r) c[u] += a[r * unknowns + u] * y[r];
  };
  auto project_psd = [&](std::vector<double>& c) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t d = kernels_of[i].cols();
      if (d == 0) continue;
      std::span<double> block(c.data() + offset[i], d * d);
      const auto ci = psd_projection(
          HermitianMatrix::symmetrized(kernels::from_hermitian_coordinates(block, d)));
      kernels::hermitian_coordinates(ci.matrix(), block);
    }
  };
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };

  // Least-squares fit, then alternate between the PSD cone and the affine set.
  std::vector<double> c(unknowns, 0.0);
  project_affine(c);
  double residual = 0.0;
  for (int pass = 0; pass < 2000; ++pass) {
    project_psd(c);
    residual = norm(residual_of(c));
    if (residual <= 1e-12) break;
    project_affine(c);
  }
  if (residual > 1e-6) {
    std::ostringstream msg;
    msg << "slack kernels cannot complete to the identity (residual " << residual << ")";
    throw Error(ErrorCode::RecoveryInfeasible, msg.str());
  }

  std::vector<HermitianMatrix> ops;
  ComplexMatrix sum(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t d = kernels_of[i].cols();
    ComplexMatrix op(n, n);
    if (d > 0) {
      const ComplexMatrix ci = kernels::from_hermitian_coordinates(
          std::span<const double>(c.data() + offset[i], d * d), d);
      op = multiply_adjoint(kernels_of[i] * ci, kernels_of[i]);
    }
    ops.push_back(HermitianMatrix::symmetrized(op));
    sum += ops.back().matrix();
  }
  const HermitianMatrix root = matrix_inv_sqrt(HermitianMatrix::symmetrized(sum));
  for (auto& op : ops) op = op.conjugated_by(root.matrix());
  return Povm(std::move(ops));
}

OptimalityVerification verify_optimality(const Ensemble& e, const Povm& m, const Certificate& cert,
                                         double tol) {
  if (m.size() != e.size() || m.dim() != e.dim() || cert.x.dim() != e.dim()) {
    std::ostringstream msg;
    msg << "ensemble (" << e.size() << " states, dimension " << e.dim() << "), measurement ("
        << m.size() << " operators, dimension " << m.dim() << ") and certificate (dimension "
        << cert.x.dim() << ") do not match";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  OptimalityVerification v;
  v.slacks_psd = true;
  v.povm_valid = true;
  v.povm_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const HermitianMatrix slack = cert.x - e.weighted_state(i);
    const auto eig = eigh(slack);
    v.slack_min_eigenvalues.push_back(eig.min());
    if (eig.min() < -tol * std::max(1.0, eig.max())) v.slacks_psd = false;

    const double cs = (slack.matrix() * m[i].matrix()).frobenius_norm();
    v.complementarity_residuals.push_back(cs);
    v.max_complementarity = std::max(v.max_complementarity, cs);

    const auto op_eig = eigh(m[i]);
    v.povm_min_eigenvalue = std::min(v.povm_min_eigenvalue, op_eig.min());
    if (op_eig.min() < -tol * std::max(1.0, op_eig.max())) v.povm_valid = false;
  }
  v.complementary = v.max_complementarity <= tol;
  v.completeness_residual = m.completeness_residual();
  if (v.completeness_residual > tol) v.povm_valid = false;
  v.trace_x = cert.x.trace();
  v.p_correct = correct_detection_probability(e, m);
  return v;
}

}  // namespace qdetect
