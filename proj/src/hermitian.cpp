#include "qdetect/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qdetect/errors.hpp"

namespace qdetect {
namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p, q) with the unitary G = [[c, s e^{i phi}], [-s e^{-i phi}, c]]
// acting on coordinates p, q:  a <- G^* a G,  v <- v G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const Complex phase = apq / b;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * b);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex g_pq = s * phase;             // G(p, q)
  const Complex g_qp = -s * std::conj(phase);  // G(q, p)

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * g_qp;
    a(k, q) = akp * g_pq + akq * c;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * b;
  a(q, q) = aqq + t * b;

  for (std::size_t k = 0; k < v.rows(); ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * g_qp;
    v(k, q) = vkp * g_pq + vkq * c;
  }
}

}  // namespace

HermitianMatrix EigenDecomposition::apply(const std::function<double(double)>& f) const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix scaled = eigenvectors;
  for (std::size_t j = 0; j < n; ++j) {
    const double fj = f(eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return HermitianMatrix::symmetrized(multiply_adjoint(scaled, eigenvectors));
}

EigenDecomposition eigh(const HermitianMatrix& h, const JacobiOptions& options) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();

  bool converged = (n <= 1 || scale == 0.0);
  for (int sweep = 0; !converged && sweep < options.max_sweeps; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= options.relative_off_diagonal_tol * scale;
  }
  if (!converged) {
    const double residual = off_diagonal_norm(a);
    std::ostringstream msg;
    msg << "Jacobi eigensolver did not converge in " << options.max_sweeps
        << " sweeps (off-diagonal norm " << residual << ")";
    throw NoConvergenceError(msg.str(), residual);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

HermitianMatrix matrix_inv_sqrt(const HermitianMatrix& h, double rank_tol, SingularPolicy policy) {
  const auto eig = eigh(h);
  const double lmax = std::max(eig.max(), 0.0);
  const double floor = rank_tol * lmax;
  if (eig.min() < -floor) {
    std::ostringstream msg;
    msg << "inverse square root of a matrix with eigenvalue " << eig.min();
    throw Error(ErrorCode::NotPsd, msg.str());
  }
  if (eig.min() <= floor && policy == SingularPolicy::Error) {
    std::ostringstream msg;
    msg << "inverse square root of a singular matrix (lambda_min " << eig.min() << ", lambda_max "
        << lmax << ")";
    throw Error(ErrorCode::Singular, msg.str());
  }
  return eig.apply([floor](double x) { return x > floor ? 1.0 / std::sqrt(x) : 0.0; });
}

HermitianMatrix matrix_sqrt(const HermitianMatrix& h, double rank_tol) {
  const auto eig = eigh(h);
  const double lmax = std::max(eig.max(), 0.0);
  if (eig.min() < -rank_tol * std::max(lmax, 1.0)) {
    std::ostringstream msg;
    msg << "square root of a matrix with eigenvalue " << eig.min();
    throw Error(ErrorCode::NotPsd, msg.str());
  }
  return eig.apply([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

bool is_psd(const HermitianMatrix& h, double tol) {
  if (h.dim() == 0) return true;
  const auto eig = eigh(h);
  return eig.min() >= -tol * std::max(1.0, eig.max());
}

HermitianMatrix psd_projection(const HermitianMatrix& h) {
  return eigh(h).apply([](double x) { return std::max(x, 0.0); });
}

ComplexMatrix factorize(const HermitianMatrix& rho, double rank_tol) {
  const auto eig = eigh(rho);
  const std::size_t n = rho.dim();
  const double lmax = std::max(eig.max(), 0.0);
  const double floor = rank_tol * lmax;
  if (eig.min() < -floor) {
    std::ostringstream msg;
    msg << "cannot factorize: eigenvalue " << eig.min() << " is negative";
    throw Error(ErrorCode::NotPsd, msg.str());
  }
  std::vector<std::size_t> kept;
  for (std::size_t j = n; j-- > 0;)
    if (eig.eigenvalues[j] > floor) kept.push_back(j);
  ComplexMatrix phi(n, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const double root = std::sqrt(eig.eigenvalues[kept[c]]);
    for (std::size_t i = 0; i < n; ++i) phi(i, c) = eig.eigenvectors(i, kept[c]) * root;
  }
  return phi;
}

std::optional<ComplexMatrix> cholesky(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = h(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = h(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

ComplexMatrix lower_solve(const ComplexMatrix& l, const ComplexMatrix& b) {
  const std::size_t n = l.rows();
  if (b.rows() != n) throw Error(ErrorCode::DimensionMismatch, "lower_solve: row mismatch");
  ComplexMatrix y = b;
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = y(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y(k, c);
      y(i, c) = s / l(i, i);
    }
  return y;
}

std::optional<HermitianMatrix> inverse_pd(const HermitianMatrix& h) {
  const auto l = cholesky(h);
  if (!l) return std::nullopt;
  const ComplexMatrix linv = lower_solve(*l, ComplexMatrix::identity(h.dim()));
  return HermitianMatrix::symmetrized(adjoint_multiply(linv, linv));
}

}  // namespace qdetect
