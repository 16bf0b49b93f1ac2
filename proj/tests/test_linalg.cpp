#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qdetect/errors.hpp"
#include "qdetect/hermitian.hpp"

using namespace qdetect;

namespace {

HermitianMatrix diag2(double a, double b) {
  const double d[] = {a, b};
  return HermitianMatrix::real_diagonal(d);
}

HermitianMatrix random_hermitian(std::size_t n, fixtures::Rng& rng) {
  return HermitianMatrix::symmetrized(fixtures::gaussian_matrix(n, n, rng));
}

HermitianMatrix random_psd(std::size_t n, std::size_t rank, fixtures::Rng& rng) {
  return HermitianMatrix::outer(fixtures::gaussian_matrix(n, rank, rng));
}

}  // namespace

TEST_CASE("complex matrix arithmetic") {
  const ComplexMatrix a(2, 2, {1.0, Complex(0, 1), 2.0, 3.0});
  const ComplexMatrix b(2, 1, {1.0, -1.0});
  const ComplexMatrix ab = a * b;
  CHECK(ab(0, 0) == Complex(1, -1));
  CHECK(ab(1, 0) == Complex(-1, 0));
  CHECK(a.adjoint()(0, 1) == Complex(2, 0));
  CHECK(a.adjoint()(1, 0) == Complex(0, -1));
  CHECK(a.trace() == Complex(4, 0));
  CHECK(frobenius_distance(multiply_adjoint(a, a), a * a.adjoint()) == doctest::Approx(0.0));
  CHECK(frobenius_distance(adjoint_multiply(a, a), a.adjoint() * a) == doctest::Approx(0.0));
  CHECK_THROWS_AS(a * ComplexMatrix(3, 1), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0}), Error);
}

TEST_CASE("hconcat and column blocks") {
  const ComplexMatrix x(2, 1, {1.0, 2.0});
  const ComplexMatrix y(2, 2, {3.0, 4.0, 5.0, 6.0});
  const ComplexMatrix blocks[] = {x, y};
  const ComplexMatrix c = hconcat(blocks);
  CHECK(c.cols() == 3);
  CHECK(frobenius_distance(c.column_block(1, 2), y) == 0.0);
}

TEST_CASE("hermitian matrix validation") {
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 2, {1.0, 2.0, 3.0, 1.0})), Error);
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 3)), Error);
  const HermitianMatrix h(ComplexMatrix(2, 2, {1.0, Complex(0, 1), Complex(0, -1), 2.0}));
  CHECK(h.trace() == doctest::Approx(3.0));
  CHECK(HermitianMatrix::outer(ComplexMatrix(2, 1, {1.0, 1.0})).trace() == doctest::Approx(2.0));
}

TEST_CASE("eigh on small fixed inputs") {
  auto id = eigh(HermitianMatrix::identity(2));
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(id.eigenvalues[1] == doctest::Approx(1.0));
  auto d = eigh(diag2(9.0, 4.0));
  CHECK(d.eigenvalues[0] == doctest::Approx(4.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(9.0));
  auto g = eigh(HermitianMatrix::identity(2) * 2.0);
  CHECK(g.min() == doctest::Approx(2.0));
  CHECK(g.max() == doctest::Approx(2.0));
}

TEST_CASE("eigh reconstructs random hermitian matrices") {
  fixtures::Rng rng(20240101);
  std::uniform_int_distribution<std::size_t> dim(1, 32);
  double worst = 0.0;
  double worst_orth = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = trial < 9000 ? 1 + trial % 8 : dim(rng);
    const HermitianMatrix h = random_hermitian(n, rng);
    const auto eig = eigh(h);
    for (std::size_t k = 1; k < n; ++k) REQUIRE(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
    const double scale = std::max(1.0, h.frobenius_norm());
    const ComplexMatrix& v = eig.eigenvectors;
    worst = std::max(worst, frobenius_distance(eig.apply([](double x) { return x; }).matrix(),
                                               h.matrix()) / scale);
    worst_orth = std::max(worst_orth,
                          frobenius_distance(adjoint_multiply(v, v), ComplexMatrix::identity(n)));
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_orth <= 1e-12);
}

TEST_CASE("inverse square root") {
  const auto r = matrix_inv_sqrt(HermitianMatrix::identity(2) * 2.0);
  CHECK(frobenius_distance(r.matrix(), ComplexMatrix::identity(2) * (1.0 / std::sqrt(2.0))) <=
        1e-14);
  CHECK(frobenius_distance(matrix_inv_sqrt(HermitianMatrix::identity(5)).matrix(),
                           ComplexMatrix::identity(5)) <= 1e-14);
  const auto d = matrix_inv_sqrt(diag2(4.0, 9.0));
  CHECK(d(0, 0).real() == doctest::Approx(0.5));
  CHECK(d(1, 1).real() == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(matrix_inv_sqrt(diag2(1.0, 0.0)), Error);
  CHECK_THROWS_AS(matrix_inv_sqrt(diag2(1.0, -1.0)), Error);
  const auto p = matrix_inv_sqrt(diag2(4.0, 0.0), kDefaultRankTol, SingularPolicy::PseudoInverse);
  CHECK(p(0, 0).real() == doctest::Approx(0.5));
  CHECK(p(1, 1).real() == 0.0);

  fixtures::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix h = random_psd(6, 6, rng) + HermitianMatrix::identity(6) * 0.1;
    const ComplexMatrix t = matrix_inv_sqrt(h).matrix();
    CHECK(frobenius_distance(t * h.matrix() * t, ComplexMatrix::identity(6)) <= 1e-10);
  }
}

TEST_CASE("square root") {
  CHECK(frobenius_distance(matrix_sqrt(HermitianMatrix::identity(2) * 4.0).matrix(),
                           ComplexMatrix::identity(2) * 2.0) <= 1e-14);
  CHECK(frobenius_distance(matrix_sqrt(diag2(0.0, 1.0)).matrix(), diag2(0.0, 1.0).matrix()) <=
        1e-14);
  CHECK_THROWS_AS(matrix_sqrt(diag2(1.0, -0.5)), Error);
  fixtures::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const HermitianMatrix h = random_psd(1 + trial % 7, 1 + trial % 3, rng);
    const ComplexMatrix s = matrix_sqrt(h).matrix();
    CHECK(frobenius_distance(s * s, h.matrix()) <= 1e-10 * h.frobenius_norm());
  }
}

TEST_CASE("psd test and projection") {
  CHECK(is_psd(HermitianMatrix::identity(2), 1e-9));
  CHECK_FALSE(is_psd(diag2(1.0, -1.0), 1e-9));
  CHECK(is_psd(diag2(1.0, -1e-12), 1e-9));
  const auto p = psd_projection(diag2(2.0, -1.0));
  CHECK(frobenius_distance(p.matrix(), diag2(2.0, 0.0).matrix()) <= 1e-15);
}

TEST_CASE("factorize") {
  const ComplexMatrix f = factorize(diag2(1.0, 0.0));
  REQUIRE(f.cols() == 1);
  CHECK(std::abs(f(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(f(1, 0)) == doctest::Approx(0.0));
  const ComplexMatrix h = factorize(HermitianMatrix::identity(2) * 0.5);
  CHECK(h.cols() == 2);
  CHECK(frobenius_distance(multiply_adjoint(h, h), ComplexMatrix::identity(2) * 0.5) <= 1e-15);

  fixtures::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const std::size_t rank = 1 + trial % n;
    HermitianMatrix rho = random_psd(n, rank, rng);
    rho = rho * (1.0 / rho.trace());
    const ComplexMatrix phi = factorize(rho);
    CHECK(phi.cols() == rank);
    CHECK(frobenius_distance(multiply_adjoint(phi, phi), rho.matrix()) <= 1e-10);
    const ComplexMatrix q = fixtures::random_unitary(phi.cols(), rng);
    const ComplexMatrix phiq = phi * q;
    CHECK(frobenius_distance(multiply_adjoint(phiq, phiq), rho.matrix()) <= 1e-10);
  }
}

TEST_CASE("cholesky and inverse") {
  fixtures::Rng rng(5);
  const HermitianMatrix h = random_psd(5, 5, rng) + HermitianMatrix::identity(5);
  const auto l = cholesky(h);
  REQUIRE(l);
  CHECK(frobenius_distance(multiply_adjoint(*l, *l), h.matrix()) <= 1e-12);
  const auto inv = inverse_pd(h);
  REQUIRE(inv);
  CHECK(frobenius_distance(inv->matrix() * h.matrix(), ComplexMatrix::identity(5)) <= 1e-12);
  CHECK_FALSE(cholesky(diag2(1.0, -1.0)));
  CHECK_FALSE(inverse_pd(diag2(1.0, 0.0)));
}
