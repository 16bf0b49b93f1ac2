#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qdetect/kernels.hpp"

using namespace qdetect;

namespace {

struct Operands {
  std::vector<ComplexMatrix> orbit, images, primal, dual_inverse;
  std::vector<double> reduction;
  std::size_t dim = 0;
  kernels::SchurOperands view() const { return {orbit, images, primal, dual_inverse, reduction}; }
};

Operands make_operands(const UnitaryGroup& g, std::size_t blocks, fixtures::Rng& rng) {
  Operands ops;
  const std::size_t n = g.dim();
  ops.orbit = g.elements();
  ops.reduction = kernels::orbit_range_basis(ops.orbit, n);
  const std::size_t full = kernels::hermitian_dim(n);
  ops.dim = ops.reduction.empty() ? full : ops.reduction.size() / full;
  for (std::size_t a = 0; a < ops.dim; ++a) {
    std::vector<double> e(full, 0.0);
    if (ops.reduction.empty())
      e[a] = 1.0;
    else
      std::copy_n(ops.reduction.begin() + static_cast<std::ptrdiff_t>(a * full), full, e.begin());
    ops.images.push_back(kernels::orbit_adjoint_apply(ops.orbit, kernels::from_hermitian_coordinates(e, n)));
  }
  for (std::size_t k = 0; k < blocks; ++k) {
    const ComplexMatrix p = fixtures::gaussian_matrix(n, n, rng);
    const ComplexMatrix z = fixtures::gaussian_matrix(n, n, rng);
    ops.primal.push_back(multiply_adjoint(p, p) + ComplexMatrix::identity(n) * 0.1);
    ops.dual_inverse.push_back(multiply_adjoint(z, z) + ComplexMatrix::identity(n) * 0.1);
  }
  return ops;
}

}  // namespace

TEST_CASE("hermitian coordinates are an isometry") {
  fixtures::Rng rng(2);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto a = HermitianMatrix::symmetrized(fixtures::gaussian_matrix(n, n, rng));
    const auto b = HermitianMatrix::symmetrized(fixtures::gaussian_matrix(n, n, rng));
    const auto ca = kernels::hermitian_coordinates(a.matrix());
    const auto cb = kernels::hermitian_coordinates(b.matrix());
    double dot = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) dot += ca[i] * cb[i];
    CHECK(dot == doctest::Approx(real_trace_product(a.matrix(), b.matrix())).epsilon(1e-12));
    CHECK(frobenius_distance(kernels::from_hermitian_coordinates(ca, n), a.matrix()) <= 1e-14);
  }
  const auto basis = kernels::hermitian_basis(3);
  REQUIRE(basis.size() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      CHECK(real_trace_product(basis[i], basis[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("orbit maps are adjoint") {
  fixtures::Rng rng(6);
  const auto g = fixtures::conjugated(fixtures::quaternion_group(2), fixtures::random_unitary(4, rng));
  const auto y = HermitianMatrix::symmetrized(fixtures::gaussian_matrix(4, 4, rng)).matrix();
  const auto x = HermitianMatrix::symmetrized(fixtures::gaussian_matrix(4, 4, rng)).matrix();
  CHECK(real_trace_product(x, kernels::orbit_apply(g.elements(), y)) ==
        doctest::Approx(real_trace_product(kernels::orbit_adjoint_apply(g.elements(), x), y)));
}

TEST_CASE("orbit range basis spans the commutant") {
  fixtures::Rng rng(8);
  const auto g = fixtures::conjugated(fixtures::quaternion_group(2), fixtures::random_unitary(4, rng));
  const auto basis = kernels::orbit_range_basis(g.elements(), 4);
  // Two copies of one irreducible two-dimensional representation: the
  // commutant is M_2 (x) I_2, four real dimensions.
  CHECK(basis.size() == 4 * 16);
  CHECK(kernels::orbit_range_basis(std::vector<ComplexMatrix>{ComplexMatrix::identity(3)}, 3).empty());
}

TEST_CASE("serial and parallel Schur assembly agree") {
  fixtures::Rng rng(12);
  std::vector<UnitaryGroup> groups{UnitaryGroup::build({ComplexMatrix::identity(5)}),
                                   fixtures::conjugated(fixtures::dihedral_permutations(4),
                                                        fixtures::random_unitary(4, rng)),
                                   fixtures::conjugated(cyclic_shift_group(6),
                                                        fixtures::random_unitary(6, rng))};
  for (const auto& g : groups) {
    const Operands ops = make_operands(g, 3, rng);
    std::vector<double> serial(ops.dim * ops.dim), parallel(ops.dim * ops.dim);
    kernels::assemble_schur_serial(ops.view(), serial);
    kernels::assemble_schur_parallel(ops.view(), parallel);
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);

    double asym = 0.0;
    for (std::size_t a = 0; a < ops.dim; ++a)
      for (std::size_t b = 0; b < ops.dim; ++b)
        asym = std::max(asym, std::abs(serial[a * ops.dim + b] - serial[b * ops.dim + a]));
    CHECK(asym <= 1e-10);
    CHECK(kernels::cholesky_in_place(serial, ops.dim));
  }
}

TEST_CASE("real cholesky solve") {
  std::vector<double> a{4.0, 2.0, 0.4, 2.0, 5.0, 1.0, 0.4, 1.0, 3.0};
  const std::vector<double> orig = a;
  std::vector<double> b{1.0, 2.0, 3.0};
  REQUIRE(kernels::cholesky_in_place(a, 3));
  kernels::cholesky_solve(a, 3, b);
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += orig[i * 3 + j] * b[j];
    CHECK(s == doctest::Approx(1.0 + i));
  }
  std::vector<double> bad{1.0, 2.0, 2.0, 1.0};
  CHECK_FALSE(kernels::cholesky_in_place(bad, 2));
}
