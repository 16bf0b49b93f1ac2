#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qdetect/ensemble.hpp"
#include "qdetect/errors.hpp"

using namespace qdetect;

namespace {

DensityOperator basis_state(std::size_t n, std::size_t k) {
  std::vector<double> d(n, 0.0);
  d[k] = 1.0;
  return DensityOperator(HermitianMatrix::real_diagonal(d));
}

Ensemble basis_ensemble(std::size_t n) {
  std::vector<DensityOperator> states;
  for (std::size_t k = 0; k < n; ++k) states.push_back(basis_state(n, k));
  return Ensemble::build(std::move(states), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("density operator checks") {
  CHECK_NOTHROW(DensityOperator(HermitianMatrix::identity(2) * 0.5));
  CHECK(code_of([] { DensityOperator(HermitianMatrix::identity(2)); }) ==
        ErrorCode::InvalidArgument);
  const double d[] = {1.5, -0.5};
  CHECK(code_of([&] { DensityOperator(HermitianMatrix::real_diagonal(d)); }) == ErrorCode::NotPsd);
}

TEST_CASE("ensemble construction") {
  const Ensemble e = basis_ensemble(2);
  CHECK(e.size() == 2);
  CHECK(e.dim() == 2);
  CHECK(e.weighted_factor_matrix().cols() == 2);

  std::vector<DensityOperator> states{basis_state(2, 0), basis_state(2, 1)};
  CHECK(code_of([&] { Ensemble::build(states, {0.5, 0.6}); }) == ErrorCode::PriorsInvalid);
  CHECK(code_of([&] { Ensemble::build(states, {1.0, 0.0}); }) == ErrorCode::PriorsInvalid);
  CHECK(code_of([&] { Ensemble::build(states, {1.0}); }) != ErrorCode::PriorsInvalid);

  try {
    Ensemble::build({basis_state(3, 0), basis_state(3, 1)}, {0.5, 0.5});
    FAIL("expected SpanDeficient");
  } catch (const SpanDeficientError& err) {
    CHECK(err.code() == ErrorCode::SpanDeficient);
    CHECK(err.deficiency() == 1);
  }

  try {
    Ensemble::build(states, {0.5, 0.6});
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("priors must sum to 1") != std::string::npos);
  }
}

TEST_CASE("the four symmetric qubit states span with joint rank 2") {
  const auto spec = fixtures::swap_phase_example();
  const Ensemble e = generate_cgu(spec);
  CHECK(e.size() == 4);
  const auto eig = eigh(weighted_gram(e));
  CHECK(eig.min() > 0.1);
  for (double p : e.priors()) CHECK(p == doctest::Approx(0.25));
}

TEST_CASE("detection probabilities") {
  const Ensemble e = basis_ensemble(3);
  std::vector<HermitianMatrix> matched;
  for (const auto& s : e.states()) matched.push_back(s.matrix());
  CHECK(correct_detection_probability(e, Povm(matched)) == doctest::Approx(1.0));
  for (double v : per_state_detection(e, Povm(matched))) CHECK(v == doctest::Approx(1.0));

  std::vector<HermitianMatrix> uniform(3, HermitianMatrix::identity(3) * (1.0 / 3.0));
  CHECK(correct_detection_probability(e, Povm(uniform)) == doctest::Approx(1.0 / 3.0));
  for (double v : per_state_detection(e, Povm(uniform))) CHECK(v == doctest::Approx(1.0 / 3.0));

  std::vector<HermitianMatrix> wrong(2, HermitianMatrix::identity(3) * 0.5);
  CHECK_THROWS_AS(per_state_detection(e, Povm(wrong)), Error);
}

TEST_CASE("povm validation") {
  CHECK_THROWS_AS(Povm({HermitianMatrix::identity(2) * 0.5}), Error);
  const double neg[] = {1.2, 0.5};
  const double rest[] = {-0.2, 0.5};
  CHECK_THROWS_AS(Povm({HermitianMatrix::real_diagonal(neg), HermitianMatrix::real_diagonal(rest)}),
                  Error);
  const Povm unchecked = Povm::unchecked({HermitianMatrix::identity(2) * 0.5});
  CHECK(unchecked.completeness_residual() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("detection probability is invariant under a common unitary") {
  fixtures::Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ComplexMatrix> factors;
    for (int i = 0; i < 4; ++i) factors.push_back(fixtures::random_mixed_factor(3, 2, rng));
    const auto priors = fixtures::random_priors(4, rng);
    const Ensemble e = Ensemble::from_factors(factors, priors);
    std::vector<HermitianMatrix> ops;
    const HermitianMatrix s = HermitianMatrix::identity(3) * 0.25;
    for (int i = 0; i < 4; ++i) ops.push_back(s);
    const ComplexMatrix a = fixtures::gaussian_matrix(3, 3, rng) * 0.05;
    ops[0] = ops[0] + HermitianMatrix::symmetrized(a);
    ops[1] = ops[1] - HermitianMatrix::symmetrized(a);
    const Povm m(ops);

    const ComplexMatrix u = fixtures::random_unitary(3, rng);
    std::vector<ComplexMatrix> rotated;
    for (const auto& f : factors) rotated.push_back(u * f);
    std::vector<HermitianMatrix> rotated_ops;
    for (const auto& op : ops) rotated_ops.push_back(op.conjugated_by(u));
    CHECK(correct_detection_probability(Ensemble::from_factors(rotated, priors), Povm(rotated_ops)) ==
          doctest::Approx(correct_detection_probability(e, m)).epsilon(1e-12));
  }
}

TEST_CASE("with_factors keeps states and rejects foreign factors") {
  fixtures::Rng rng(4);
  const Ensemble e = Ensemble::from_factors(
      {fixtures::random_mixed_factor(2, 2, rng), fixtures::random_mixed_factor(2, 1, rng)},
      {0.5, 0.5});
  std::vector<ComplexMatrix> rotated{e.factors()[0] * fixtures::random_unitary(2, rng),
                                     e.factors()[1] * Complex(0.0, 1.0)};
  const Ensemble f = e.with_factors(rotated);
  CHECK(frobenius_distance(weighted_gram(f).matrix(), weighted_gram(e).matrix()) <= 1e-14);
  CHECK_THROWS_AS(e.with_factors({e.factors()[1], e.factors()[0]}), Error);
}
