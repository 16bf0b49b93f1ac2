#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qdetect/errors.hpp"
#include "qdetect/lsm.hpp"

using namespace qdetect;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Ensemble orthonormal_basis(std::size_t n) {
  std::vector<ComplexMatrix> f;
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix v(n, 1);
    v(k, 0) = 1.0;
    f.push_back(v);
  }
  return Ensemble::from_factors(f, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

}  // namespace

TEST_CASE("four reflection-symmetric qubit states") {
  const Ensemble e = generate_cgu(fixtures::reflection_example());
  CHECK(frobenius_distance(factor_gram(e).matrix(), ComplexMatrix::identity(2) * 2.0) <= 1e-12);
  CHECK(frobenius_distance(weighted_gram(e).matrix(), ComplexMatrix::identity(2) * 0.5) <= 1e-12);
  const auto lsm = least_squares_measurement(e);
  for (std::size_t i = 0; i < e.size(); ++i)
    CHECK(frobenius_distance(lsm.factors[i], e.factors()[i] * kInvSqrt2) <= 1e-10);
  for (double v : per_state_detection(e, lsm.povm)) CHECK(v == doctest::Approx(0.5));

  const auto report = check_square_root_condition(e, lsm);
  CHECK(report.condition_holds);
  CHECK(report.alpha == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));

  const HermitianMatrix x = certificate_from_condition(e, lsm, report);
  CHECK(frobenius_distance(x.matrix(), ComplexMatrix::identity(2) * (report.alpha * kInvSqrt2)) <=
        1e-12);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const HermitianMatrix slack = x - e.weighted_state(i);
    CHECK(eigh(slack).min() >= -1e-12);
    CHECK((slack.matrix() * lsm.povm[i].matrix()).frobenius_norm() <= 1e-12);
  }
}

TEST_CASE("phase-symmetric qubit states") {
  const Ensemble e = generate_cgu(fixtures::swap_phase_example());
  CHECK(frobenius_distance(factor_gram(e).matrix(), ComplexMatrix::identity(2) * 2.0) <= 1e-12);
  const auto lsm = least_squares_measurement(e);
  for (std::size_t i = 0; i < e.size(); ++i)
    CHECK(frobenius_distance(lsm.factors[i], e.factors()[i] * kInvSqrt2) <= 1e-10);
  CHECK(correct_detection_probability(e, lsm.povm) == doctest::Approx(0.5));
}

TEST_CASE("orthonormal basis gives the basis measurement") {
  for (std::size_t n : {1u, 2u, 5u}) {
    const Ensemble e = orthonormal_basis(n);
    const auto lsm = least_squares_measurement(e);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(frobenius_distance(lsm.factors[i], e.factors()[i]) <= 1e-12);
    const auto report = check_square_root_condition(e, lsm);
    CHECK(report.condition_holds);
    CHECK(report.alpha == doctest::Approx(1.0 / std::sqrt(static_cast<double>(n))));
    const HermitianMatrix x = certificate_from_condition(e, lsm, report);
    CHECK(frobenius_distance(x.matrix(), ComplexMatrix::identity(n) * (1.0 / n)) <= 1e-12);
  }
}

TEST_CASE("single state has alpha one") {
  const Ensemble e = Ensemble::from_factors({ComplexMatrix(1, 1, {1.0})}, {1.0});
  const auto lsm = least_squares_measurement(e);
  const auto report = check_square_root_condition(e, lsm);
  CHECK(report.condition_holds);
  CHECK(report.alpha == doctest::Approx(1.0));
  CHECK(certificate_from_condition(e, lsm, report)(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("unequal priors break the condition") {
  const Ensemble e = fixtures::pure_pair(0.5, 0.9);
  const auto lsm = least_squares_measurement(e);
  const auto report = check_square_root_condition(e, lsm);
  CHECK_FALSE(report.condition_holds);
  CHECK_THROWS_AS(certificate_from_condition(e, lsm, report), Error);
  const double optimum = 1.0 - oracles::helstrom_closed_form_error(0.9, 0.5);
  CHECK(optimum - correct_detection_probability(e, lsm.povm) > 1e-4);
}

TEST_CASE("transform matches an independent inverse square root") {
  fixtures::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ComplexMatrix> f;
    for (int i = 0; i < 5; ++i) f.push_back(fixtures::random_mixed_factor(4, 1 + i % 2, rng));
    const Ensemble e = Ensemble::from_factors(f, fixtures::random_priors(5, rng));
    const auto lsm = least_squares_measurement(e);
    const ComplexMatrix t = oracles::newton_schulz_inv_sqrt(weighted_gram(e).matrix());
    CHECK(frobenius_distance(lsm.transform.matrix(), t) <= 1e-9);
    CHECK(lsm.povm.completeness_residual() <= 1e-10);
  }
}

TEST_CASE("LSM operators do not depend on the factor choice") {
  fixtures::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ComplexMatrix> f;
    for (int i = 0; i < 4; ++i) f.push_back(fixtures::random_mixed_factor(3, 2, rng));
    const Ensemble e = Ensemble::from_factors(f, fixtures::random_priors(4, rng));
    std::vector<ComplexMatrix> g;
    for (const auto& phi : f) g.push_back(phi * fixtures::random_unitary(2, rng));
    const auto a = least_squares_measurement(e);
    const auto b = least_squares_measurement(e.with_factors(g));
    for (std::size_t i = 0; i < e.size(); ++i)
      CHECK(frobenius_distance(a.povm[i].matrix(), b.povm[i].matrix()) <= 1e-10);
  }
}
