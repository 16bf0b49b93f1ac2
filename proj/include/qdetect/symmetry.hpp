#pragma once

#include <cstddef>
#include <vector>

#include "qdetect/ensemble.hpp"
#include "qdetect/matrix.hpp"

namespace qdetect {

inline constexpr double kElementMatchTol = 1e-8;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kPhaseTol = 1e-8;

/// Finite group of unitary matrices with the identity first.
///
/// Elements are compared as matrices: U and e^{i t} U are different
/// elements. Indices are zero-based throughout.
class UnitaryGroup {
 public:
  /// Verifies unitarity, identity at index 0, no duplicates, closure and
  /// inverses. Throws NotUnitaryError, NoIdentity, DuplicateElement,
  /// NotClosedError.
  static UnitaryGroup build(std::vector<ComplexMatrix> elements,
                            double element_match_tol = kElementMatchTol);

  /// Closure of `generators` under multiplication, identity first, the rest
  /// in discovery order. Throws InvalidArgument if the closure exceeds
  /// `max_order`.
  static UnitaryGroup generated_by(const std::vector<ComplexMatrix>& generators,
                                   std::size_t max_order = 1024);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().rows(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }

  /// k with U_i U_j = U_k
  std::size_t product(std::size_t i, std::size_t j) const { return mult_[i * order() + j]; }
  /// k with U_k = U_i^*
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  /// r(j, i) = k with U_j^* U_i = U_k
  std::size_t r_map(std::size_t j, std::size_t i) const { return r_[j * order() + i]; }

  /// sum_g U_g Y U_g^*
  HermitianMatrix orbit_sum(const HermitianMatrix& y) const;

 private:
  UnitaryGroup() = default;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::size_t> mult_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> r_;
};

/// Cyclic shift Z x = (x_2, ..., x_l, x_1) and its powers Z^0 .. Z^{l-1}.
UnitaryGroup cyclic_shift_group(std::size_t l);
/// Powers B^0 .. B^{l-1} of B = diag(e^{2 pi i s / l}), s = 0..l-1.
UnitaryGroup diagonal_phase_group(std::size_t l);

/// Orbit of one generator: rho_i = U_i phi phi^* U_i^*.
struct GuSpec {
  UnitaryGroup group;
  ComplexMatrix generator_factor;
};

/// Orbits of several generators under one group.
struct CguSpec {
  UnitaryGroup group;
  std::vector<ComplexMatrix> generator_factors;
};

/// Equal priors 1/m, factors phi_i = U_i phi.
Ensemble generate_gu(const GuSpec& spec);

/// Equal priors 1/(l r), factors phi_ik = U_i phi_k stored at index i * r + k.
Ensemble generate_cgu(const CguSpec& spec);

/// Index of state (i, k) in an ensemble from generate_cgu.
inline std::size_t cgu_index(std::size_t i, std::size_t k, std::size_t r) { return i * r + k; }

/// mu = (Phi Phi^*)^{-1/2} phi; the LSM factors are U_i mu.
ComplexMatrix gu_lsm_generator(const GuSpec& spec);

/// mu_k = (Phi Phi^*)^{-1/2} phi_k; the LSM factors are U_i mu_k.
std::vector<ComplexMatrix> cgu_lsm_generators(const CguSpec& spec);

struct PhaseCommutationReport {
  bool commutes = false;
  /// theta(p, t) in (-pi, pi], row-major |G| x |Q|; empty unless commutes.
  std::vector<double> phases;
  std::size_t q_order = 0;
  /// True when every phase vanishes (the compound set is then GU).
  bool all_phases_trivial = false;
  /// Largest || U_p V_t - e^{i theta} V_t U_p ||_F seen.
  double max_residual = 0.0;

  double phase(std::size_t p, std::size_t t) const { return phases[p * q_order + t]; }
};

/// Tests U_p V_t = e^{i theta(p,t)} V_t U_p for all p, t.
PhaseCommutationReport check_phase_commutation(const UnitaryGroup& g, const UnitaryGroup& q);

/// Single generator mu_bar = (Phi Phi^*)^{-1/2} phi for a compound set whose
/// generators are phi_k = V_k phi; the LSM factors are U_i V_k mu_bar.
/// Throws GeneratorsNotGu or NotPhaseCommuting.
ComplexMatrix cgu_gu_lsm_single_generator(const CguSpec& spec, const UnitaryGroup& q);

/// Group average Pi_ik <- U_i ((1/l) sum_s U_s^* Pi_sk U_s) U_i^* for a
/// measurement indexed like generate_cgu with r operators per group element
/// (r = 1 for GU). Throws CountMismatch.
Povm symmetrize_povm(const UnitaryGroup& g, const Povm& m, std::size_t r);

}  // namespace qdetect
