#pragma once

/**
 * @file funcspace.hpp
 * @brief Lie algebras of skew matrix-valued maps on a finite set, and spatial derivations.
 *
 * A map ω ↦ x(ω) from a finite Ω into skew m×m matrices over a field F is the same thing
 * as a skew m×m matrix over the product ring F^Ω, so the ambient algebra M(Ω, K_m(F)) is
 * modelled as K_m(F^|Ω|). The constant maps ê_{i,j} are the matrix units over the product
 * ring, and s_{i,j} = ê_{i,j} - ê_{j,i} are constant.
 *
 * A derivation of a subalgebra L ⊆ M(Ω, K_m(F)) is spatial when it is x ↦ 2(ax - xa) for
 * an ambient a that need not lie in L. Reconstruction from basis images returns exactly
 * such an ambient generator.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "skewlie/basis_table.hpp"
#include "skewlie/matrix.hpp"
#include "skewlie/parallel.hpp"
#include "skewlie/random.hpp"
#include "skewlie/reconstruct.hpp"
#include "skewlie/twolocal.hpp"

namespace skewlie {

class SpatialSetting {
 public:
  /// omega_size >= 1; m >= 3 (m = 3 is exploratory); base must be a field.
  SpatialSetting(std::size_t omega_size, std::size_t m, const Ring& base);

  std::size_t omega_size() const noexcept { return omega_size_; }
  std::size_t m() const noexcept { return m_; }
  const Ring& base() const noexcept { return *base_; }
  /// base^omega_size.
  const Ring& ambient() const noexcept { return *ambient_; }
  bool exploratory() const noexcept { return m_ < 4; }

 private:
  std::size_t omega_size_;
  std::size_t m_;
  const Ring* base_;
  const Ring* ambient_;
};

enum class SubalgebraKind { full, constant_maps, custom };

class SubalgebraSpec {
 public:
  using Membership = std::function<bool(const SkewMatrix&)>;

  static SubalgebraSpec full(const SpatialSetting& setting);
  static SubalgebraSpec constant_maps(const SpatialSetting& setting);
  /// Throws PreconditionViolated unless `membership` accepts every s_{i,j} and every
  /// element of `basis_sample`.
  static SubalgebraSpec custom(const SpatialSetting& setting, Membership membership,
                               std::vector<SkewMatrix> basis_sample);

  SubalgebraKind kind() const noexcept { return kind_; }
  bool contains(const SkewMatrix& x) const;
  /// Random element of the subalgebra.
  SkewMatrix sample(Rng& rng) const;
  /// Brackets of `trials` sampled pairs stay inside.
  bool closed_under_bracket(Rng& rng, std::size_t trials) const;

 private:
  SubalgebraSpec(const SpatialSetting& setting, SubalgebraKind kind, Membership membership,
                 std::vector<SkewMatrix> basis_sample);

  SpatialSetting setting_;
  SubalgebraKind kind_;
  Membership membership_;
  std::vector<SkewMatrix> basis_sample_;
};

/// ê_{i,j}: the constant map ω ↦ e_{i,j}.
SquareMatrix hat_unit(const SpatialSetting& setting, std::size_t i, std::size_t j);

bool is_constant_map(const SkewMatrix& x);
/// The constant map with value x (x over the base field).
SkewMatrix lift_constant(const SpatialSetting& setting, const SkewMatrix& x);
/// x(ω) for an ambient x.
SkewMatrix project_omega(const SkewMatrix& x, std::size_t omega);
/// Inverse of project_omega over all ω.
SkewMatrix glue(const SpatialSetting& setting, const std::vector<SkewMatrix>& values);
BasisImageTable project_table(const BasisImageTable& table, std::size_t omega);

/// The four projection identities
///   P a ê_{i,i} = P b ê_{i,i},  P a ê_{j,j} = P b ê_{j,j},
///   ê_{i,i} a P = ê_{i,i} b P,  ê_{j,j} a P = ê_{j,j} b P,   P = 1 - (ê_{i,i} + ê_{j,j}),
/// under the precondition D^L_a(s_{i,j}) = D^L_b(s_{i,j}) (else PreconditionViolated).
bool lemma_3_2_check(const SpatialSetting& setting, const SkewMatrix& a, const SkewMatrix& b, std::size_t i,
                     std::size_t j);

/// Δ restricted to the subalgebra: x ↦ 2(ax - xa) for an ambient a. Inputs outside the
/// subalgebra throw PreconditionViolated.
TwoLocalModel spatial_model(const SpatialSetting& setting, const SubalgebraSpec& subalgebra, const SkewMatrix& a);

/// Reconstruction over the product ring; the generator is ambient.
ReconstructionReport reconstruct_spatial(const SpatialSetting& setting, const SubalgebraSpec& subalgebra,
                                         const BasisImageTable& table, Exec exec = Exec::parallel);

/// Reconstruction run independently at each ω over the base field, glued back together.
/// nullopt if any ω fails.
std::optional<SkewMatrix> reconstruct_per_omega(const SpatialSetting& setting, const BasisImageTable& table,
                                                Exec exec = Exec::parallel);

/// Compression of 2(ax - xa) to entries (i,j), (j,i), split through Q = ê_{i,i} + ê_{j,j}
/// and its complement 1 - Q. For skew a, x the Q part vanishes.
struct BlockSplit {
  SquareMatrix through_pair;
  SquareMatrix through_complement;
};
BlockSplit spatial_block_split(const SpatialSetting& setting, const SkewMatrix& a, const SkewMatrix& x,
                               std::size_t i, std::size_t j);

GlobalityReport verify_spatial_at(const SpatialSetting& setting, const SubalgebraSpec& subalgebra,
                                  const TwoLocalModel& model, const SkewMatrix& a,
                                  const std::vector<SkewMatrix>& inputs, Exec exec = Exec::parallel);

/// `budget` seeded samples from the subalgebra: Δ(x) = 2(ax - xa), and Δ(x) equals the
/// sum over i < j of both block-split parts with the pair part zero.
GlobalityReport verify_spatial(const SpatialSetting& setting, const SubalgebraSpec& subalgebra,
                               const TwoLocalModel& model, const SkewMatrix& a, std::size_t budget,
                               std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace skewlie
