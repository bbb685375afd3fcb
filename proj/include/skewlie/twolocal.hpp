#pragma once

/**
 * @file twolocal.hpp
 * @brief 2-local inner derivations: models, witness search, pair checking, and the
 *        associative/Lie transfer.
 *
 * A map Δ on K_n(R) is a 2-local inner derivation when every pair x, y admits a single
 * generator a with Δ(x) = D^L_a(x) and Δ(y) = D^L_a(y). Models are semi-extensional:
 * an evaluation procedure plus an optional witness oracle. Only tabulated models over a
 * finite table can be checked over all pairs; everything else is a seeded falsification
 * harness with a pair budget.
 */

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "skewlie/basis_table.hpp"
#include "skewlie/matrix.hpp"
#include "skewlie/parallel.hpp"

namespace skewlie {

using SkewMap = std::function<SkewMatrix(const SkewMatrix&)>;
using WitnessOracle = std::function<SkewMatrix(const SkewMatrix&, const SkewMatrix&)>;

struct InnerProvenance {
  SkewMatrix generator;
};

struct TabulatedProvenance {
  std::vector<std::pair<SkewMatrix, SkewMatrix>> entries;
};

/// Basis images fixed by a table; other inputs go through the extension rule.
struct BasisDefinedProvenance {
  BasisImageTable table;
};

/// Anything else (tampered or hand-written maps).
struct OpaqueProvenance {
  std::string label;
};

using Provenance = std::variant<InnerProvenance, TabulatedProvenance, BasisDefinedProvenance, OpaqueProvenance>;

class TwoLocalModel {
 public:
  /// Δ = D^L_a, with a as universal witness.
  static TwoLocalModel inner(const SkewMatrix& a);
  /// Finite table of (input, output) pairs; evaluation outside the table throws
  /// PreconditionViolated. Duplicate inputs are rejected.
  static TwoLocalModel tabulated(const Ring& ring, std::size_t n,
                                 std::vector<std::pair<SkewMatrix, SkewMatrix>> entries);
  /// Δ(s_{i,j}) = table(i,j); any other x maps to extension(x).
  static TwoLocalModel basis_defined(BasisImageTable table, SkewMap extension);
  static TwoLocalModel opaque(const Ring& ring, std::size_t n, SkewMap map, std::string label,
                              std::optional<WitnessOracle> witness = std::nullopt);

  std::size_t dim() const noexcept { return n_; }
  const Ring& ring() const noexcept { return *ring_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  const std::optional<WitnessOracle>& witness() const noexcept { return witness_; }
  bool is_tabulated() const noexcept { return std::holds_alternative<TabulatedProvenance>(provenance_); }
  /// Inputs of a tabulated model, in table order.
  std::vector<SkewMatrix> table_inputs() const;

  SkewMatrix operator()(const SkewMatrix& x) const;

  TwoLocalModel with_witness(std::optional<WitnessOracle> witness) const;

 private:
  TwoLocalModel(const Ring& ring, std::size_t n, SkewMap map, Provenance provenance,
                std::optional<WitnessOracle> witness);

  const Ring* ring_;
  std::size_t n_;
  SkewMap map_;
  Provenance provenance_;
  std::optional<WitnessOracle> witness_;
};

/// Coefficient matrix of the linear map a ↦ D^L_a(x): row r is packed coordinate r of
/// the image, column u is packed coordinate u of the generator.
struct DerivationOperator {
  SkewMatrix input;
  std::vector<std::vector<Scalar>> rows;
};

DerivationOperator derivation_operator(const SkewMatrix& x);

/// Skew a with D^L_a(x) = dx and D^L_a(y) = dy, or nullopt. A returned witness has been
/// re-substituted. Throws UnsupportedOperation when the ring cannot be solved over.
std::optional<SkewMatrix> find_pair_witness(const SkewMatrix& x, const SkewMatrix& dx, const SkewMatrix& y,
                                            const SkewMatrix& dy);
/// Same, with precomputed operators for x and y.
std::optional<SkewMatrix> find_pair_witness(const DerivationOperator& ox, const SkewMatrix& dx,
                                            const DerivationOperator& oy, const SkewMatrix& dy);

struct PairFailure {
  std::size_t index;
  SkewMatrix x;
  SkewMatrix y;
};

struct WitnessMismatch {
  std::size_t index;
  SkewMatrix x;
  SkewMatrix y;
  SkewMatrix witness;
};

struct TwoLocalReport {
  std::uint64_t seed = 0;
  std::size_t pairs_checked = 0;
  bool exhaustive = false;
  bool vacuous = false;
  std::vector<PairFailure> failures;
  std::vector<WitnessMismatch> oracle_mismatches;

  bool passed() const noexcept { return failures.empty() && oracle_mismatches.empty(); }
};

/// Tabulated models: every unordered pair of table inputs (x = y included), budget ignored
/// unless zero. Other models: `pair_budget` seeded random pairs. A budget of zero yields a
/// vacuous report. When the model has a witness oracle its answers are re-substituted too.
TwoLocalReport check_two_local(const TwoLocalModel& model, std::size_t pair_budget, std::uint64_t seed,
                               Exec exec = Exec::parallel);

/// Substitution check of the witness oracle alone on `pair_budget` seeded probe pairs; no
/// linear solving, so any ring works. Budget 0 or a missing oracle gives a vacuous report.
TwoLocalReport cross_check_witnesses(const TwoLocalModel& model, std::size_t pair_budget, std::uint64_t seed,
                                     Exec exec = Exec::parallel);

/// Uniform form of the component-agreement lemma: given D^L_a(s_{i,j}) == D^L_b(s_{i,j})
/// (else PreconditionViolated), returns whether a and b agree at (k,i), (k,j), (i,k),
/// (j,k) for every k outside {i, j}.
bool lemma_2_4_agreement(const SkewMatrix& a, const SkewMatrix& b, std::size_t i, std::size_t j);

// --- associative / Lie transfer on M_n(R) -------------------------------------------

enum class DerivationSide { lie, associative };

using SquareMap = std::function<SquareMatrix(const SquareMatrix&)>;
using SquareWitnessOracle = std::function<SquareMatrix(const SquareMatrix&, const SquareMatrix&)>;

/// 2-local model on M_n(R), either for (M_n, [,]) with inner derivations D^L_w or for
/// the associative ring with D_w(x) = wx - xw.
struct MatrixTwoLocalModel {
  const Ring* ring;
  std::size_t n;
  DerivationSide side;
  SquareMap map;
  std::optional<SquareWitnessOracle> witness;
};

MatrixTwoLocalModel inner_matrix_model(const SquareMatrix& generator, DerivationSide side);
/// The Lie-side view of a skew model: inputs must be skew.
MatrixTwoLocalModel embed(const TwoLocalModel& model);

/// Lie → associative doubles the witness, associative → Lie halves it. The map is
/// unchanged. Throws PreconditionViolated without a witness oracle.
MatrixTwoLocalModel transfer(const MatrixTwoLocalModel& model);

/// Checks map(x) and map(y) against the side's defining equation for witness(x, y).
bool satisfies_defining_equations(const MatrixTwoLocalModel& model, const SquareMatrix& x, const SquareMatrix& y);

}  // namespace skewlie
