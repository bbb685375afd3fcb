#pragma once

/**
 * @file oracle.hpp
 * @brief Exhaustive scans over K_n(GF(p)) used as ground truth for the rest of the library.
 *
 * Every element of K_n(GF(p)) is addressed by an index in [0, p^(n(n-1)/2)): the packed
 * upper entries read as base-p digits, first packed entry most significant. Scans refuse
 * to start when that count exceeds the cap.
 *
 * Derivation images inside the oracles are computed with plain square-matrix products,
 * not with the skew shortcuts in lie.hpp, so the two routes check each other.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "skewlie/matrix.hpp"
#include "skewlie/parallel.hpp"

namespace skewlie {

inline constexpr std::uint64_t default_oracle_cap = 10'000'000;

/// p^(n(n-1)/2), or nullopt on 64-bit overflow.
std::optional<std::uint64_t> skew_count(std::size_t n, std::uint64_t p);

class SkewEnumeration {
 public:
  /// Throws CapExceeded when the element count is above `cap`, InvalidRing for a bad p.
  SkewEnumeration(std::size_t n, std::uint64_t p, std::uint64_t cap = default_oracle_cap);

  std::size_t dim() const noexcept { return n_; }
  const Ring& ring() const noexcept { return *ring_; }
  std::uint64_t size() const noexcept { return count_; }
  SkewMatrix at(std::uint64_t index) const;
  /// Inverse of at().
  std::uint64_t index_of(const SkewMatrix& x) const;

 private:
  std::size_t n_;
  std::uint64_t p_;
  const Ring* ring_;
  std::uint64_t count_;
};

/// 2(ax - xa) through full square products.
SkewMatrix reference_lie_derivation(const SkewMatrix& a, const SkewMatrix& x);

struct OracleVerdict {
  std::string descriptor;
  bool verdict = false;
  std::uint64_t checked = 0;
  std::optional<std::string> counterexample;
};

/// True iff extract_constraints reads back every entry of a from 2(a s_{i,j} - s_{i,j} a),
/// for every a in K_n(GF(p)) and every pair i < j.
OracleVerdict brute_force_extraction_identity(std::size_t n, std::uint64_t p,
                                              std::uint64_t cap = default_oracle_cap, Exec exec = Exec::parallel);

/// True iff no a in K_n(GF(p)) has 2(ax - xa) = dx. On false, `counterexample` holds the
/// lowest-index witness.
OracleVerdict brute_force_witness_nonexistence(const SkewMatrix& x, const SkewMatrix& dx, std::uint64_t p,
                                               std::uint64_t cap = default_oracle_cap, Exec exec = Exec::parallel);

/// True iff [x, y] = 0 for every x, y in K_n(GF(p)); the pair count is what the cap bounds.
OracleVerdict brute_force_bracket_vanishes(std::size_t n, std::uint64_t p, std::uint64_t cap = default_oracle_cap,
                                           Exec exec = Exec::parallel);

/// Every generator, every basis image, every upper entry of that image, every nonzero
/// perturbation: true iff each tampered table fails reconstruction. Requires n >= 4; the
/// number of tampered tables is what the cap bounds.
OracleVerdict exhaustive_tamper_sweep(std::size_t n, std::uint64_t p, std::uint64_t cap = default_oracle_cap,
                                      Exec exec = Exec::parallel);

/// Descriptor → verdict, ordered by descriptor.
using OracleResults = std::map<std::string, OracleVerdict>;

/// The suites run by `skewlie oracle`.
OracleResults run_oracle_suites(std::size_t n, std::uint64_t p, std::uint64_t cap = default_oracle_cap,
                                Exec exec = Exec::parallel);

}  // namespace skewlie
