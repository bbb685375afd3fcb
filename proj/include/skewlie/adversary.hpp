#pragma once

// Standard adversaries for negative tests. Each takes an honest model and returns a
// corrupted copy that the theorems predict to be detectable.

#include <vector>

#include "skewlie/twolocal.hpp"

namespace skewlie {

/// Δ'(x0) = Δ(x0) + delta, Δ' = Δ elsewhere. Tabulated models stay tabulated. The
/// witness oracle is dropped.
TwoLocalModel tamper_point(const TwoLocalModel& model, const SkewMatrix& x0, const SkewMatrix& delta);

/// Δ'(s_{i,j}) = Δ(s_{i,j}) + delta.
TwoLocalModel tamper_basis(const TwoLocalModel& model, std::size_t i, std::size_t j, const SkewMatrix& delta);

/// Keeps the map, replaces the witness oracle with one answering from `pool`, the entry
/// chosen by a digest of the pair.
TwoLocalModel permute_witness(const TwoLocalModel& model, std::vector<SkewMatrix> pool);

}  // namespace skewlie
