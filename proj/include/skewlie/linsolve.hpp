#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "skewlie/ring.hpp"

namespace skewlie {

struct LinearRow {
  std::vector<Scalar> coeffs;
  Scalar rhs;
};

class LinearSystem {
 public:
  LinearSystem(const Ring& ring, std::size_t num_unknowns) : ring_(&ring), num_unknowns_(num_unknowns) {}

  /// Throws DimensionMismatch on a wrong-length row, RingMismatch on foreign scalars.
  void add_row(std::vector<Scalar> coeffs, Scalar rhs);

  const Ring& ring() const noexcept { return *ring_; }
  std::size_t num_unknowns() const noexcept { return num_unknowns_; }
  const std::vector<LinearRow>& rows() const noexcept { return rows_; }

 private:
  const Ring* ring_;
  std::size_t num_unknowns_;
  std::vector<LinearRow> rows_;
};

enum class SolveStatus { unique, underdetermined, inconsistent };

struct Solution {
  SolveStatus status;
  /// Present unless inconsistent. Free variables are zero.
  std::optional<std::vector<Scalar>> values;
};

/// Exact Gauss-Jordan elimination over a field; product rings are solved factor by
/// factor. Pivot = first nonzero entry in column order, scanning rows in the given order.
/// Throws UnsupportedOperation for polynomial rings.
Solution solve(const LinearSystem& system);

}  // namespace skewlie
