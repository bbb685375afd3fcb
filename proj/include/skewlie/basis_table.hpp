#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "skewlie/matrix.hpp"

namespace skewlie {

/// Values d_{i,j} = Δ(s_{i,j}) for 1 <= i < j <= n: the only data the reconstruction
/// algorithm consumes.
class BasisImageTable {
 public:
  BasisImageTable(const Ring& ring, std::size_t n);

  /// Evaluates `map` on every s_{i,j}.
  static BasisImageTable from_map(const Ring& ring, std::size_t n,
                                  const std::function<SkewMatrix(const SkewMatrix&)>& map);
  /// Images of the inner derivation D^L_a.
  static BasisImageTable forward(const SkewMatrix& a);

  std::size_t dim() const noexcept { return n_; }
  const Ring& ring() const noexcept { return *ring_; }

  /// Requires i < j and a skew image of matching dimension and ring.
  void set(std::size_t i, std::size_t j, SkewMatrix image);
  bool contains(std::size_t i, std::size_t j) const;
  /// Throws SchemaError when the image is missing.
  const SkewMatrix& at(std::size_t i, std::size_t j) const;

  bool complete() const;
  std::vector<std::pair<std::size_t, std::size_t>> missing() const;

  friend bool operator==(const BasisImageTable& a, const BasisImageTable& b) = default;

 private:
  const Ring* ring_;
  std::size_t n_;
  std::vector<std::optional<SkewMatrix>> images_;
};

}  // namespace skewlie
