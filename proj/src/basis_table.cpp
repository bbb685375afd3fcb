#include "skewlie/basis_table.hpp"

#include <string>

#include "skewlie/error.hpp"
#include "skewlie/lie.hpp"

namespace skewlie {

BasisImageTable::BasisImageTable(const Ring& ring, std::size_t n)
    : ring_(&ring), n_(n), images_(SkewMatrix::packed_size(n)) {
  if (n < 2) throw DimensionMismatch("basis tables need n >= 2");
}

BasisImageTable BasisImageTable::from_map(const Ring& ring, std::size_t n,
                                          const std::function<SkewMatrix(const SkewMatrix&)>& map) {
  BasisImageTable table(ring, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) table.set(i, j, map(s_unit(ring, n, i, j)));
  }
  return table;
}

BasisImageTable BasisImageTable::forward(const SkewMatrix& a) {
  return from_map(a.ring(), a.dim(), [&a](const SkewMatrix& s) { return apply_lie_derivation(a, s); });
}

void BasisImageTable::set(std::size_t i, std::size_t j, SkewMatrix image) {
  if (image.dim() != n_) throw DimensionMismatch("basis image has the wrong dimension");
  require_same_ring(image.ring(), *ring_);
  images_[SkewMatrix::packed_index(n_, i, j)] = std::move(image);
}

bool BasisImageTable::contains(std::size_t i, std::size_t j) const {
  return images_[SkewMatrix::packed_index(n_, i, j)].has_value();
}

const SkewMatrix& BasisImageTable::at(std::size_t i, std::size_t j) const {
  const auto& slot = images_[SkewMatrix::packed_index(n_, i, j)];
  if (!slot) throw SchemaError("basis image for (" + std::to_string(i) + "," + std::to_string(j) + ") is missing");
  return *slot;
}

bool BasisImageTable::complete() const {
  for (const auto& slot : images_) {
    if (!slot) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> BasisImageTable::missing() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (!images_[k]) out.push_back(SkewMatrix::packed_pair(n_, k));
  }
  return out;
}

}  // namespace skewlie
