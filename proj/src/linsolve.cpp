#include "skewlie/linsolve.hpp"

#include <utility>

#include "skewlie/error.hpp"

namespace skewlie {

void LinearSystem::add_row(std::vector<Scalar> coeffs, Scalar rhs) {
  if (coeffs.size() != num_unknowns_) throw DimensionMismatch("row length does not match unknown count");
  for (const auto& c : coeffs) require_same_ring(c.ring(), *ring_);
  require_same_ring(rhs.ring(), *ring_);
  rows_.push_back(LinearRow{std::move(coeffs), std::move(rhs)});
}

namespace {

Solution solve_field(const LinearSystem& system) {
  const Ring& ring = system.ring();
  const std::size_t cols = system.num_unknowns();
  std::vector<std::vector<Scalar>> m;
  m.reserve(system.rows().size());
  for (const auto& row : system.rows()) {
    std::vector<Scalar> r = row.coeffs;
    r.push_back(row.rhs);
    m.push_back(std::move(r));
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < m.size(); ++col) {
    std::size_t r = pivot_row;
    while (r < m.size() && m[r][col].is_zero()) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[pivot_row]);
    auto& prow = m[pivot_row];
    Scalar scale = prow[col].inv();
    for (std::size_t c = col; c <= cols; ++c) prow[c] = prow[c] * scale;
    for (std::size_t other = 0; other < m.size(); ++other) {
      if (other == pivot_row || m[other][col].is_zero()) continue;
      Scalar factor = m[other][col];
      for (std::size_t c = col; c <= cols; ++c) {
        if (!prow[c].is_zero()) m[other][c] -= factor * prow[c];
      }
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }

  for (std::size_t r = pivot_row; r < m.size(); ++r) {
    if (!m[r][cols].is_zero()) return Solution{SolveStatus::inconsistent, std::nullopt};
  }
  std::vector<Scalar> values(cols, ring.zero());
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) values[pivot_cols[k]] = m[k][cols];
  auto status = pivot_cols.size() == cols ? SolveStatus::unique : SolveStatus::underdetermined;
  return Solution{status, std::move(values)};
}

Solution solve_product(const LinearSystem& system) {
  const Ring& ring = system.ring();
  const Ring& base = ring.base();
  const std::size_t factors = ring.size();
  std::vector<std::vector<Scalar>> per_factor;
  bool underdetermined = false;
  for (std::size_t k = 0; k < factors; ++k) {
    LinearSystem projected(base, system.num_unknowns());
    for (const auto& row : system.rows()) {
      std::vector<Scalar> coeffs;
      coeffs.reserve(row.coeffs.size());
      for (const auto& c : row.coeffs) coeffs.push_back(c.component(k));
      projected.add_row(std::move(coeffs), row.rhs.component(k));
    }
    Solution part = solve(projected);
    if (part.status == SolveStatus::inconsistent) return Solution{SolveStatus::inconsistent, std::nullopt};
    underdetermined = underdetermined || part.status == SolveStatus::underdetermined;
    per_factor.push_back(std::move(*part.values));
  }
  std::vector<Scalar> values;
  values.reserve(system.num_unknowns());
  for (std::size_t u = 0; u < system.num_unknowns(); ++u) {
    std::vector<Scalar> comps;
    comps.reserve(factors);
    for (std::size_t k = 0; k < factors; ++k) comps.push_back(per_factor[k][u]);
    values.push_back(ring.tuple(std::move(comps)));
  }
  return Solution{underdetermined ? SolveStatus::underdetermined : SolveStatus::unique, std::move(values)};
}

}  // namespace

Solution solve(const LinearSystem& system) {
  const Ring& ring = system.ring();
  if (ring.is_field()) return solve_field(system);
  if (ring.kind() == RingKind::product) return solve_product(system);
  throw UnsupportedOperation("linear solving is not supported over " + ring.name());
}

}  // namespace skewlie
