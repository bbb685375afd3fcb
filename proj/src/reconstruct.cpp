#include "skewlie/reconstruct.hpp"

#include <algorithm>
#include <string>

#include "skewlie/error.hpp"
#include "skewlie/lie.hpp"
#include "skewlie/random.hpp"

namespace skewlie {

void EntryConstraintSet::add(std::size_t p, std::size_t q, const Scalar& value, IndexPair source) {
  if (p == q) throw DegenerateIndex("constraints on diagonal entries are meaningless");
  if (p < q) {
    entries_[{p, q}].push_back(EntryConstraint{value, source});
  } else {
    entries_[{q, p}].push_back(EntryConstraint{-value, source});
  }
}

void EntryConstraintSet::merge(const EntryConstraintSet& other) {
  for (const auto& [key, list] : other.entries_) {
    auto& mine = entries_[key];
    mine.insert(mine.end(), list.begin(), list.end());
  }
}

std::size_t EntryConstraintSet::constraint_count() const noexcept {
  std::size_t total = 0;
  for (const auto& [key, list] : entries_) total += list.size();
  return total;
}

bool EntryConstraintSet::consistent() const {
  for (const auto& [key, list] : entries_) {
    for (const auto& c : list) {
      if (!(c.value == list.front().value)) return false;
    }
  }
  return true;
}

EntryConstraintSet extract_constraints(const SkewMatrix& d, std::size_t i, std::size_t j) {
  const std::size_t n = d.dim();
  if (i < 1 || j < 1 || i > n || j > n) throw IndexError("pair index out of range");
  if (i == j) throw DegenerateIndex("extraction needs distinct indices");
  EntryConstraintSet out;
  for (std::size_t p = 1; p <= n; ++p) {
    if (p == i || p == j) continue;
    out.add(p, i, d(p, j).half(), {i, j});
    out.add(p, j, -d(p, i).half(), {i, j});
  }
  return out;
}

ReconstructionReport assemble_generator(const BasisImageTable& table, Exec exec) {
  const std::size_t n = table.dim();
  if (n < 3) throw DimensionMismatch("reconstruction needs n >= 3");
  if (!table.complete()) {
    auto missing = table.missing();
    throw SchemaError("basis image table is incomplete: missing (" + std::to_string(missing.front().first) + "," +
                      std::to_string(missing.front().second) + ") and " + std::to_string(missing.size() - 1) +
                      " more");
  }
  const Ring& ring = table.ring();
  const std::size_t pairs = SkewMatrix::packed_size(n);

  ReconstructionReport report;
  report.n = n;
  report.outside_hypothesis = n < 4;

  std::vector<std::optional<EntryConstraintSet>> parts(pairs);
  parallel_for(pairs, exec, [&](std::size_t k) {
    auto [i, j] = SkewMatrix::packed_pair(n, k);
    parts[k] = extract_constraints(table.at(i, j), i, j);
  });
  EntryConstraintSet merged;
  for (const auto& part : parts) merged.merge(*part);

  for (const auto& [entry, list] : merged.entries()) {
    bool agree = std::all_of(list.begin(), list.end(), [&](const EntryConstraint& c) { return c.value == list.front().value; });
    if (!agree) report.conflicts.push_back(EntryConflict{entry, list});
  }
  if (!report.conflicts.empty()) return report;

  SkewMatrix candidate(ring, n);
  for (const auto& [entry, list] : merged.entries()) candidate.set(entry.first, entry.second, list.front().value);

  std::vector<char> mismatch(pairs, 0);
  parallel_for(pairs, exec, [&](std::size_t k) {
    auto [i, j] = SkewMatrix::packed_pair(n, k);
    mismatch[k] = apply_lie_derivation(candidate, s_unit(ring, n, i, j)) == table.at(i, j) ? 0 : 1;
  });
  for (std::size_t k = 0; k < pairs; ++k) {
    if (mismatch[k]) report.residuals.push_back(SkewMatrix::packed_pair(n, k));
  }
  if (report.residuals.empty()) report.generator = std::move(candidate);
  return report;
}

Scalar block_coefficient(const SkewMatrix& x, const SkewMatrix& a, std::size_t i, std::size_t j) {
  require_compatible(x, a);
  const std::size_t n = x.dim();
  if (i < 1 || j > n || i >= j) throw IndexError("block_coefficient needs 1 <= i < j <= n");
  Scalar sum = x.ring().zero();
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == i || k == j) continue;
    sum += x(i, k) * a(j, k) - a(i, k) * x(j, k);
  }
  return sum.twice();
}

SkewMatrix block_decomposition(const SkewMatrix& x, const SkewMatrix& a) {
  const std::size_t n = x.dim();
  std::vector<Scalar> upper;
  upper.reserve(SkewMatrix::packed_size(n));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) upper.push_back(block_coefficient(x, a, i, j));
  }
  return SkewMatrix(x.ring(), n, std::move(upper));
}

GlobalityReport verify_globality_at(const TwoLocalModel& model, const SkewMatrix& a,
                                    const std::vector<SkewMatrix>& inputs, Exec exec) {
  if (a.dim() != model.dim()) throw DimensionMismatch("generator has the wrong dimension");
  require_same_ring(a.ring(), model.ring());
  GlobalityReport report;
  report.inputs_checked = inputs.size();
  std::vector<std::pair<char, char>> flags(inputs.size(), {0, 0});
  parallel_for(inputs.size(), exec, [&](std::size_t k) {
    SkewMatrix image = model(inputs[k]);
    flags[k].first = image == apply_lie_derivation(a, inputs[k]) ? 0 : 1;
    flags[k].second = image == block_decomposition(inputs[k], a) ? 0 : 1;
  });
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (flags[k].first || flags[k].second) {
      report.violations.push_back(GlobalityViolation{k, inputs[k], flags[k].first != 0, flags[k].second != 0});
    }
  }
  return report;
}

GlobalityReport verify_globality(const TwoLocalModel& model, const SkewMatrix& a, std::size_t sample_budget,
                                 std::uint64_t seed, Exec exec) {
  if (sample_budget == 0) {
    GlobalityReport report;
    report.seed = seed;
    report.vacuous = true;
    return report;
  }
  std::vector<SkewMatrix> inputs;
  bool exhaustive = model.is_tabulated();
  if (exhaustive) {
    inputs = model.table_inputs();
  } else {
    Rng rng(seed);
    for (std::size_t k = 0; k < sample_budget; ++k) inputs.push_back(random_probe(model.ring(), model.dim(), rng));
  }
  GlobalityReport report = verify_globality_at(model, a, inputs, exec);
  report.seed = seed;
  report.exhaustive = exhaustive;
  return report;
}

}  // namespace skewlie
