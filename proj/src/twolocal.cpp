#include "skewlie/twolocal.hpp"

#include <unordered_map>

#include "skewlie/error.hpp"
#include "skewlie/lie.hpp"
#include "skewlie/linsolve.hpp"
#include "skewlie/random.hpp"

namespace skewlie {

namespace {

std::string skew_key(const SkewMatrix& x) {
  std::string key;
  for (const auto& s : x.packed()) {
    key += s.to_string();
    key += ';';
  }
  return key;
}

void check_pair(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > n || j > n) throw IndexError("pair index out of range");
  if (i == j) throw DegenerateIndex("pair indices must differ");
}

}  // namespace

// ---------------------------------------------------------------------------
// TwoLocalModel

TwoLocalModel::TwoLocalModel(const Ring& ring, std::size_t n, SkewMap map, Provenance provenance,
                             std::optional<WitnessOracle> witness)
    : ring_(&ring), n_(n), map_(std::move(map)), provenance_(std::move(provenance)), witness_(std::move(witness)) {}

TwoLocalModel TwoLocalModel::inner(const SkewMatrix& a) {
  return TwoLocalModel(
      a.ring(), a.dim(), [a](const SkewMatrix& x) { return apply_lie_derivation(a, x); }, InnerProvenance{a},
      WitnessOracle([a](const SkewMatrix&, const SkewMatrix&) { return a; }));
}

TwoLocalModel TwoLocalModel::tabulated(const Ring& ring, std::size_t n,
                                       std::vector<std::pair<SkewMatrix, SkewMatrix>> entries) {
  auto lookup = std::make_shared<std::unordered_map<std::string, SkewMatrix>>();
  for (const auto& [input, output] : entries) {
    if (input.dim() != n || output.dim() != n) throw DimensionMismatch("tabulated entry has the wrong dimension");
    require_same_ring(input.ring(), ring);
    require_same_ring(output.ring(), ring);
    if (!lookup->emplace(skew_key(input), output).second) throw SchemaError("duplicate input in tabulated model");
  }
  SkewMap map = [lookup = std::shared_ptr<const std::unordered_map<std::string, SkewMatrix>>(lookup)](
                    const SkewMatrix& x) {
    auto it = lookup->find(skew_key(x));
    if (it == lookup->end()) throw PreconditionViolated("input outside the tabulated domain");
    return it->second;
  };
  return TwoLocalModel(ring, n, std::move(map), TabulatedProvenance{std::move(entries)}, std::nullopt);
}

TwoLocalModel TwoLocalModel::basis_defined(BasisImageTable table, SkewMap extension) {
  if (!table.complete()) throw SchemaError("basis-defined model needs a complete table");
  const Ring& ring = table.ring();
  const std::size_t n = table.dim();
  SkewMap map = [table, extension = std::move(extension)](const SkewMatrix& x) {
    const std::size_t n = x.dim();
    std::size_t nonzero = 0;
    std::size_t where = 0;
    for (std::size_t k = 0; k < x.packed().size(); ++k) {
      if (!x.packed()[k].is_zero()) {
        ++nonzero;
        where = k;
      }
    }
    if (nonzero == 1 && x.packed()[where].is_one()) {
      auto [i, j] = SkewMatrix::packed_pair(n, where);
      return table.at(i, j);
    }
    return extension(x);
  };
  return TwoLocalModel(ring, n, std::move(map), BasisDefinedProvenance{std::move(table)}, std::nullopt);
}

TwoLocalModel TwoLocalModel::opaque(const Ring& ring, std::size_t n, SkewMap map, std::string label,
                                    std::optional<WitnessOracle> witness) {
  return TwoLocalModel(ring, n, std::move(map), OpaqueProvenance{std::move(label)}, std::move(witness));
}

std::vector<SkewMatrix> TwoLocalModel::table_inputs() const {
  const auto* table = std::get_if<TabulatedProvenance>(&provenance_);
  if (table == nullptr) throw UnsupportedOperation("model is not tabulated");
  std::vector<SkewMatrix> out;
  out.reserve(table->entries.size());
  for (const auto& entry : table->entries) out.push_back(entry.first);
  return out;
}

SkewMatrix TwoLocalModel::operator()(const SkewMatrix& x) const {
  if (x.dim() != n_) throw DimensionMismatch("model input has the wrong dimension");
  require_same_ring(x.ring(), *ring_);
  return map_(x);
}

TwoLocalModel TwoLocalModel::with_witness(std::optional<WitnessOracle> witness) const {
  TwoLocalModel copy = *this;
  copy.witness_ = std::move(witness);
  return copy;
}

// ---------------------------------------------------------------------------
// Witness search

DerivationOperator derivation_operator(const SkewMatrix& x) {
  const Ring& ring = x.ring();
  const std::size_t n = x.dim();
  const std::size_t unknowns = SkewMatrix::packed_size(n);
  DerivationOperator op{x, std::vector<std::vector<Scalar>>(unknowns, std::vector<Scalar>(unknowns, ring.zero()))};
  for (std::size_t u = 0; u < unknowns; ++u) {
    auto [p, q] = SkewMatrix::packed_pair(n, u);
    SkewMatrix image = apply_lie_derivation(s_unit(ring, n, p, q), x);
    for (std::size_t r = 0; r < unknowns; ++r) op.rows[r][u] = image.packed()[r];
  }
  return op;
}

std::optional<SkewMatrix> find_pair_witness(const DerivationOperator& ox, const SkewMatrix& dx,
                                            const DerivationOperator& oy, const SkewMatrix& dy) {
  const SkewMatrix& x = ox.input;
  const SkewMatrix& y = oy.input;
  require_compatible(x, dx);
  require_compatible(x, y);
  require_compatible(x, dy);
  const Ring& ring = x.ring();
  if (!ring.supports_solving()) throw UnsupportedOperation("witness search needs a solvable ring, got " + ring.name());
  const std::size_t unknowns = SkewMatrix::packed_size(x.dim());
  LinearSystem system(ring, unknowns);
  for (std::size_t r = 0; r < unknowns; ++r) system.add_row(ox.rows[r], dx.packed()[r]);
  for (std::size_t r = 0; r < unknowns; ++r) system.add_row(oy.rows[r], dy.packed()[r]);
  Solution solution = solve(system);
  if (solution.status == SolveStatus::inconsistent) return std::nullopt;
  SkewMatrix witness(ring, x.dim(), std::move(*solution.values));
  if (!(apply_lie_derivation(witness, x) == dx && apply_lie_derivation(witness, y) == dy)) {
    throw Error("internal: solver witness failed re-substitution");
  }
  return witness;
}

std::optional<SkewMatrix> find_pair_witness(const SkewMatrix& x, const SkewMatrix& dx, const SkewMatrix& y,
                                            const SkewMatrix& dy) {
  require_compatible(x, y);
  return find_pair_witness(derivation_operator(x), dx, derivation_operator(y), dy);
}

// ---------------------------------------------------------------------------
// Pair checking

TwoLocalReport check_two_local(const TwoLocalModel& model, std::size_t pair_budget, std::uint64_t seed, Exec exec) {
  TwoLocalReport report;
  report.seed = seed;
  if (pair_budget == 0) {
    report.vacuous = true;
    return report;
  }
  const Ring& ring = model.ring();
  const std::size_t n = model.dim();
  if (!ring.supports_solving()) throw UnsupportedOperation("pair checking needs a solvable ring, got " + ring.name());

  // Distinct probe inputs, their images and derivation operators; pairs index into them.
  std::vector<SkewMatrix> inputs;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (model.is_tabulated()) {
    report.exhaustive = true;
    inputs = model.table_inputs();
    for (std::size_t a = 0; a < inputs.size(); ++a) {
      for (std::size_t b = a; b < inputs.size(); ++b) pairs.emplace_back(a, b);
    }
  } else {
    Rng rng(seed);
    for (std::size_t k = 0; k < pair_budget; ++k) {
      inputs.push_back(random_probe(ring, n, rng));
      inputs.push_back(random_probe(ring, n, rng));
      pairs.emplace_back(2 * k, 2 * k + 1);
    }
  }

  std::vector<std::optional<SkewMatrix>> images(inputs.size());
  std::vector<std::optional<DerivationOperator>> operators(inputs.size());
  parallel_for(inputs.size(), exec, [&](std::size_t k) {
    images[k] = model(inputs[k]);
    operators[k] = derivation_operator(inputs[k]);
  });

  std::vector<char> failed(pairs.size(), 0);
  std::vector<std::optional<SkewMatrix>> bad_witness(pairs.size());
  const auto& oracle = model.witness();
  parallel_for(pairs.size(), exec, [&](std::size_t k) {
    auto [a, b] = pairs[k];
    auto witness = find_pair_witness(*operators[a], *images[a], *operators[b], *images[b]);
    if (!witness) failed[k] = 1;
    if (oracle) {
      SkewMatrix w = (*oracle)(inputs[a], inputs[b]);
      if (!(apply_lie_derivation(w, inputs[a]) == *images[a] && apply_lie_derivation(w, inputs[b]) == *images[b])) {
        bad_witness[k] = std::move(w);
      }
    }
  });

  report.pairs_checked = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [a, b] = pairs[k];
    if (failed[k]) report.failures.push_back(PairFailure{k, inputs[a], inputs[b]});
    if (bad_witness[k]) report.oracle_mismatches.push_back(WitnessMismatch{k, inputs[a], inputs[b], *bad_witness[k]});
  }
  return report;
}

TwoLocalReport cross_check_witnesses(const TwoLocalModel& model, std::size_t pair_budget, std::uint64_t seed,
                                     Exec exec) {
  TwoLocalReport report;
  report.seed = seed;
  const auto& oracle = model.witness();
  if (pair_budget == 0 || !oracle) {
    report.vacuous = true;
    return report;
  }
  Rng rng(seed);
  std::vector<std::pair<SkewMatrix, SkewMatrix>> pairs;
  for (std::size_t k = 0; k < pair_budget; ++k) {
    SkewMatrix x = random_probe(model.ring(), model.dim(), rng);
    SkewMatrix y = random_probe(model.ring(), model.dim(), rng);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  std::vector<std::optional<SkewMatrix>> bad_witness(pairs.size());
  parallel_for(pairs.size(), exec, [&](std::size_t k) {
    const auto& [x, y] = pairs[k];
    SkewMatrix w = (*oracle)(x, y);
    if (!(apply_lie_derivation(w, x) == model(x) && apply_lie_derivation(w, y) == model(y))) bad_witness[k] = std::move(w);
  });
  report.pairs_checked = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (bad_witness[k]) {
      report.oracle_mismatches.push_back(WitnessMismatch{k, pairs[k].first, pairs[k].second, *bad_witness[k]});
    }
  }
  return report;
}

bool lemma_2_4_agreement(const SkewMatrix& a, const SkewMatrix& b, std::size_t i, std::size_t j) {
  require_compatible(a, b);
  const std::size_t n = a.dim();
  check_pair(n, i, j);
  SkewMatrix s = s_unit(a.ring(), n, i, j);
  if (!(apply_lie_derivation(a, s) == apply_lie_derivation(b, s))) {
    throw PreconditionViolated("D^L_a(s_{i,j}) and D^L_b(s_{i,j}) differ");
  }
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == i || k == j) continue;
    if (!(a(k, i) == b(k, i) && a(k, j) == b(k, j) && a(i, k) == b(i, k) && a(j, k) == b(j, k))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Associative / Lie transfer

MatrixTwoLocalModel inner_matrix_model(const SquareMatrix& generator, DerivationSide side) {
  SquareMap map;
  if (side == DerivationSide::lie) {
    map = [generator](const SquareMatrix& x) { return apply_lie_derivation(generator, x); };
  } else {
    map = [generator](const SquareMatrix& x) { return apply_assoc_derivation(generator, x); };
  }
  return MatrixTwoLocalModel{&generator.ring(), generator.dim(), side, std::move(map),
                             SquareWitnessOracle([generator](const SquareMatrix&, const SquareMatrix&) { return generator; })};
}

MatrixTwoLocalModel embed(const TwoLocalModel& model) {
  SquareMap map = [model](const SquareMatrix& x) { return model(SkewMatrix::from_square(x)).to_square(); };
  std::optional<SquareWitnessOracle> witness;
  if (model.witness()) {
    witness = [oracle = *model.witness()](const SquareMatrix& x, const SquareMatrix& y) {
      return oracle(SkewMatrix::from_square(x), SkewMatrix::from_square(y)).to_square();
    };
  }
  return MatrixTwoLocalModel{&model.ring(), model.dim(), DerivationSide::lie, std::move(map), std::move(witness)};
}

MatrixTwoLocalModel transfer(const MatrixTwoLocalModel& model) {
  if (!model.witness) throw PreconditionViolated("transfer needs a witness oracle");
  MatrixTwoLocalModel out = model;
  const auto& oracle = *model.witness;
  if (model.side == DerivationSide::lie) {
    out.side = DerivationSide::associative;
    out.witness = [oracle](const SquareMatrix& x, const SquareMatrix& y) { return lie_to_assoc_generator(oracle(x, y)); };
  } else {
    out.side = DerivationSide::lie;
    out.witness = [oracle](const SquareMatrix& x, const SquareMatrix& y) { return assoc_to_lie_generator(oracle(x, y)); };
  }
  return out;
}

bool satisfies_defining_equations(const MatrixTwoLocalModel& model, const SquareMatrix& x, const SquareMatrix& y) {
  if (!model.witness) throw PreconditionViolated("defining equations need a witness oracle");
  SquareMatrix w = (*model.witness)(x, y);
  auto derive = [&](const SquareMatrix& v) {
    return model.side == DerivationSide::lie ? apply_lie_derivation(w, v) : apply_assoc_derivation(w, v);
  };
  return model.map(x) == derive(x) && model.map(y) == derive(y);
}

}  // namespace skewlie
