#include "skewlie/funcspace.hpp"

#include <algorithm>
#include <string>

#include "skewlie/error.hpp"
#include "skewlie/lie.hpp"

namespace skewlie {

namespace {

void require_ambient(const SpatialSetting& setting, const SkewMatrix& x) {
  if (x.dim() != setting.m()) throw DimensionMismatch("ambient matrix has the wrong dimension");
  require_same_ring(x.ring(), setting.ambient());
}

}  // namespace

SpatialSetting::SpatialSetting(std::size_t omega_size, std::size_t m, const Ring& base)
    : omega_size_(omega_size), m_(m), base_(&base), ambient_(nullptr) {
  if (omega_size == 0) throw DimensionMismatch("omega must have at least one point");
  if (m < 3) throw DimensionMismatch("matrix dimension m must be at least 3");
  if (!base.is_field()) throw InvalidRing("the base of F(Omega) must be a field, got " + base.name());
  ambient_ = &Ring::product(base, omega_size);
}

// ---------------------------------------------------------------------------
// Subalgebras

SubalgebraSpec::SubalgebraSpec(const SpatialSetting& setting, SubalgebraKind kind, Membership membership,
                               std::vector<SkewMatrix> basis_sample)
    : setting_(setting), kind_(kind), membership_(std::move(membership)), basis_sample_(std::move(basis_sample)) {
  const std::size_t m = setting.m();
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = i + 1; j <= m; ++j) {
      if (!contains(s_unit(setting.ambient(), m, i, j))) {
        throw PreconditionViolated("subalgebra must contain s_{" + std::to_string(i) + "," + std::to_string(j) + "}");
      }
    }
  }
  for (const auto& b : basis_sample_) {
    if (!contains(b)) throw PreconditionViolated("basis sample element outside the subalgebra");
  }
}

SubalgebraSpec SubalgebraSpec::full(const SpatialSetting& setting) {
  return SubalgebraSpec(setting, SubalgebraKind::full, nullptr, {});
}

SubalgebraSpec SubalgebraSpec::constant_maps(const SpatialSetting& setting) {
  return SubalgebraSpec(setting, SubalgebraKind::constant_maps, nullptr, {});
}

SubalgebraSpec SubalgebraSpec::custom(const SpatialSetting& setting, Membership membership,
                                      std::vector<SkewMatrix> basis_sample) {
  if (!membership) throw PreconditionViolated("custom subalgebra needs a membership predicate");
  return SubalgebraSpec(setting, SubalgebraKind::custom, std::move(membership), std::move(basis_sample));
}

bool SubalgebraSpec::contains(const SkewMatrix& x) const {
  if (x.dim() != setting_.m() || !(x.ring() == setting_.ambient())) return false;
  switch (kind_) {
    case SubalgebraKind::full:
      return true;
    case SubalgebraKind::constant_maps:
      return is_constant_map(x);
    case SubalgebraKind::custom:
      return membership_(x);
  }
  return false;
}

SkewMatrix SubalgebraSpec::sample(Rng& rng) const {
  switch (kind_) {
    case SubalgebraKind::full:
      return random_skew(setting_.ambient(), setting_.m(), rng);
    case SubalgebraKind::constant_maps:
      return lift_constant(setting_, random_skew(setting_.base(), setting_.m(), rng));
    case SubalgebraKind::custom: {
      // Constant-coefficient combinations of the s_{i,j} and the basis sample.
      const Ring& ambient = setting_.ambient();
      SkewMatrix out(ambient, setting_.m());
      for (std::size_t k = 0; k < SkewMatrix::packed_size(setting_.m()); ++k) {
        auto [i, j] = SkewMatrix::packed_pair(setting_.m(), k);
        out = out + ambient.lift(random_scalar(setting_.base(), rng)) * s_unit(ambient, setting_.m(), i, j);
      }
      for (const auto& b : basis_sample_) out = out + ambient.lift(random_scalar(setting_.base(), rng)) * b;
      return out;
    }
  }
  throw Error("unreachable");
}

bool SubalgebraSpec::closed_under_bracket(Rng& rng, std::size_t trials) const {
  for (std::size_t t = 0; t < trials; ++t) {
    if (!contains(bracket(sample(rng), sample(rng)))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constant maps and per-ω views

SquareMatrix hat_unit(const SpatialSetting& setting, std::size_t i, std::size_t j) {
  return matrix_unit(setting.ambient(), setting.m(), i, j);
}

bool is_constant_map(const SkewMatrix& x) {
  if (x.ring().kind() != RingKind::product) throw UnsupportedOperation("constant maps live over product rings");
  return std::all_of(x.packed().begin(), x.packed().end(), [](const Scalar& s) {
    auto comps = s.components();
    return std::all_of(comps.begin(), comps.end(), [&](const Scalar& c) { return c == comps.front(); });
  });
}

SkewMatrix lift_constant(const SpatialSetting& setting, const SkewMatrix& x) {
  if (x.dim() != setting.m()) throw DimensionMismatch("constant value has the wrong dimension");
  require_same_ring(x.ring(), setting.base());
  std::vector<Scalar> upper;
  for (const auto& s : x.packed()) upper.push_back(setting.ambient().lift(s));
  return SkewMatrix(setting.ambient(), setting.m(), std::move(upper));
}

SkewMatrix project_omega(const SkewMatrix& x, std::size_t omega) {
  const Ring& ring = x.ring();
  if (ring.kind() != RingKind::product) throw UnsupportedOperation("projection needs a product ring");
  if (omega >= ring.size()) throw IndexError("omega index out of range");
  std::vector<Scalar> upper;
  for (const auto& s : x.packed()) upper.push_back(s.component(omega));
  return SkewMatrix(ring.base(), x.dim(), std::move(upper));
}

SkewMatrix glue(const SpatialSetting& setting, const std::vector<SkewMatrix>& values) {
  if (values.size() != setting.omega_size()) throw DimensionMismatch("need one value per omega");
  const std::size_t len = SkewMatrix::packed_size(setting.m());
  std::vector<Scalar> upper;
  upper.reserve(len);
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<Scalar> comps;
    for (const auto& v : values) {
      if (v.dim() != setting.m()) throw DimensionMismatch("value has the wrong dimension");
      comps.push_back(v.packed()[k]);
    }
    upper.push_back(setting.ambient().tuple(std::move(comps)));
  }
  return SkewMatrix(setting.ambient(), setting.m(), std::move(upper));
}

BasisImageTable project_table(const BasisImageTable& table, std::size_t omega) {
  const std::size_t n = table.dim();
  BasisImageTable out(table.ring().base(), n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (table.contains(i, j)) out.set(i, j, project_omega(table.at(i, j), omega));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projection identities and reconstruction

bool lemma_3_2_check(const SpatialSetting& setting, const SkewMatrix& a, const SkewMatrix& b, std::size_t i,
                     std::size_t j) {
  require_ambient(setting, a);
  require_ambient(setting, b);
  const std::size_t m = setting.m();
  if (i == j) throw DegenerateIndex("lemma_3_2_check needs distinct indices");
  SkewMatrix s = s_unit(setting.ambient(), m, i, j);
  if (!(apply_lie_derivation(a, s) == apply_lie_derivation(b, s))) {
    throw PreconditionViolated("D^L_a(s_{i,j}) and D^L_b(s_{i,j}) differ");
  }
  const SquareMatrix eii = hat_unit(setting, i, i);
  const SquareMatrix ejj = hat_unit(setting, j, j);
  const SquareMatrix p = SquareMatrix::identity(setting.ambient(), m) - (eii + ejj);
  const SquareMatrix am = a.to_square();
  const SquareMatrix bm = b.to_square();
  return p * am * eii == p * bm * eii && p * am * ejj == p * bm * ejj && eii * am * p == eii * bm * p &&
         ejj * am * p == ejj * bm * p;
}

TwoLocalModel spatial_model(const SpatialSetting& setting, const SubalgebraSpec& subalgebra, const SkewMatrix& a) {
  require_ambient(setting, a);
  SkewMap map = [subalgebra, a](const SkewMatrix& x) {
    if (!subalgebra.contains(x)) throw PreconditionViolated("input outside the subalgebra");
    return apply_lie_derivation(a, x);
  };
  return TwoLocalModel::opaque(setting.ambient(), setting.m(), std::move(map), "spatial",
                               WitnessOracle([a](const SkewMatrix&, const SkewMatrix&) { return a; }));
}

ReconstructionReport reconstruct_spatial(const SpatialSetting& setting, const SubalgebraSpec& subalgebra,
                                         const BasisImageTable& table, Exec exec) {
  if (table.dim() != setting.m()) throw DimensionMismatch("table dimension differs from m");
  require_same_ring(table.ring(), setting.ambient());
  const std::size_t m = setting.m();
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = i + 1; j <= m; ++j) {
      if (!subalgebra.contains(s_unit(setting.ambient(), m, i, j))) throw PreconditionViolated("subalgebra lost s_{i,j}");
    }
  }
  ReconstructionReport report = assemble_generator(table, exec);
  report.outside_hypothesis = report.outside_hypothesis || setting.exploratory();
  return report;
}

std::optional<SkewMatrix> reconstruct_per_omega(const SpatialSetting& setting, const BasisImageTable& table,
                                                Exec exec) {
  require_same_ring(table.ring(), setting.ambient());
  std::vector<std::optional<SkewMatrix>> parts(setting.omega_size());
  parallel_for(setting.omega_size(), exec, [&](std::size_t w) {
    // Inner loops stay serial; ω is the parallel axis here.
    parts[w] = assemble_generator(project_table(table, w), Exec::serial).generator;
  });
  std::vector<SkewMatrix> values;
  for (auto& part : parts) {
    if (!part) return std::nullopt;
    values.push_back(std::move(*part));
  }
  return glue(setting, values);
}

BlockSplit spatial_block_split(const SpatialSetting& setting, const SkewMatrix& a, const SkewMatrix& x,
                               std::size_t i, std::size_t j) {
  require_ambient(setting, a);
  require_ambient(setting, x);
  const SquareMatrix eii = hat_unit(setting, i, i);
  const SquareMatrix ejj = hat_unit(setting, j, j);
  const SquareMatrix q = eii + ejj;
  const SquareMatrix c = SquareMatrix::identity(setting.ambient(), setting.m()) - q;
  const SquareMatrix am = a.to_square();
  const SquareMatrix xm = x.to_square();
  const Scalar two = setting.ambient().from_int(2);
  auto part = [&](const SquareMatrix& mid) {
    return two * (eii * am * mid * xm * ejj - eii * xm * mid * am * ejj + ejj * am * mid * xm * eii -
                  ejj * xm * mid * am * eii);
  };
  return BlockSplit{part(q), part(c)};
}

GlobalityReport verify_spatial_at(const SpatialSetting& setting, const SubalgebraSpec& subalgebra,
                                  const TwoLocalModel& model, const SkewMatrix& a,
                                  const std::vector<SkewMatrix>& inputs, Exec exec) {
  require_ambient(setting, a);
  const std::size_t m = setting.m();
  GlobalityReport report;
  report.inputs_checked = inputs.size();
  std::vector<std::pair<char, char>> flags(inputs.size(), {0, 0});
  parallel_for(inputs.size(), exec, [&](std::size_t k) {
    const SkewMatrix& x = inputs[k];
    if (!subalgebra.contains(x)) throw PreconditionViolated("probe outside the subalgebra");
    SkewMatrix image = model(x);
    flags[k].first = image == apply_lie_derivation(a, x) ? 0 : 1;
    SquareMatrix assembled(setting.ambient(), m);
    bool pair_parts_vanish = true;
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = i + 1; j <= m; ++j) {
        BlockSplit split = spatial_block_split(setting, a, x, i, j);
        pair_parts_vanish = pair_parts_vanish && split.through_pair.is_zero();
        assembled = assembled + split.through_pair + split.through_complement;
      }
    }
    flags[k].second = pair_parts_vanish && assembled == image.to_square() ? 0 : 1;
  });
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (flags[k].first || flags[k].second) {
      report.violations.push_back(GlobalityViolation{k, inputs[k], flags[k].first != 0, flags[k].second != 0});
    }
  }
  return report;
}

GlobalityReport verify_spatial(const SpatialSetting& setting, const SubalgebraSpec& subalgebra,
                               const TwoLocalModel& model, const SkewMatrix& a, std::size_t budget,
                               std::uint64_t seed, Exec exec) {
  Rng rng(seed);
  std::vector<SkewMatrix> inputs;
  for (std::size_t k = 0; k < budget; ++k) inputs.push_back(subalgebra.sample(rng));
  GlobalityReport report = verify_spatial_at(setting, subalgebra, model, a, inputs, exec);
  report.seed = seed;
  report.vacuous = budget == 0;
  return report;
}

}  // namespace skewlie
