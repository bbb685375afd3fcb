#include "skewlie/random.hpp"

#include <limits>

#include "skewlie/error.hpp"

namespace skewlie {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return Rng(z ^ (z >> 31U));
}

Scalar random_scalar(const Ring& ring, Rng& rng, const ScalarProfile& profile) {
  switch (ring.kind()) {
    case RingKind::prime_field:
      return ring.from_int(static_cast<std::int64_t>(rng.below(ring.modulus())));
    case RingKind::rational: {
      std::int64_t num = rng.between(-profile.rational_bound, profile.rational_bound);
      std::int64_t den = rng.between(1, profile.rational_bound);
      return ring.from_rational(mpq_class(static_cast<long>(num), static_cast<unsigned long>(den)));
    }
    case RingKind::polynomial: {
      const std::size_t nvars = ring.vars().size();
      Scalar::MonomialList terms;
      auto count = rng.below(profile.max_terms + 1);
      for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<std::uint32_t> exps(nvars, 0);
        auto degree = static_cast<std::uint32_t>(rng.below(profile.max_degree + 1));
        for (std::uint32_t d = 0; d < degree; ++d) ++exps[rng.below(nvars)];
        terms.push_back(Monomial{std::move(exps), random_scalar(ring.base(), rng, profile)});
      }
      return make_polynomial(ring, std::move(terms));
    }
    case RingKind::product: {
      std::vector<Scalar> comps;
      for (std::size_t k = 0; k < ring.size(); ++k) comps.push_back(random_scalar(ring.base(), rng, profile));
      return ring.tuple(std::move(comps));
    }
  }
  throw Error("unreachable");
}

Scalar random_nonzero_scalar(const Ring& ring, Rng& rng, const ScalarProfile& profile) {
  for (;;) {
    Scalar s = random_scalar(ring, rng, profile);
    if (!s.is_zero()) return s;
  }
}

SkewMatrix random_skew(const Ring& ring, std::size_t n, Rng& rng, const ScalarProfile& profile) {
  std::vector<Scalar> upper;
  upper.reserve(SkewMatrix::packed_size(n));
  for (std::size_t k = 0; k < SkewMatrix::packed_size(n); ++k) upper.push_back(random_scalar(ring, rng, profile));
  return SkewMatrix(ring, n, std::move(upper));
}

SquareMatrix random_square(const Ring& ring, std::size_t n, Rng& rng, const ScalarProfile& profile) {
  SquareMatrix out(ring, n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) out.set(i, j, random_scalar(ring, rng, profile));
  }
  return out;
}

SkewMatrix random_probe(const Ring& ring, std::size_t n, Rng& rng, const ScalarProfile& profile) {
  switch (rng.below(4)) {
    case 0: {
      auto [i, j] = SkewMatrix::packed_pair(n, rng.below(SkewMatrix::packed_size(n)));
      return s_unit(ring, n, i, j);
    }
    case 1: {
      SkewMatrix x(ring, n);
      auto [i, j] = SkewMatrix::packed_pair(n, rng.below(SkewMatrix::packed_size(n)));
      x.set(i, j, random_scalar(ring, rng, profile));
      auto [k, l] = SkewMatrix::packed_pair(n, rng.below(SkewMatrix::packed_size(n)));
      x.set(k, l, random_scalar(ring, rng, profile));
      return x;
    }
    default:
      return random_skew(ring, n, rng, profile);
  }
}

}  // namespace skewlie
