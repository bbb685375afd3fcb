#pragma once

// Seeded generation of ring elements and matrices.
//
// All randomness in the library and the CLI comes from Rng, which is std::mt19937_64
// seeded with the 64-bit run seed. Bounded draws use rejection sampling on the raw
// engine output rather than <random> distributions, so a seed produces the same stream
// on every standard library.

#include <cstdint>
#include <random>

#include "skewlie/matrix.hpp"
#include "skewlie/ring.hpp"

namespace skewlie {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool chance(std::uint64_t numerator, std::uint64_t denominator) { return below(denominator) < numerator; }

  /// Independent stream derived from this seed and a stream label (splitmix64 mixing).
  static Rng derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

/// Shape of random scalars: rationals are n/d with |n| <= rational_bound and
/// 1 <= d <= rational_bound; polynomials have total degree <= max_degree.
struct ScalarProfile {
  std::int64_t rational_bound = 6;
  unsigned max_degree = 3;
  unsigned max_terms = 3;
};

Scalar random_scalar(const Ring& ring, Rng& rng, const ScalarProfile& profile = {});
Scalar random_nonzero_scalar(const Ring& ring, Rng& rng, const ScalarProfile& profile = {});
SkewMatrix random_skew(const Ring& ring, std::size_t n, Rng& rng, const ScalarProfile& profile = {});
SquareMatrix random_square(const Ring& ring, std::size_t n, Rng& rng, const ScalarProfile& profile = {});

/// Mix of basis elements s_{i,j}, sparse and dense random skew matrices; used for
/// probe inputs where basis elements should show up often.
SkewMatrix random_probe(const Ring& ring, std::size_t n, Rng& rng, const ScalarProfile& profile = {});

}  // namespace skewlie
