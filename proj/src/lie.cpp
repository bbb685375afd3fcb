#include "skewlie/lie.hpp"

#include "skewlie/error.hpp"

namespace skewlie {

namespace {

// Upper triangle of c(P - P^T), P = x y, as a skew matrix.
SkewMatrix antisymmetrized_product(const SkewMatrix& x, const SkewMatrix& y, const Scalar& c) {
  require_compatible(x, y);
  const std::size_t n = x.dim();
  SquareMatrix p = mat_mul(x.to_square(), y.to_square());
  std::vector<Scalar> upper;
  upper.reserve(SkewMatrix::packed_size(n));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) upper.push_back(c * (p(i, j) - p(j, i)));
  }
  return SkewMatrix(x.ring(), n, std::move(upper));
}

}  // namespace

SquareMatrix bracket(const SquareMatrix& x, const SquareMatrix& y) { return mat_mul(x, y) - mat_mul(y, x); }

SkewMatrix bracket(const SkewMatrix& x, const SkewMatrix& y) {
  return antisymmetrized_product(x, y, x.ring().one());
}

SkewMatrix apply_lie_derivation(const SkewMatrix& a, const SkewMatrix& x) {
  return antisymmetrized_product(a, x, a.ring().from_int(2));
}

SquareMatrix apply_lie_derivation(const SquareMatrix& a, const SquareMatrix& x) {
  return bracket(a, x) - bracket(x, a);
}

SquareMatrix apply_assoc_derivation(const SquareMatrix& a, const SquareMatrix& x) {
  return mat_mul(a, x) - mat_mul(x, a);
}

SquareMatrix lie_to_assoc_generator(const SkewMatrix& a) { return lie_to_assoc_generator(a.to_square()); }

SquareMatrix lie_to_assoc_generator(const SquareMatrix& a) { return mat_scale(a.ring().from_int(2), a); }

SquareMatrix assoc_to_lie_generator(const SquareMatrix& a) {
  SquareMatrix out(a.ring(), a.dim());
  for (std::size_t i = 1; i <= a.dim(); ++i) {
    for (std::size_t j = 1; j <= a.dim(); ++j) out.set(i, j, a(i, j).half());
  }
  return out;
}

bool check_lie_leibniz(const SkewMatrix& a, const SkewMatrix& x, const SkewMatrix& y) {
  require_compatible(a, x);
  require_compatible(a, y);
  SkewMatrix lhs = apply_lie_derivation(a, bracket(x, y));
  SkewMatrix rhs = bracket(apply_lie_derivation(a, x), y) + bracket(x, apply_lie_derivation(a, y));
  return lhs == rhs;
}

}  // namespace skewlie
