#pragma once

// Lie bracket and inner derivations.
//
// For an associative ring A with 2 invertible, the inner Lie derivation of (A, [,]) is
//
//   D^L_a(x) = [a,x] - [x,a] = 2(ax - xa) = D_{2a}(x),
//
// and conversely the associative inner derivation D_a(x) = ax - xa equals D^L_{a/2}.
// Generators are kept as values; a derivation is identified with its generator.

#include "skewlie/matrix.hpp"

namespace skewlie {

/// [x,y] = xy - yx.
SquareMatrix bracket(const SquareMatrix& x, const SquareMatrix& y);
/// Bracket restricted to K_n: uses yx = (xy)^T for skew x, y.
SkewMatrix bracket(const SkewMatrix& x, const SkewMatrix& y);

/// D^L_a(x) on K_n(R), computed as 2(P - P^T) with P = ax.
SkewMatrix apply_lie_derivation(const SkewMatrix& a, const SkewMatrix& x);
/// D^L_a(x) = [a,x] - [x,a] on (M_n(R), [,]).
SquareMatrix apply_lie_derivation(const SquareMatrix& a, const SquareMatrix& x);
/// D_a(x) = ax - xa on M_n(R).
SquareMatrix apply_assoc_derivation(const SquareMatrix& a, const SquareMatrix& x);

/// 2a: D^L_a = D_{2a}.
SquareMatrix lie_to_assoc_generator(const SkewMatrix& a);
SquareMatrix lie_to_assoc_generator(const SquareMatrix& a);
/// a/2: D_a = D^L_{a/2}.
SquareMatrix assoc_to_lie_generator(const SquareMatrix& a);

/// True iff D^L_a([x,y]) == [D^L_a(x), y] + [x, D^L_a(y)].
bool check_lie_leibniz(const SkewMatrix& a, const SkewMatrix& x, const SkewMatrix& y);

struct InnerLieDerivation {
  SkewMatrix generator;

  SkewMatrix operator()(const SkewMatrix& x) const { return apply_lie_derivation(generator, x); }
};

struct InnerAssocDerivation {
  SquareMatrix generator;

  SquareMatrix operator()(const SquareMatrix& x) const { return apply_assoc_derivation(generator, x); }
};

}  // namespace skewlie
