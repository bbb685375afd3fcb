#pragma once

// Dense square matrices over a Ring, and skew-symmetric matrices in packed form.
//
// All public indices are 1-based. SkewMatrix stores only the strictly upper triangle,
// row-major over i < j: (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n). This order is the
// coordinate order used for unknowns by the witness solver and by the JSON encoding.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "skewlie/ring.hpp"

namespace skewlie {

class SquareMatrix {
 public:
  /// Zero matrix; n >= 1.
  SquareMatrix(const Ring& ring, std::size_t n);

  static SquareMatrix identity(const Ring& ring, std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  const Ring& ring() const noexcept { return *ring_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Scalar value);

  /// Row-major entries.
  std::span<const Scalar> entries() const noexcept { return data_; }
  bool is_zero() const;

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b);

 private:
  friend SquareMatrix mat_mul(const SquareMatrix&, const SquareMatrix&);
  friend SquareMatrix mat_add(const SquareMatrix&, const SquareMatrix&);
  friend SquareMatrix mat_sub(const SquareMatrix&, const SquareMatrix&);
  friend SquareMatrix mat_scale(const Scalar&, const SquareMatrix&);
  friend SquareMatrix mat_transpose(const SquareMatrix&);
  friend class SkewMatrix;

  std::size_t offset(std::size_t i, std::size_t j) const;

  const Ring* ring_;
  std::size_t n_;
  std::vector<Scalar> data_;
};

SquareMatrix mat_mul(const SquareMatrix& x, const SquareMatrix& y);
SquareMatrix mat_add(const SquareMatrix& x, const SquareMatrix& y);
SquareMatrix mat_sub(const SquareMatrix& x, const SquareMatrix& y);
SquareMatrix mat_scale(const Scalar& c, const SquareMatrix& x);
SquareMatrix mat_neg(const SquareMatrix& x);
SquareMatrix mat_transpose(const SquareMatrix& x);

inline SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) { return mat_mul(x, y); }
inline SquareMatrix operator+(const SquareMatrix& x, const SquareMatrix& y) { return mat_add(x, y); }
inline SquareMatrix operator-(const SquareMatrix& x, const SquareMatrix& y) { return mat_sub(x, y); }
inline SquareMatrix operator-(const SquareMatrix& x) { return mat_neg(x); }
inline SquareMatrix operator*(const Scalar& c, const SquareMatrix& x) { return mat_scale(c, x); }

/// e_{i,j}: one at (i,j), zero elsewhere.
SquareMatrix matrix_unit(const Ring& ring, std::size_t n, std::size_t i, std::size_t j);

/// e_{i,i} x e_{j,j} + e_{j,j} x e_{i,i}: keeps entries (i,j) and (j,i) only.
SquareMatrix project_block(const SquareMatrix& x, std::size_t i, std::size_t j);

class SkewMatrix {
 public:
  /// Zero skew matrix; n >= 2.
  SkewMatrix(const Ring& ring, std::size_t n);
  /// From packed upper entries in row-major i < j order.
  SkewMatrix(const Ring& ring, std::size_t n, std::vector<Scalar> upper);

  /// Throws NotSkew when x has a nonzero diagonal or x^{j,i} != -x^{i,j}.
  static SkewMatrix from_square(const SquareMatrix& x);

  static constexpr std::size_t packed_size(std::size_t n) noexcept { return n * (n - 1) / 2; }
  /// Packed offset of (i,j), i < j, 1-based.
  static std::size_t packed_index(std::size_t n, std::size_t i, std::size_t j);
  /// Inverse of packed_index.
  static std::pair<std::size_t, std::size_t> packed_pair(std::size_t n, std::size_t index);

  std::size_t dim() const noexcept { return n_; }
  const Ring& ring() const noexcept { return *ring_; }

  /// Any (i,j): zero on the diagonal, negated upper entry below it.
  Scalar operator()(std::size_t i, std::size_t j) const;
  /// Stored entry (i,j), i < j.
  const Scalar& upper(std::size_t i, std::size_t j) const;
  /// Sets (i,j) and implicitly (j,i) = -value; i != j.
  void set(std::size_t i, std::size_t j, const Scalar& value);

  std::span<const Scalar> packed() const noexcept { return upper_; }
  SquareMatrix to_square() const;
  bool is_zero() const;

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b);
  friend SkewMatrix operator+(const SkewMatrix& a, const SkewMatrix& b);
  friend SkewMatrix operator-(const SkewMatrix& a, const SkewMatrix& b);
  friend SkewMatrix operator-(const SkewMatrix& a);
  friend SkewMatrix operator*(const Scalar& c, const SkewMatrix& a);

 private:
  const Ring* ring_;
  std::size_t n_;
  std::vector<Scalar> upper_;
};

/// s_{i,j} = e_{i,j} - e_{j,i}; either order accepted, s_{j,i} = -s_{i,j}.
SkewMatrix s_unit(const Ring& ring, std::size_t n, std::size_t i, std::size_t j);

std::ostream& operator<<(std::ostream& out, const SquareMatrix& x);
/// Packed upper entries, e.g. "[1,0,2]".
std::ostream& operator<<(std::ostream& out, const SkewMatrix& x);

/// Throws DimensionMismatch / RingMismatch unless a and b live in the same K_n(R).
void require_compatible(const SkewMatrix& a, const SkewMatrix& b);
void require_compatible(const SquareMatrix& a, const SquareMatrix& b);

}  // namespace skewlie
