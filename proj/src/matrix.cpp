#include "skewlie/matrix.hpp"

#include <algorithm>
#include <string>

#include "skewlie/error.hpp"

namespace skewlie {

namespace {

void check_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > n || j > n) {
    throw IndexError("index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for n=" +
                     std::to_string(n));
  }
}

}  // namespace

void require_compatible(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
  require_same_ring(a.ring(), b.ring());
}

void require_compatible(const SkewMatrix& a, const SkewMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
  require_same_ring(a.ring(), b.ring());
}

// ---------------------------------------------------------------------------
// SquareMatrix

SquareMatrix::SquareMatrix(const Ring& ring, std::size_t n) : ring_(&ring), n_(n), data_(n * n, ring.zero()) {
  if (n == 0) throw DimensionMismatch("matrix dimension must be positive");
}

SquareMatrix SquareMatrix::identity(const Ring& ring, std::size_t n) {
  SquareMatrix out(ring, n);
  for (std::size_t k = 1; k <= n; ++k) out.set(k, k, ring.one());
  return out;
}

std::size_t SquareMatrix::offset(std::size_t i, std::size_t j) const {
  check_index(n_, i, j);
  return (i - 1) * n_ + (j - 1);
}

const Scalar& SquareMatrix::operator()(std::size_t i, std::size_t j) const { return data_[offset(i, j)]; }

void SquareMatrix::set(std::size_t i, std::size_t j, Scalar value) {
  require_same_ring(value.ring(), *ring_);
  data_[offset(i, j)] = std::move(value);
}

bool SquareMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
  return a.n_ == b.n_ && a.ring() == b.ring() && a.data_ == b.data_;
}

SquareMatrix mat_mul(const SquareMatrix& x, const SquareMatrix& y) {
  require_compatible(x, y);
  const std::size_t n = x.n_;
  SquareMatrix out(x.ring(), n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar& left = x.data_[r * n + k];
      if (left.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const Scalar& right = y.data_[k * n + c];
        if (right.is_zero()) continue;
        out.data_[r * n + c] += left * right;
      }
    }
  }
  return out;
}

SquareMatrix mat_add(const SquareMatrix& x, const SquareMatrix& y) {
  require_compatible(x, y);
  SquareMatrix out = x;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += y.data_[k];
  return out;
}

SquareMatrix mat_sub(const SquareMatrix& x, const SquareMatrix& y) {
  require_compatible(x, y);
  SquareMatrix out = x;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= y.data_[k];
  return out;
}

SquareMatrix mat_scale(const Scalar& c, const SquareMatrix& x) {
  require_same_ring(c.ring(), x.ring());
  SquareMatrix out = x;
  for (auto& e : out.data_) e = c * e;
  return out;
}

SquareMatrix mat_neg(const SquareMatrix& x) { return mat_scale(-x.ring().one(), x); }

SquareMatrix mat_transpose(const SquareMatrix& x) {
  const std::size_t n = x.n_;
  SquareMatrix out(x.ring(), n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.data_[c * n + r] = x.data_[r * n + c];
  }
  return out;
}

SquareMatrix matrix_unit(const Ring& ring, std::size_t n, std::size_t i, std::size_t j) {
  check_index(n, i, j);
  SquareMatrix out(ring, n);
  out.set(i, j, ring.one());
  return out;
}

SquareMatrix project_block(const SquareMatrix& x, std::size_t i, std::size_t j) {
  const std::size_t n = x.dim();
  check_index(n, i, j);
  if (i == j) throw DegenerateIndex("project_block needs distinct indices");
  SquareMatrix out(x.ring(), n);
  out.set(i, j, x(i, j));
  out.set(j, i, x(j, i));
  return out;
}

// ---------------------------------------------------------------------------
// SkewMatrix

SkewMatrix::SkewMatrix(const Ring& ring, std::size_t n) : ring_(&ring), n_(n) {
  if (n < 2) throw DimensionMismatch("skew matrices need n >= 2");
  upper_.assign(packed_size(n), ring.zero());
}

SkewMatrix::SkewMatrix(const Ring& ring, std::size_t n, std::vector<Scalar> upper)
    : ring_(&ring), n_(n), upper_(std::move(upper)) {
  if (n < 2) throw DimensionMismatch("skew matrices need n >= 2");
  if (upper_.size() != packed_size(n)) throw DimensionMismatch("packed length must be n(n-1)/2");
  for (const auto& s : upper_) require_same_ring(s.ring(), ring);
}

SkewMatrix SkewMatrix::from_square(const SquareMatrix& x) {
  const std::size_t n = x.dim();
  std::vector<Scalar> upper;
  upper.reserve(packed_size(n));
  for (std::size_t i = 1; i <= n; ++i) {
    if (!x(i, i).is_zero()) throw NotSkew("nonzero diagonal entry at " + std::to_string(i));
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (!(x(j, i) == -x(i, j))) {
        throw NotSkew("entries (" + std::to_string(i) + "," + std::to_string(j) + ") not antisymmetric");
      }
      upper.push_back(x(i, j));
    }
  }
  return SkewMatrix(x.ring(), n, std::move(upper));
}

std::size_t SkewMatrix::packed_index(std::size_t n, std::size_t i, std::size_t j) {
  check_index(n, i, j);
  if (i >= j) throw IndexError("packed_index needs i < j");
  // rows 1..i-1 contribute (n-1) + (n-2) + ... + (n-i+1) entries
  return (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> SkewMatrix::packed_pair(std::size_t n, std::size_t index) {
  if (index >= packed_size(n)) throw IndexError("packed offset out of range");
  std::size_t i = 1;
  while (index >= n - i) {
    index -= n - i;
    ++i;
  }
  return {i, i + 1 + index};
}

Scalar SkewMatrix::operator()(std::size_t i, std::size_t j) const {
  check_index(n_, i, j);
  if (i == j) return ring_->zero();
  if (i < j) return upper_[packed_index(n_, i, j)];
  return -upper_[packed_index(n_, j, i)];
}

const Scalar& SkewMatrix::upper(std::size_t i, std::size_t j) const { return upper_[packed_index(n_, i, j)]; }

void SkewMatrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  check_index(n_, i, j);
  if (i == j) throw DegenerateIndex("diagonal of a skew matrix is fixed at zero");
  require_same_ring(value.ring(), *ring_);
  if (i < j) {
    upper_[packed_index(n_, i, j)] = value;
  } else {
    upper_[packed_index(n_, j, i)] = -value;
  }
}

SquareMatrix SkewMatrix::to_square() const {
  SquareMatrix out(*ring_, n_);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j, ++k) {
      out.data_[i * n_ + j] = upper_[k];
      out.data_[j * n_ + i] = -upper_[k];
    }
  }
  return out;
}

bool SkewMatrix::is_zero() const {
  return std::all_of(upper_.begin(), upper_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
  return a.n_ == b.n_ && a.ring() == b.ring() && a.upper_ == b.upper_;
}

SkewMatrix operator+(const SkewMatrix& a, const SkewMatrix& b) {
  require_compatible(a, b);
  SkewMatrix out = a;
  for (std::size_t k = 0; k < out.upper_.size(); ++k) out.upper_[k] += b.upper_[k];
  return out;
}

SkewMatrix operator-(const SkewMatrix& a, const SkewMatrix& b) {
  require_compatible(a, b);
  SkewMatrix out = a;
  for (std::size_t k = 0; k < out.upper_.size(); ++k) out.upper_[k] -= b.upper_[k];
  return out;
}

SkewMatrix operator-(const SkewMatrix& a) {
  SkewMatrix out = a;
  for (auto& e : out.upper_) e = -e;
  return out;
}

SkewMatrix operator*(const Scalar& c, const SkewMatrix& a) {
  require_same_ring(c.ring(), a.ring());
  SkewMatrix out = a;
  for (auto& e : out.upper_) e = c * e;
  return out;
}

SkewMatrix s_unit(const Ring& ring, std::size_t n, std::size_t i, std::size_t j) {
  check_index(n, i, j);
  if (i == j) throw DegenerateIndex("s_{i,i} is undefined");
  SkewMatrix out(ring, n);
  out.set(i, j, ring.one());
  return out;
}

std::ostream& operator<<(std::ostream& out, const SquareMatrix& x) {
  out << "[";
  for (std::size_t i = 1; i <= x.dim(); ++i) {
    out << (i > 1 ? "; " : "");
    for (std::size_t j = 1; j <= x.dim(); ++j) out << (j > 1 ? "," : "") << x(i, j);
  }
  return out << "]";
}

std::ostream& operator<<(std::ostream& out, const SkewMatrix& x) {
  out << "[";
  for (std::size_t k = 0; k < x.packed().size(); ++k) out << (k ? "," : "") << x.packed()[k];
  return out << "]";
}

}  // namespace skewlie
