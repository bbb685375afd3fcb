#pragma once

/**
 * @file ring.hpp
 * @brief Exact commutative unital rings in which 2 is invertible.
 *
 * Four families are provided and may be nested:
 *
 * - the rationals Q (arbitrary precision, GMP backed),
 * - prime fields GF(p) for odd primes p,
 * - multivariate polynomial rings B[t_1, ..., t_k] over any supported ring B,
 * - finite products B^k with componentwise operations (these have zero divisors).
 *
 * A Ring is an interned descriptor: every distinct descriptor exists exactly once for
 * the lifetime of the process, so rings compare by address and a Scalar only carries a
 * pointer to its ring. Scalars are immutable values in canonical form, which makes
 * equality of values the same thing as equality of representations.
 *
 * Compact text syntax (used by the CLI and by Ring::name()):
 *
 * @code
 *   q            rationals
 *   gf5          GF(5)
 *   q[t,u]       Q[t,u]
 *   gf3^3        GF(3) x GF(3) x GF(3)
 *   q[t]^2       (Q[t])^2      suffixes apply left to right
 * @endcode
 */

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace skewlie {

class Scalar;
struct Monomial;

enum class RingKind { rational, prime_field, polynomial, product };

class Ring {
 public:
  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  static const Ring& rational();
  /// Rejects p = 2 and composite p; p must be below 2^31.
  static const Ring& prime_field(std::uint64_t p);
  static const Ring& polynomial(std::vector<std::string> vars, const Ring& base);
  static const Ring& product(const Ring& base, std::size_t size);
  /// Parses the compact syntax described in the file comment.
  static const Ring& parse(std::string_view text);

  RingKind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const;
  const std::vector<std::string>& vars() const;
  const Ring& base() const;
  std::size_t size() const;

  /// Rationals and prime fields.
  bool is_field() const noexcept;
  /// Fields, and products of rings that are themselves solvable.
  bool supports_solving() const noexcept;
  const std::string& name() const noexcept { return name_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t value) const;
  Scalar from_rational(const mpq_class& value) const;
  /// i-th variable of a polynomial ring, 0-based.
  Scalar variable(std::size_t index) const;
  /// Product-ring element from its components.
  Scalar tuple(std::vector<Scalar> components) const;
  /// Image of a base-ring element under the structure map (constant polynomial, diagonal tuple).
  Scalar lift(const Scalar& base_value) const;

 private:
  Ring() = default;
  friend class RingRegistry;
  friend class Scalar;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);

  RingKind kind_ = RingKind::rational;
  std::uint64_t modulus_ = 0;
  std::uint64_t half_residue_ = 0;
  std::vector<std::string> vars_;
  const Ring* base_ = nullptr;
  std::size_t size_ = 0;
  std::string name_;
};

inline bool operator==(const Ring& a, const Ring& b) noexcept { return &a == &b; }

/// Immutable ring element in canonical form.
class Scalar {
 public:
  using MonomialList = std::vector<Monomial>;
  using Components = std::vector<Scalar>;

  const Ring& ring() const noexcept { return *ring_; }
  bool is_zero() const;
  bool is_one() const;

  std::uint64_t residue() const;
  const mpq_class& rational() const;
  std::span<const Monomial> monomials() const;
  std::span<const Scalar> components() const;
  const Scalar& component(std::size_t k) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend bool operator==(const Scalar& x, const Scalar& y);

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  /// Multiplication by the inverse of 2.
  Scalar half() const;
  Scalar twice() const { return *this + *this; }
  /// Multiplicative inverse; fields only.
  Scalar inv() const;

  /// Human-readable form, e.g. "-1/2", "3", "t^2+2*t", "(1, 0, 2)".
  std::string to_string() const;

 private:
  friend class Ring;
  friend Scalar make_polynomial(const Ring&, MonomialList);

  using Rep = std::variant<std::uint64_t, mpq_class, std::shared_ptr<const MonomialList>,
                           std::shared_ptr<const Components>>;

  Scalar(const Ring& ring, Rep rep) : ring_(&ring), rep_(std::move(rep)) {}

  const Ring* ring_;
  Rep rep_;
};

/// A polynomial term: exponent vector (one entry per variable) and a nonzero coefficient.
struct Monomial {
  std::vector<std::uint32_t> exps;
  Scalar coef;
};

/// Builds a polynomial from arbitrary terms: sorts, combines like terms, drops zeros.
Scalar make_polynomial(const Ring& ring, Scalar::MonomialList terms);

inline std::ostream& operator<<(std::ostream& out, const Scalar& s) { return out << s.to_string(); }

/// Throws RingMismatch unless x and y live in the same ring.
void require_same_ring(const Ring& a, const Ring& b);

}  // namespace skewlie
