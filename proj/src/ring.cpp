#include "skewlie/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>

#include "skewlie/error.hpp"

namespace skewlie {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1U;
  }
  return result;
}

std::uint64_t reduce(const mpz_class& value, std::uint64_t p) {
  mpz_class r = value % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

const std::shared_ptr<const Scalar::MonomialList>& empty_monomials() {
  static const auto empty = std::make_shared<const Scalar::MonomialList>();
  return empty;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

// Interning table. Rings are never destroyed, so references handed out stay valid.
class RingRegistry {
 public:
  static RingRegistry& instance() {
    static RingRegistry registry;
    return registry;
  }

  template <typename Init>
  const Ring& intern(const std::string& name, Init&& init) {
    std::lock_guard lock(mutex_);
    auto it = rings_.find(name);
    if (it != rings_.end()) return *it->second;
    auto ring = std::unique_ptr<Ring>(new Ring());
    init(*ring);
    ring->name_ = name;
    return *rings_.emplace(name, std::move(ring)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::unique_ptr<Ring>> rings_;
};

// ---------------------------------------------------------------------------
// Ring

const Ring& Ring::rational() {
  return RingRegistry::instance().intern("q", [](Ring& r) { r.kind_ = RingKind::rational; });
}

const Ring& Ring::prime_field(std::uint64_t p) {
  if (p == 2) throw InvalidRing("GF(2) rejected: 2 is not invertible in characteristic 2");
  if (p >= (std::uint64_t{1} << 31)) throw InvalidRing("prime modulus must be below 2^31");
  if (!is_prime(p)) throw InvalidRing("GF(" + std::to_string(p) + ") rejected: modulus is not prime");
  return RingRegistry::instance().intern("gf" + std::to_string(p), [p](Ring& r) {
    r.kind_ = RingKind::prime_field;
    r.modulus_ = p;
    r.half_residue_ = (p + 1) / 2;
  });
}

const Ring& Ring::polynomial(std::vector<std::string> vars, const Ring& base) {
  if (vars.empty()) throw InvalidRing("polynomial ring needs at least one variable");
  std::set<std::string> seen;
  std::string name = base.name() + "[";
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!valid_identifier(vars[k])) throw InvalidRing("invalid variable name '" + vars[k] + "'");
    if (!seen.insert(vars[k]).second) throw InvalidRing("duplicate variable '" + vars[k] + "'");
    name += (k ? "," : "") + vars[k];
  }
  name += "]";
  return RingRegistry::instance().intern(name, [&](Ring& r) {
    r.kind_ = RingKind::polynomial;
    r.vars_ = std::move(vars);
    r.base_ = &base;
  });
}

const Ring& Ring::product(const Ring& base, std::size_t size) {
  if (size == 0) throw InvalidRing("product ring needs at least one factor");
  return RingRegistry::instance().intern(base.name() + "^" + std::to_string(size), [&](Ring& r) {
    r.kind_ = RingKind::product;
    r.base_ = &base;
    r.size_ = size;
  });
}

namespace {

class RingParser {
 public:
  explicit RingParser(std::string_view text) : text_(text) {}

  const Ring& parse() {
    const Ring& ring = parse_ring();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return ring;
  }

 private:
  const Ring& parse_ring() {
    const Ring* ring = &parse_atom();
    for (;;) {
      skip_space();
      if (consume('[')) {
        std::vector<std::string> vars;
        do {
          skip_space();
          vars.push_back(identifier());
          skip_space();
        } while (consume(','));
        if (!consume(']')) fail("expected ']'");
        ring = &Ring::polynomial(std::move(vars), *ring);
      } else if (consume('^')) {
        skip_space();
        ring = &Ring::product(*ring, static_cast<std::size_t>(number()));
      } else {
        return *ring;
      }
    }
  }

  const Ring& parse_atom() {
    skip_space();
    if (consume('(')) {
      const Ring& inner = parse_ring();
      skip_space();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    std::string word = identifier();
    std::string lower;
    for (char c : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "q" || lower == "rational" || lower == "rationals") return Ring::rational();
    if (lower.rfind("gf", 0) == 0 && lower.size() > 2 &&
        std::all_of(lower.begin() + 2, lower.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return Ring::prime_field(std::stoull(lower.substr(2)));
    }
    fail("unknown ring '" + word + "'");
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 12) fail("expected number");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidRing("cannot parse ring '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

const Ring& Ring::parse(std::string_view text) { return RingParser(text).parse(); }

std::uint64_t Ring::modulus() const {
  if (kind_ != RingKind::prime_field) throw UnsupportedOperation(name_ + " has no modulus");
  return modulus_;
}

const std::vector<std::string>& Ring::vars() const {
  if (kind_ != RingKind::polynomial) throw UnsupportedOperation(name_ + " is not a polynomial ring");
  return vars_;
}

const Ring& Ring::base() const {
  if (base_ == nullptr) throw UnsupportedOperation(name_ + " has no base ring");
  return *base_;
}

std::size_t Ring::size() const {
  if (kind_ != RingKind::product) throw UnsupportedOperation(name_ + " is not a product ring");
  return size_;
}

bool Ring::is_field() const noexcept {
  return kind_ == RingKind::rational || kind_ == RingKind::prime_field;
}

bool Ring::supports_solving() const noexcept {
  if (is_field()) return true;
  return kind_ == RingKind::product && base_->supports_solving();
}

Scalar Ring::zero() const {
  switch (kind_) {
    case RingKind::prime_field:
      return Scalar(*this, std::uint64_t{0});
    case RingKind::rational:
      return Scalar(*this, mpq_class(0));
    case RingKind::polynomial:
      return Scalar(*this, empty_monomials());
    case RingKind::product:
      return Scalar(*this, std::make_shared<const Scalar::Components>(size_, base_->zero()));
  }
  throw Error("unreachable");
}

Scalar Ring::one() const { return from_int(1); }

Scalar Ring::from_int(std::int64_t value) const {
  switch (kind_) {
    case RingKind::prime_field: {
      auto p = static_cast<std::int64_t>(modulus_);
      return Scalar(*this, static_cast<std::uint64_t>(((value % p) + p) % p));
    }
    case RingKind::rational:
      return Scalar(*this, mpq_class(mpz_class(std::to_string(value))));
    case RingKind::polynomial:
    case RingKind::product:
      return lift(base_->from_int(value));
  }
  throw Error("unreachable");
}

Scalar Ring::from_rational(const mpq_class& value) const {
  switch (kind_) {
    case RingKind::rational: {
      mpq_class q(value);
      if (q.get_den() == 0) throw DivisionByZero("rational with zero denominator");
      q.canonicalize();
      return Scalar(*this, std::move(q));
    }
    case RingKind::prime_field: {
      std::uint64_t den = reduce(value.get_den(), modulus_);
      if (den == 0) throw DivisionByZero("denominator vanishes in " + name_);
      std::uint64_t num = reduce(value.get_num(), modulus_);
      return Scalar(*this, num * pow_mod(den, modulus_ - 2, modulus_) % modulus_);
    }
    case RingKind::polynomial:
    case RingKind::product:
      return lift(base_->from_rational(value));
  }
  throw Error("unreachable");
}

Scalar Ring::variable(std::size_t index) const {
  if (kind_ != RingKind::polynomial) throw UnsupportedOperation(name_ + " has no variables");
  if (index >= vars_.size()) throw IndexError("variable index out of range");
  std::vector<std::uint32_t> exps(vars_.size(), 0);
  exps[index] = 1;
  return Scalar(*this, std::make_shared<const Scalar::MonomialList>(
                           Scalar::MonomialList{Monomial{std::move(exps), base_->one()}}));
}

Scalar Ring::tuple(std::vector<Scalar> components) const {
  if (kind_ != RingKind::product) throw UnsupportedOperation(name_ + " is not a product ring");
  if (components.size() != size_) throw DimensionMismatch("tuple length does not match product size");
  for (const auto& c : components) require_same_ring(c.ring(), *base_);
  return Scalar(*this, std::make_shared<const Scalar::Components>(std::move(components)));
}

Scalar Ring::lift(const Scalar& base_value) const {
  if (base_value.ring() == *this) return base_value;
  if (base_ == nullptr) throw RingMismatch("cannot lift " + base_value.ring().name() + " into " + name_);
  require_same_ring(base_value.ring(), *base_);
  if (kind_ == RingKind::polynomial) {
    if (base_value.is_zero()) return zero();
    return Scalar(*this, std::make_shared<const Scalar::MonomialList>(Scalar::MonomialList{
                             Monomial{std::vector<std::uint32_t>(vars_.size(), 0), base_value}}));
  }
  return Scalar(*this, std::make_shared<const Scalar::Components>(size_, base_value));
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw RingMismatch("ring mismatch: " + a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------------------
// Scalar

Scalar make_polynomial(const Ring& ring, Scalar::MonomialList terms) {
  if (ring.kind() != RingKind::polynomial) throw UnsupportedOperation(ring.name() + " is not a polynomial ring");
  std::map<std::vector<std::uint32_t>, Scalar> acc;
  for (auto& term : terms) {
    if (term.exps.size() != ring.vars().size()) throw DimensionMismatch("exponent vector length mismatch");
    require_same_ring(term.coef.ring(), ring.base());
    auto [it, inserted] = acc.try_emplace(term.exps, term.coef);
    if (!inserted) it->second = it->second + term.coef;
  }
  Scalar::MonomialList out;
  out.reserve(acc.size());
  for (auto& [exps, coef] : acc) {
    if (!coef.is_zero()) out.push_back(Monomial{exps, coef});
  }
  return Scalar(ring, std::make_shared<const Scalar::MonomialList>(std::move(out)));
}

bool Scalar::is_zero() const {
  switch (ring_->kind()) {
    case RingKind::prime_field:
      return std::get<std::uint64_t>(rep_) == 0;
    case RingKind::rational:
      return sgn(std::get<mpq_class>(rep_)) == 0;
    case RingKind::polynomial:
      return std::get<2>(rep_)->empty();
    case RingKind::product: {
      const auto& comps = *std::get<3>(rep_);
      return std::all_of(comps.begin(), comps.end(), [](const Scalar& c) { return c.is_zero(); });
    }
  }
  return false;
}

bool Scalar::is_one() const { return *this == ring_->one(); }

std::uint64_t Scalar::residue() const {
  if (ring_->kind() != RingKind::prime_field) throw UnsupportedOperation("not a prime-field element");
  return std::get<std::uint64_t>(rep_);
}

const mpq_class& Scalar::rational() const {
  if (ring_->kind() != RingKind::rational) throw UnsupportedOperation("not a rational");
  return std::get<mpq_class>(rep_);
}

std::span<const Monomial> Scalar::monomials() const {
  if (ring_->kind() != RingKind::polynomial) throw UnsupportedOperation("not a polynomial");
  return *std::get<2>(rep_);
}

std::span<const Scalar> Scalar::components() const {
  if (ring_->kind() != RingKind::product) throw UnsupportedOperation("not a product-ring element");
  return *std::get<3>(rep_);
}

const Scalar& Scalar::component(std::size_t k) const {
  auto comps = components();
  if (k >= comps.size()) throw IndexError("component index out of range");
  return comps[k];
}

namespace {

template <typename Op>
Scalar::Components componentwise(std::span<const Scalar> x, std::span<const Scalar> y, Op op) {
  Scalar::Components out;
  out.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out.push_back(op(x[k], y[k]));
  return out;
}

template <typename Op>
Scalar::Components map_components(std::span<const Scalar> x, Op op) {
  Scalar::Components out;
  out.reserve(x.size());
  for (const auto& c : x) out.push_back(op(c));
  return out;
}

// Merge of two sorted term lists; `sign` flips the second operand.
Scalar::MonomialList merge_terms(std::span<const Monomial> x, std::span<const Monomial> y, bool subtract) {
  Scalar::MonomialList out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].exps < y[j].exps)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].exps < x[i].exps) {
      out.push_back(Monomial{y[j].exps, subtract ? -y[j].coef : y[j].coef});
      ++j;
    } else {
      Scalar c = subtract ? x[i].coef - y[j].coef : x[i].coef + y[j].coef;
      if (!c.is_zero()) out.push_back(Monomial{x[i].exps, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Scalar operator+(const Scalar& x, const Scalar& y) {
  require_same_ring(x.ring(), y.ring());
  const Ring& r = x.ring();
  switch (r.kind()) {
    case RingKind::prime_field: {
      std::uint64_t s = std::get<std::uint64_t>(x.rep_) + std::get<std::uint64_t>(y.rep_);
      if (s >= r.modulus_) s -= r.modulus_;
      return Scalar(r, s);
    }
    case RingKind::rational:
      return Scalar(r, mpq_class(std::get<mpq_class>(x.rep_) + std::get<mpq_class>(y.rep_)));
    case RingKind::polynomial:
      return Scalar(r, std::make_shared<const Scalar::MonomialList>(merge_terms(x.monomials(), y.monomials(), false)));
    case RingKind::product:
      return Scalar(r, std::make_shared<const Scalar::Components>(
                           componentwise(x.components(), y.components(), [](auto& a, auto& b) { return a + b; })));
  }
  throw Error("unreachable");
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  require_same_ring(x.ring(), y.ring());
  const Ring& r = x.ring();
  switch (r.kind()) {
    case RingKind::prime_field: {
      std::uint64_t a = std::get<std::uint64_t>(x.rep_);
      std::uint64_t b = std::get<std::uint64_t>(y.rep_);
      return Scalar(r, a >= b ? a - b : a + r.modulus_ - b);
    }
    case RingKind::rational:
      return Scalar(r, mpq_class(std::get<mpq_class>(x.rep_) - std::get<mpq_class>(y.rep_)));
    case RingKind::polynomial:
      return Scalar(r, std::make_shared<const Scalar::MonomialList>(merge_terms(x.monomials(), y.monomials(), true)));
    case RingKind::product:
      return Scalar(r, std::make_shared<const Scalar::Components>(
                           componentwise(x.components(), y.components(), [](auto& a, auto& b) { return a - b; })));
  }
  throw Error("unreachable");
}

Scalar Scalar::operator-() const {
  const Ring& r = *ring_;
  switch (r.kind()) {
    case RingKind::prime_field: {
      std::uint64_t a = std::get<std::uint64_t>(rep_);
      return Scalar(r, a == 0 ? 0 : r.modulus_ - a);
    }
    case RingKind::rational:
      return Scalar(r, mpq_class(-std::get<mpq_class>(rep_)));
    case RingKind::polynomial: {
      Scalar::MonomialList out;
      for (const auto& t : monomials()) out.push_back(Monomial{t.exps, -t.coef});
      return Scalar(r, std::make_shared<const MonomialList>(std::move(out)));
    }
    case RingKind::product:
      return Scalar(r, std::make_shared<const Components>(map_components(components(), [](auto& c) { return -c; })));
  }
  throw Error("unreachable");
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  require_same_ring(x.ring(), y.ring());
  const Ring& r = x.ring();
  switch (r.kind()) {
    case RingKind::prime_field:
      return Scalar(r, std::get<std::uint64_t>(x.rep_) * std::get<std::uint64_t>(y.rep_) % r.modulus_);
    case RingKind::rational:
      return Scalar(r, mpq_class(std::get<mpq_class>(x.rep_) * std::get<mpq_class>(y.rep_)));
    case RingKind::polynomial: {
      auto xs = x.monomials();
      auto ys = y.monomials();
      if (xs.empty() || ys.empty()) return r.zero();
      Scalar::MonomialList terms;
      terms.reserve(xs.size() * ys.size());
      for (const auto& a : xs) {
        for (const auto& b : ys) {
          std::vector<std::uint32_t> exps(a.exps.size());
          for (std::size_t k = 0; k < exps.size(); ++k) exps[k] = a.exps[k] + b.exps[k];
          terms.push_back(Monomial{std::move(exps), a.coef * b.coef});
        }
      }
      return make_polynomial(r, std::move(terms));
    }
    case RingKind::product:
      return Scalar(r, std::make_shared<const Scalar::Components>(
                           componentwise(x.components(), y.components(), [](auto& a, auto& b) { return a * b; })));
  }
  throw Error("unreachable");
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (!(x.ring() == y.ring())) return false;
  switch (x.ring().kind()) {
    case RingKind::prime_field:
      return std::get<std::uint64_t>(x.rep_) == std::get<std::uint64_t>(y.rep_);
    case RingKind::rational:
      return std::get<mpq_class>(x.rep_) == std::get<mpq_class>(y.rep_);
    case RingKind::polynomial: {
      auto xs = x.monomials();
      auto ys = y.monomials();
      return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end(),
                        [](const Monomial& a, const Monomial& b) { return a.exps == b.exps && a.coef == b.coef; });
    }
    case RingKind::product: {
      auto xs = x.components();
      auto ys = y.components();
      return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end());
    }
  }
  return false;
}

Scalar Scalar::half() const {
  const Ring& r = *ring_;
  switch (r.kind()) {
    case RingKind::prime_field:
      return Scalar(r, std::get<std::uint64_t>(rep_) * r.half_residue_ % r.modulus_);
    case RingKind::rational:
      return Scalar(r, mpq_class(std::get<mpq_class>(rep_) / 2));
    case RingKind::polynomial: {
      Scalar::MonomialList out;
      for (const auto& t : monomials()) out.push_back(Monomial{t.exps, t.coef.half()});
      return Scalar(r, std::make_shared<const MonomialList>(std::move(out)));
    }
    case RingKind::product:
      return Scalar(r, std::make_shared<const Components>(map_components(components(), [](auto& c) { return c.half(); })));
  }
  throw Error("unreachable");
}

Scalar Scalar::inv() const {
  const Ring& r = *ring_;
  if (!r.is_field()) throw UnsupportedOperation("inverse is not available in " + r.name());
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (r.kind() == RingKind::prime_field) {
    return Scalar(r, pow_mod(std::get<std::uint64_t>(rep_), r.modulus_ - 2, r.modulus_));
  }
  return Scalar(r, mpq_class(1 / std::get<mpq_class>(rep_)));
}

std::string Scalar::to_string() const {
  const Ring& r = *ring_;
  switch (r.kind()) {
    case RingKind::prime_field:
      return std::to_string(std::get<std::uint64_t>(rep_));
    case RingKind::rational:
      return std::get<mpq_class>(rep_).get_str();
    case RingKind::polynomial: {
      auto terms = monomials();
      if (terms.empty()) return "0";
      std::string out;
      const auto& vars = r.vars();
      for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        std::string mono;
        for (std::size_t k = 0; k < vars.size(); ++k) {
          if (it->exps[k] == 0) continue;
          if (!mono.empty()) mono += "*";
          mono += vars[k];
          if (it->exps[k] > 1) mono += "^" + std::to_string(it->exps[k]);
        }
        std::string coef = it->coef.to_string();
        bool compound = it->coef.ring().kind() == RingKind::polynomial || it->coef.ring().kind() == RingKind::product;
        if (compound) coef = "(" + coef + ")";
        std::string term;
        if (mono.empty()) {
          term = coef;
        } else if (it->coef.is_one()) {
          term = mono;
        } else if (!compound && coef == "-1") {
          term = "-" + mono;
        } else {
          term = coef + "*" + mono;
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
      }
      return out;
    }
    case RingKind::product: {
      std::string out = "(";
      auto comps = components();
      for (std::size_t k = 0; k < comps.size(); ++k) out += (k ? ", " : "") + comps[k].to_string();
      return out + ")";
    }
  }
  return "?";
}

}  // namespace skewlie
