#include "doctest.h"
#include "skewlie/error.hpp"
#include "skewlie/linsolve.hpp"
#include "skewlie/random.hpp"

using namespace skewlie;

namespace {

std::vector<Scalar> ints(const Ring& r, std::initializer_list<std::int64_t> values) {
  std::vector<Scalar> out;
  for (auto v : values) out.push_back(r.from_int(v));
  return out;
}

bool satisfies(const LinearSystem& sys, const std::vector<Scalar>& x) {
  for (const auto& row : sys.rows()) {
    Scalar sum = sys.ring().zero();
    for (std::size_t k = 0; k < x.size(); ++k) sum += row.coeffs[k] * x[k];
    if (!(sum == row.rhs)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("linsolve") {
  TEST_CASE("unique solution over the rationals") {
    const Ring& q = Ring::rational();
    LinearSystem sys(q, 2);
    sys.add_row(ints(q, {1, 1}), q.from_int(2));
    sys.add_row(ints(q, {1, -1}), q.zero());
    Solution s = solve(sys);
    CHECK(s.status == SolveStatus::unique);
    CHECK(*s.values == ints(q, {1, 1}));
  }

  TEST_CASE("inconsistent system") {
    const Ring& q = Ring::rational();
    LinearSystem sys(q, 1);
    sys.add_row(ints(q, {1}), q.one());
    sys.add_row(ints(q, {1}), q.from_int(2));
    Solution s = solve(sys);
    CHECK(s.status == SolveStatus::inconsistent);
    CHECK_FALSE(s.values.has_value());
  }

  TEST_CASE("free variables are set to zero") {
    const Ring& f = Ring::prime_field(3);
    LinearSystem sys(f, 2);
    sys.add_row(ints(f, {1, 1}), f.zero());
    Solution s = solve(sys);
    CHECK(s.status == SolveStatus::underdetermined);
    CHECK(*s.values == ints(f, {0, 0}));
  }

  TEST_CASE("product rings are solved factor by factor") {
    const Ring& r = Ring::parse("gf5^2");
    const Ring& f = Ring::prime_field(5);
    // (1,0) x = (2,0) has x = (2, anything): the second factor is free.
    LinearSystem sys(r, 1);
    sys.add_row({r.tuple({f.one(), f.zero()})}, r.tuple({f.from_int(2), f.zero()}));
    Solution s = solve(sys);
    REQUIRE(s.values.has_value());
    CHECK(satisfies(sys, *s.values));
    CHECK((*s.values)[0] == r.tuple({f.from_int(2), f.zero()}));
    // Inconsistent in one factor only.
    LinearSystem bad(r, 1);
    bad.add_row({r.tuple({f.zero(), f.one()})}, r.tuple({f.one(), f.one()}));
    CHECK(solve(bad).status == SolveStatus::inconsistent);
  }

  TEST_CASE("polynomial rings are not solved") {
    const Ring& r = Ring::parse("q[t]");
    LinearSystem sys(r, 1);
    sys.add_row({r.variable(0)}, r.one());
    CHECK_THROWS_AS(solve(sys), UnsupportedOperation);
  }

  TEST_CASE("rows of the wrong length are rejected") {
    const Ring& q = Ring::rational();
    LinearSystem sys(q, 2);
    CHECK_THROWS_AS(sys.add_row(ints(q, {1}), q.one()), DimensionMismatch);
  }

  TEST_CASE("returned solutions reproduce every right-hand side, and solving is deterministic") {
    for (const char* text : {"q", "gf7", "gf3^2"}) {
      const Ring& r = Ring::parse(text);
      Rng rng(21);
      for (int t = 0; t < 100; ++t) {
        const std::size_t unknowns = 1 + rng.below(5), rows = 1 + rng.below(6);
        std::vector<Scalar> hidden;
        for (std::size_t k = 0; k < unknowns; ++k) hidden.push_back(random_scalar(r, rng));
        LinearSystem sys(r, unknowns);
        for (std::size_t i = 0; i < rows; ++i) {
          std::vector<Scalar> coeffs;
          Scalar rhs = r.zero();
          for (std::size_t k = 0; k < unknowns; ++k) {
            coeffs.push_back(random_scalar(r, rng));
            rhs += coeffs.back() * hidden[k];
          }
          sys.add_row(std::move(coeffs), rhs);
        }
        Solution s = solve(sys);
        REQUIRE(s.values.has_value());
        CHECK(satisfies(sys, *s.values));
        CHECK(*solve(sys).values == *s.values);
      }
    }
  }
}
