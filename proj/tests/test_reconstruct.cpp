#include "doctest.h"
#include "skewlie/adversary.hpp"
#include "skewlie/error.hpp"
#include "skewlie/lie.hpp"
#include "skewlie/oracle.hpp"
#include "skewlie/random.hpp"
#include "skewlie/reconstruct.hpp"
#include "support/modp.hpp"

using namespace skewlie;

TEST_SUITE("reconstruct") {
  TEST_CASE("extraction from D^L_{s_12}(s_13) in K_4(GF(5))") {
    const Ring& f = Ring::prime_field(5);
    const SkewMatrix a = s_unit(f, 4, 1, 2);
    const SkewMatrix d = apply_lie_derivation(a, s_unit(f, 4, 1, 3));
    CHECK(d == f.from_int(3) * s_unit(f, 4, 2, 3));
    EntryConstraintSet c = extract_constraints(d, 1, 3);
    CHECK(c.constraint_count() == 4);
    CHECK(c.consistent());
    const auto& e = c.entries();
    REQUIRE(e.size() == 4);
    CHECK(e.at({1, 2}).front().value == f.one());
    CHECK(e.at({2, 3}).front().value == f.zero());
    CHECK(e.at({1, 4}).front().value == f.zero());
    CHECK(e.at({3, 4}).front().value == f.zero());
    CHECK(e.at({1, 2}).front().source == IndexPair{1, 3});
  }

  TEST_CASE("extraction from a zero image gives zeros") {
    const Ring& q = Ring::rational();
    EntryConstraintSet c = extract_constraints(SkewMatrix(q, 5), 2, 4);
    CHECK(c.constraint_count() == 6);
    for (const auto& [entry, list] : c.entries())
      for (const auto& k : list) CHECK(k.value.is_zero());
    CHECK_THROWS_AS(extract_constraints(SkewMatrix(q, 5), 2, 2), DegenerateIndex);
    CHECK_THROWS_AS(extract_constraints(SkewMatrix(q, 5), 2, 6), IndexError);
  }

  TEST_CASE("extraction reads back every generator of K_4(GF(3)) from integer-computed images") {
    const Ring& f = Ring::prime_field(3);
    for (std::uint64_t k = 0; k < 729; ++k) {
      const modp::Mat a = modp::skew(4, 3, modp::digits(k, 4, 3));
      for (std::size_t i = 1; i <= 4; ++i) {
        for (std::size_t j = i + 1; j <= 4; ++j) {
          SkewMatrix d = modp::to_library(f, modp::lie_derivation(a, modp::unit_s(4, 3, i, j)));
          const EntryConstraintSet read = extract_constraints(d, i, j);
          for (const auto& [entry, list] : read.entries()) {
            for (const auto& c : list) REQUIRE(c.value.residue() == static_cast<std::uint64_t>(a.at(entry.first, entry.second)));
          }
        }
      }
    }
  }

  TEST_CASE("every entry receives 2(n-2) constraints in total") {
    const Ring& f = Ring::prime_field(7);
    for (std::size_t n : {3, 4, 6}) {
      EntryConstraintSet all;
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) all.merge(extract_constraints(SkewMatrix(f, n), i, j));
      CHECK(all.entries().size() == SkewMatrix::packed_size(n));
      for (const auto& [entry, list] : all.entries()) CHECK(list.size() == 2 * (n - 2));
    }
  }

  TEST_CASE("assemble_generator examples") {
    const Ring& f = Ring::prime_field(5);
    const SkewMatrix a = s_unit(f, 4, 1, 2) + f.from_int(3) * s_unit(f, 4, 3, 4);
    ReconstructionReport ok = assemble_generator(BasisImageTable::forward(a));
    REQUIRE(ok.succeeded());
    CHECK(*ok.generator == a);
    CHECK(ok.conflicts.empty());
    CHECK(ok.residuals.empty());
    CHECK_FALSE(ok.outside_hypothesis);

    ReconstructionReport zero = assemble_generator(BasisImageTable::forward(SkewMatrix(f, 4)));
    REQUIRE(zero.succeeded());
    CHECK(zero.generator->is_zero());

    BasisImageTable tampered = BasisImageTable::forward(a);
    tampered.set(1, 2, tampered.at(1, 2) + s_unit(f, 4, 3, 4));
    ReconstructionReport bad = assemble_generator(tampered);
    CHECK_FALSE(bad.succeeded());
    CHECK(bad.conflicts.size() + bad.residuals.size() > 0);
  }

  TEST_CASE("a nonzero (i,j) entry of d_ij is caught only by the residual pass") {
    const Ring& f = Ring::prime_field(5);
    const SkewMatrix a = s_unit(f, 4, 1, 3);
    BasisImageTable t = BasisImageTable::forward(a);
    t.set(1, 2, t.at(1, 2) + s_unit(f, 4, 1, 2));
    ReconstructionReport r = assemble_generator(t);
    CHECK(r.conflicts.empty());
    CHECK(r.residuals == std::vector<IndexPair>{{1, 2}});
    CHECK_FALSE(r.succeeded());
  }

  TEST_CASE("table and dimension preconditions") {
    const Ring& f = Ring::prime_field(3);
    BasisImageTable partial(f, 4);
    partial.set(1, 2, SkewMatrix(f, 4));
    CHECK_THROWS_AS(assemble_generator(partial), SchemaError);
    CHECK_THROWS_AS(assemble_generator(BasisImageTable::forward(SkewMatrix(f, 2))), DimensionMismatch);
    ReconstructionReport three = assemble_generator(BasisImageTable::forward(s_unit(f, 3, 1, 2)));
    CHECK(three.outside_hypothesis);
    CHECK(three.succeeded());
  }

  TEST_CASE("round trip over several rings and dimensions, serial and parallel agree") {
    for (const char* text : {"q", "q[t]", "gf3^3", "gf7", "gf5[s,t]"}) {
      const Ring& r = Ring::parse(text);
      Rng rng(91);
      for (std::size_t n : {4, 5, 8}) {
        for (int t = 0; t < 10; ++t) {
          const SkewMatrix a = random_skew(r, n, rng);
          const BasisImageTable table = BasisImageTable::forward(a);
          ReconstructionReport par = assemble_generator(table, Exec::parallel);
          ReconstructionReport ser = assemble_generator(table, Exec::serial);
          REQUIRE(par.succeeded());
          CHECK(*par.generator == a);
          CHECK(*ser.generator == a);
        }
      }
    }
  }

  TEST_CASE("tampered reconstruction reports are identical across execution policies") {
    const Ring& f = Ring::prime_field(7);
    Rng rng(92);
    for (int t = 0; t < 20; ++t) {
      BasisImageTable table = BasisImageTable::forward(random_skew(f, 6, rng));
      auto [i, j] = SkewMatrix::packed_pair(6, rng.below(15));
      table.set(i, j, table.at(i, j) + random_skew(f, 6, rng));
      ReconstructionReport a = assemble_generator(table, Exec::parallel);
      ReconstructionReport b = assemble_generator(table, Exec::serial);
      CHECK(a.residuals == b.residuals);
      REQUIRE(a.conflicts.size() == b.conflicts.size());
      for (std::size_t k = 0; k < a.conflicts.size(); ++k) {
        CHECK(a.conflicts[k].entry == b.conflicts[k].entry);
        CHECK(a.conflicts[k].constraints.size() == b.conflicts[k].constraints.size());
      }
    }
  }

  TEST_CASE("block_coefficient") {
    const Ring& f = Ring::prime_field(5);
    Rng rng(93);
    const SkewMatrix x = random_skew(f, 4, rng);
    for (std::size_t i = 1; i <= 4; ++i)
      for (std::size_t j = i + 1; j <= 4; ++j) CHECK(block_coefficient(x, SkewMatrix(f, 4), i, j).is_zero());
    CHECK(block_coefficient(s_unit(f, 4, 1, 3), s_unit(f, 4, 1, 2), 2, 3) == f.from_int(3));
    CHECK_THROWS_AS(block_coefficient(x, x, 3, 2), IndexError);
    for (const char* text : {"q", "gf11", "q[t]", "gf3^2"}) {
      const Ring& r = Ring::parse(text);
      for (int t = 0; t < 30; ++t) {
        const std::size_t n = 3 + rng.below(6);
        SkewMatrix a = random_skew(r, n, rng), y = random_skew(r, n, rng);
        CHECK(block_decomposition(y, a) == apply_lie_derivation(a, y));
      }
    }
  }

  TEST_CASE("verify_globality") {
    const Ring& f = Ring::prime_field(3);
    Rng rng(94);
    const SkewMatrix a = random_skew(f, 4, rng);
    SkewEnumeration all(4, 3);
    std::vector<std::pair<SkewMatrix, SkewMatrix>> entries;
    for (std::uint64_t k = 0; k < all.size(); ++k) {
      SkewMatrix x = all.at(k);
      entries.emplace_back(x, apply_lie_derivation(a, x));
    }
    TwoLocalModel table = TwoLocalModel::tabulated(f, 4, entries);
    GlobalityReport clean = verify_globality(table, a, 1, 5);
    CHECK(clean.passed());
    CHECK(clean.exhaustive);
    CHECK(clean.inputs_checked == 729);

    TwoLocalModel zero = TwoLocalModel::inner(SkewMatrix(f, 4));
    CHECK(verify_globality(zero, SkewMatrix(f, 4), 50, 5).passed());
    CHECK(verify_globality(zero, SkewMatrix(f, 4), 0, 5).vacuous);

    const SkewMatrix x0 = all.at(400);
    TwoLocalModel bad = tamper_point(table, x0, s_unit(f, 4, 2, 4));
    GlobalityReport report = verify_globality(bad, a, 1, 5);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].x == x0);
    CHECK(report.violations[0].derivation_mismatch);
    CHECK(report.violations[0].block_mismatch);
  }
}
