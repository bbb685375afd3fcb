#include "skewlie/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <vector>

#include "skewlie/basis_table.hpp"
#include "skewlie/error.hpp"
#include "skewlie/lie.hpp"
#include "skewlie/reconstruct.hpp"

namespace skewlie {

namespace {

constexpr std::uint64_t chunk = 512;

std::string describe(const SkewMatrix& x) {
  std::string out = "[";
  for (std::size_t k = 0; k < x.packed().size(); ++k) {
    if (k) out += ",";
    out += x.packed()[k].to_string();
  }
  return out + "]";
}

std::string suffix(std::size_t n, std::uint64_t p) {
  return "(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ")";
}

void require_within(std::uint64_t work, std::uint64_t cap, const std::string& what) {
  if (work > cap) {
    throw CapExceeded(what + " needs " + std::to_string(work) + " steps, cap is " + std::to_string(cap));
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Scans [0, total) in chunks. `probe` returns a description on failure. Chunks past the
// lowest failure found so far are skipped; the lowest failing index wins regardless of
// scheduling.
struct ScanResult {
  std::uint64_t checked = 0;
  std::optional<std::string> failure;
};

ScanResult scan(std::uint64_t total, Exec exec, const std::function<std::optional<std::string>(std::uint64_t)>& probe) {
  const std::uint64_t chunks = (total + chunk - 1) / chunk;
  std::atomic<std::uint64_t> lowest{std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::optional<std::string>> found(chunks);
  parallel_for(chunks, exec, [&](std::size_t c) {
    const std::uint64_t begin = c * chunk;
    if (begin > lowest.load()) return;
    const std::uint64_t end = std::min(total, begin + chunk);
    for (std::uint64_t k = begin; k < end; ++k) {
      if (auto why = probe(k)) {
        found[c] = std::move(why);
        std::uint64_t seen = lowest.load();
        while (k < seen && !lowest.compare_exchange_weak(seen, k)) {
        }
        return;
      }
    }
  });
  ScanResult result;
  const std::uint64_t low = lowest.load();
  result.checked = low == std::numeric_limits<std::uint64_t>::max() ? total : low + 1;
  for (auto& f : found) {
    if (f) {
      result.failure = std::move(f);
      break;
    }
  }
  return result;
}

}  // namespace

std::optional<std::uint64_t> skew_count(std::size_t n, std::uint64_t p) {
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < SkewMatrix::packed_size(n); ++k) {
    if (count > std::numeric_limits<std::uint64_t>::max() / p) return std::nullopt;
    count *= p;
  }
  return count;
}

SkewEnumeration::SkewEnumeration(std::size_t n, std::uint64_t p, std::uint64_t cap)
    : n_(n), p_(p), ring_(&Ring::prime_field(p)), count_(0) {
  if (n < 2) throw DimensionMismatch("enumeration needs n >= 2");
  auto count = skew_count(n, p);
  if (!count || *count > cap) {
    throw CapExceeded("K_" + std::to_string(n) + "(GF(" + std::to_string(p) + ")) has more than " +
                      std::to_string(cap) + " elements");
  }
  count_ = *count;
}

SkewMatrix SkewEnumeration::at(std::uint64_t index) const {
  if (index >= count_) throw IndexError("enumeration index out of range");
  const std::size_t len = SkewMatrix::packed_size(n_);
  std::vector<Scalar> upper(len, ring_->zero());
  for (std::size_t k = len; k-- > 0;) {
    upper[k] = ring_->from_int(static_cast<std::int64_t>(index % p_));
    index /= p_;
  }
  return SkewMatrix(*ring_, n_, std::move(upper));
}

std::uint64_t SkewEnumeration::index_of(const SkewMatrix& x) const {
  if (x.dim() != n_) throw DimensionMismatch("matrix has the wrong dimension");
  require_same_ring(x.ring(), *ring_);
  std::uint64_t index = 0;
  for (const auto& s : x.packed()) index = index * p_ + s.residue();
  return index;
}

SkewMatrix reference_lie_derivation(const SkewMatrix& a, const SkewMatrix& x) {
  require_compatible(a, x);
  const SquareMatrix am = a.to_square();
  const SquareMatrix xm = x.to_square();
  return SkewMatrix::from_square(a.ring().from_int(2) * (am * xm - xm * am));
}

OracleVerdict brute_force_extraction_identity(std::size_t n, std::uint64_t p, std::uint64_t cap, Exec exec) {
  SkewEnumeration all(n, p, cap);
  const Ring& ring = all.ring();
  std::vector<SkewMatrix> units;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < SkewMatrix::packed_size(n); ++k) {
    pairs.push_back(SkewMatrix::packed_pair(n, k));
    units.push_back(s_unit(ring, n, pairs.back().first, pairs.back().second));
  }
  ScanResult result = scan(all.size(), exec, [&](std::uint64_t index) -> std::optional<std::string> {
    const SkewMatrix a = all.at(index);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      EntryConstraintSet constraints = extract_constraints(reference_lie_derivation(a, units[k]), i, j);
      if (constraints.constraint_count() != 2 * (n - 2)) {
        return "a=" + describe(a) + " pair (" + std::to_string(i) + "," + std::to_string(j) +
               "): wrong constraint count";
      }
      for (const auto& [entry, list] : constraints.entries()) {
        for (const auto& c : list) {
          if (!(c.value == a.upper(entry.first, entry.second))) {
            return "a=" + describe(a) + " pair (" + std::to_string(i) + "," + std::to_string(j) + ") entry (" +
                   std::to_string(entry.first) + "," + std::to_string(entry.second) + ") read " +
                   c.value.to_string();
          }
        }
      }
    }
    return std::nullopt;
  });
  return OracleVerdict{"extraction_identity" + suffix(n, p), !result.failure, result.checked, result.failure};
}

OracleVerdict brute_force_witness_nonexistence(const SkewMatrix& x, const SkewMatrix& dx, std::uint64_t p,
                                               std::uint64_t cap, Exec exec) {
  require_compatible(x, dx);
  SkewEnumeration all(x.dim(), p, cap);
  require_same_ring(x.ring(), all.ring());
  ScanResult result = scan(all.size(), exec, [&](std::uint64_t index) -> std::optional<std::string> {
    SkewMatrix a = all.at(index);
    if (reference_lie_derivation(a, x) == dx) return describe(a);
    return std::nullopt;
  });
  return OracleVerdict{"witness_nonexistence(x=" + describe(x) + ",dx=" + describe(dx) + ")" + suffix(x.dim(), p),
                       !result.failure, result.checked, result.failure};
}

OracleVerdict brute_force_bracket_vanishes(std::size_t n, std::uint64_t p, std::uint64_t cap, Exec exec) {
  SkewEnumeration all(n, p, cap);
  const std::uint64_t total = checked_mul(all.size(), all.size());
  require_within(total, cap, "bracket scan");
  ScanResult result = scan(total, exec, [&](std::uint64_t index) -> std::optional<std::string> {
    const SkewMatrix x = all.at(index / all.size());
    const SkewMatrix y = all.at(index % all.size());
    const SquareMatrix xm = x.to_square();
    const SquareMatrix ym = y.to_square();
    if (!(xm * ym - ym * xm).is_zero()) return "x=" + describe(x) + " y=" + describe(y);
    return std::nullopt;
  });
  return OracleVerdict{"bracket_vanishes" + suffix(n, p), !result.failure, result.checked, result.failure};
}

OracleVerdict exhaustive_tamper_sweep(std::size_t n, std::uint64_t p, std::uint64_t cap, Exec exec) {
  if (n < 4) throw DimensionMismatch("tamper sweep needs n >= 4");
  SkewEnumeration all(n, p, cap);
  const Ring& ring = all.ring();
  const std::size_t len = SkewMatrix::packed_size(n);
  const std::uint64_t per_generator = checked_mul(len * len, p - 1);
  require_within(checked_mul(all.size(), per_generator), cap, "tamper sweep");

  std::vector<SkewMatrix> units;
  for (std::size_t k = 0; k < len; ++k) {
    auto [i, j] = SkewMatrix::packed_pair(n, k);
    units.push_back(s_unit(ring, n, i, j));
  }
  ScanResult result = scan(all.size(), exec, [&](std::uint64_t index) -> std::optional<std::string> {
    const SkewMatrix a = all.at(index);
    BasisImageTable clean(ring, n);
    for (std::size_t k = 0; k < len; ++k) {
      auto [i, j] = SkewMatrix::packed_pair(n, k);
      clean.set(i, j, reference_lie_derivation(a, units[k]));
    }
    for (std::size_t k = 0; k < len; ++k) {
      auto [i, j] = SkewMatrix::packed_pair(n, k);
      for (std::size_t e = 0; e < len; ++e) {
        auto [r, c] = SkewMatrix::packed_pair(n, e);
        for (std::uint64_t delta = 1; delta < p; ++delta) {
          BasisImageTable tampered = clean;
          SkewMatrix image = clean.at(i, j);
          image.set(r, c, image.upper(r, c) + ring.from_int(static_cast<std::int64_t>(delta)));
          tampered.set(i, j, std::move(image));
          if (assemble_generator(tampered, Exec::serial).succeeded()) {
            return "a=" + describe(a) + " image (" + std::to_string(i) + "," + std::to_string(j) + ") entry (" +
                   std::to_string(r) + "," + std::to_string(c) + ") += " + std::to_string(delta);
          }
        }
      }
    }
    return std::nullopt;
  });
  return OracleVerdict{"tamper_sweep" + suffix(n, p), !result.failure, checked_mul(result.checked, per_generator),
                       result.failure};
}

OracleResults run_oracle_suites(std::size_t n, std::uint64_t p, std::uint64_t cap, Exec exec) {
  OracleResults results;
  auto record = [&](OracleVerdict v) { results.emplace(v.descriptor, std::move(v)); };

  SkewEnumeration all(n, p, cap);
  {
    ScanResult r = scan(all.size(), exec, [&](std::uint64_t k) -> std::optional<std::string> {
      if (all.index_of(all.at(k)) != k) return "index " + std::to_string(k) + " does not round-trip";
      return std::nullopt;
    });
    record(OracleVerdict{"enumerate" + suffix(n, p), !r.failure, r.checked, r.failure});
  }
  record(brute_force_extraction_identity(n, p, cap, exec));

  const Ring& ring = all.ring();
  const SkewMatrix s12 = s_unit(ring, n, 1, 2);
  record(brute_force_witness_nonexistence(s12, s12, p, cap, exec));
  if (n >= 3) {
    // D^L_{s_{1,2}}(s_{1,3}) has the witness s_{1,2}; the suite passes when one is found.
    const SkewMatrix s13 = s_unit(ring, n, 1, 3);
    OracleVerdict v = brute_force_witness_nonexistence(s13, reference_lie_derivation(s12, s13), p, cap, exec);
    v.descriptor = "witness_exists" + v.descriptor.substr(std::string("witness_nonexistence").size());
    v.verdict = !v.verdict;
    record(std::move(v));
  }
  if (n == 2) record(brute_force_bracket_vanishes(n, p, cap, exec));
  if (n >= 4) {
    const std::size_t len = SkewMatrix::packed_size(n);
    if (checked_mul(all.size(), checked_mul(len * len, p - 1)) <= cap) {
      record(exhaustive_tamper_sweep(n, p, cap, exec));
    }
  }
  return results;
}

}  // namespace skewlie
