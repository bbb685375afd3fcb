#include "skewlie/adversary.hpp"

#include <functional>
#include <string>

#include "skewlie/error.hpp"

namespace skewlie {

namespace {

std::size_t digest(const SkewMatrix& x, const SkewMatrix& y) {
  std::string text;
  for (const auto& s : x.packed()) text += s.to_string() + ";";
  text += "|";
  for (const auto& s : y.packed()) text += s.to_string() + ";";
  // FNV-1a, fixed so digests do not depend on the standard library's std::hash.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace

TwoLocalModel tamper_point(const TwoLocalModel& model, const SkewMatrix& x0, const SkewMatrix& delta) {
  require_compatible(x0, delta);
  if (x0.dim() != model.dim()) throw DimensionMismatch("tamper point has the wrong dimension");
  require_same_ring(x0.ring(), model.ring());
  if (const auto* table = std::get_if<TabulatedProvenance>(&model.provenance())) {
    auto entries = table->entries;
    bool hit = false;
    for (auto& [input, output] : entries) {
      if (input == x0) {
        output = output + delta;
        hit = true;
      }
    }
    if (!hit) throw PreconditionViolated("tamper point is outside the tabulated domain");
    return TwoLocalModel::tabulated(model.ring(), model.dim(), std::move(entries));
  }
  SkewMap map = [model, x0, delta](const SkewMatrix& x) {
    SkewMatrix out = model(x);
    return x == x0 ? out + delta : out;
  };
  return TwoLocalModel::opaque(model.ring(), model.dim(), std::move(map), "tamper-point");
}

TwoLocalModel tamper_basis(const TwoLocalModel& model, std::size_t i, std::size_t j, const SkewMatrix& delta) {
  return tamper_point(model, s_unit(model.ring(), model.dim(), i, j), delta);
}

TwoLocalModel permute_witness(const TwoLocalModel& model, std::vector<SkewMatrix> pool) {
  if (pool.empty()) throw PreconditionViolated("witness pool is empty");
  for (const auto& w : pool) {
    if (w.dim() != model.dim()) throw DimensionMismatch("pool generator has the wrong dimension");
    require_same_ring(w.ring(), model.ring());
  }
  return model.with_witness(WitnessOracle([pool = std::move(pool)](const SkewMatrix& x, const SkewMatrix& y) {
    return pool[digest(x, y) % pool.size()];
  }));
}

}  // namespace skewlie
