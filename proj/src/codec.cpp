#include "skewlie/codec.hpp"

#include <set>

#include "skewlie/error.hpp"

namespace skewlie::codec {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

std::size_t read_index(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) throw SchemaError(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

json encode_pair(std::size_t i, std::size_t j) { return json::array({i, j}); }

}  // namespace

json encode(const Ring& ring) {
  switch (ring.kind()) {
    case RingKind::rational:
      return json{{"kind", "rational"}};
    case RingKind::prime_field:
      return json{{"kind", "prime_field"}, {"p", ring.modulus()}};
    case RingKind::polynomial:
      return json{{"kind", "polynomial"}, {"vars", ring.vars()}, {"base", encode(ring.base())}};
    case RingKind::product:
      return json{{"kind", "product"}, {"base", encode(ring.base())}, {"size", ring.size()}};
  }
  throw Error("unreachable");
}

const Ring& decode_ring(const json& j) {
  return guarded("ring descriptor", [&]() -> const Ring& {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") return Ring::rational();
    if (kind == "prime_field") return Ring::prime_field(j.at("p").get<std::uint64_t>());
    if (kind == "polynomial") {
      return Ring::polynomial(j.at("vars").get<std::vector<std::string>>(), decode_ring(j.at("base")));
    }
    if (kind == "product") return Ring::product(decode_ring(j.at("base")), read_index(j, "size"));
    throw SchemaError("unknown ring kind \"" + kind + "\"");
  });
}

const Ring& ring_from_text(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return decode_ring(parse_document(text));
  return Ring::parse(text);
}

json encode(const Scalar& s) {
  const Ring& ring = s.ring();
  switch (ring.kind()) {
    case RingKind::rational: {
      const mpq_class& q = s.rational();
      return q.get_num().get_str() + "/" + q.get_den().get_str();
    }
    case RingKind::prime_field:
      return s.residue();
    case RingKind::polynomial: {
      json terms = json::array();
      for (const auto& m : s.monomials()) terms.push_back(json{{"exps", m.exps}, {"coef", encode(m.coef)}});
      return json{{"monomials", terms}};
    }
    case RingKind::product: {
      json out = json::array();
      for (const auto& c : s.components()) out.push_back(encode(c));
      return out;
    }
  }
  throw Error("unreachable");
}

Scalar decode_scalar(const Ring& ring, const json& j) {
  return guarded("scalar", [&]() -> Scalar {
    switch (ring.kind()) {
      case RingKind::rational: {
        if (j.is_number_integer()) return ring.from_int(j.get<std::int64_t>());
        mpq_class q;
        if (!j.is_string() || q.set_str(j.get<std::string>(), 10) != 0) {
          throw SchemaError("rational scalars are strings \"p/q\", got " + j.dump());
        }
        if (q.get_den() == 0) throw SchemaError("rational scalar has zero denominator");
        q.canonicalize();
        return ring.from_rational(q);
      }
      case RingKind::prime_field:
        if (!j.is_number_integer()) throw SchemaError("prime-field scalars are integers, got " + j.dump());
        return ring.from_int(j.get<std::int64_t>());
      case RingKind::polynomial: {
        Scalar::MonomialList terms;
        for (const auto& t : j.at("monomials")) {
          auto exps = t.at("exps").get<std::vector<std::uint32_t>>();
          if (exps.size() != ring.vars().size()) throw SchemaError("monomial exponent vector has the wrong length");
          terms.push_back(Monomial{std::move(exps), decode_scalar(ring.base(), t.at("coef"))});
        }
        return make_polynomial(ring, std::move(terms));
      }
      case RingKind::product: {
        if (!j.is_array() || j.size() != ring.size()) {
          throw SchemaError("product scalars are arrays of " + std::to_string(ring.size()) + " components");
        }
        std::vector<Scalar> comps;
        for (const auto& c : j) comps.push_back(decode_scalar(ring.base(), c));
        return ring.tuple(std::move(comps));
      }
    }
    throw Error("unreachable");
  });
}

json encode(const SkewMatrix& x) {
  json upper = json::array();
  for (const auto& s : x.packed()) upper.push_back(encode(s));
  return json{{"n", x.dim()}, {"upper", upper}};
}

SkewMatrix decode_skew(const Ring& ring, const json& j) {
  return guarded("skew matrix", [&]() -> SkewMatrix {
    const std::size_t n = read_index(j, "n");
    if (n < 2) throw SchemaError("skew matrices need n >= 2");
    const json& upper = j.at("upper");
    if (!upper.is_array() || upper.size() != SkewMatrix::packed_size(n)) {
      throw SchemaError("\"upper\" must hold n(n-1)/2 = " + std::to_string(SkewMatrix::packed_size(n)) + " entries");
    }
    std::vector<Scalar> values;
    for (const auto& v : upper) values.push_back(decode_scalar(ring, v));
    return SkewMatrix(ring, n, std::move(values));
  });
}

json encode(const SquareMatrix& x) {
  json rows = json::array();
  for (std::size_t i = 1; i <= x.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= x.dim(); ++j) row.push_back(encode(x(i, j)));
    rows.push_back(row);
  }
  return json{{"n", x.dim()}, {"rows", rows}};
}

SquareMatrix decode_square(const Ring& ring, const json& j) {
  return guarded("square matrix", [&]() -> SquareMatrix {
    const std::size_t n = read_index(j, "n");
    const json& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != n) throw SchemaError("\"rows\" must hold n rows");
    SquareMatrix out(ring, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) throw SchemaError("every row must hold n entries");
      for (std::size_t k = 0; k < n; ++k) out.set(i + 1, k + 1, decode_scalar(ring, rows[i][k]));
    }
    return out;
  });
}

json encode(const BasisImageTable& table) {
  json images = json::array();
  for (std::size_t i = 1; i <= table.dim(); ++i) {
    for (std::size_t j = i + 1; j <= table.dim(); ++j) {
      if (table.contains(i, j)) images.push_back(json{{"i", i}, {"j", j}, {"d", encode(table.at(i, j))}});
    }
  }
  return json{{"n", table.dim()}, {"images", images}};
}

BasisImageTable decode_table(const Ring& ring, const json& j) {
  return guarded("basis image table", [&]() -> BasisImageTable {
    const std::size_t n = read_index(j, "n");
    if (n < 2) throw SchemaError("tables need n >= 2");
    BasisImageTable table(ring, n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& image : j.at("images")) {
      const std::size_t i = read_index(image, "i");
      const std::size_t k = read_index(image, "j");
      if (i < 1 || k > n || i >= k) {
        throw SchemaError("image index (" + std::to_string(i) + "," + std::to_string(k) + ") needs 1 <= i < j <= n");
      }
      if (!seen.insert({i, k}).second) {
        throw SchemaError("duplicate image for (" + std::to_string(i) + "," + std::to_string(k) + ")");
      }
      SkewMatrix d = decode_skew(ring, image.at("d"));
      if (d.dim() != n) throw SchemaError("image dimension differs from the table's n");
      table.set(i, k, std::move(d));
    }
    return table;
  });
}

json encode_model(const TwoLocalModel& model) {
  if (const auto* inner = std::get_if<InnerProvenance>(&model.provenance())) {
    return json{{"kind", "inner"}, {"generator", encode(inner->generator)}};
  }
  if (const auto* table = std::get_if<TabulatedProvenance>(&model.provenance())) {
    json out = json::array();
    for (const auto& [input, output] : table->entries) out.push_back(json::array({encode(input), encode(output)}));
    return out;
  }
  throw UnsupportedOperation("only inner and tabulated models have a JSON form");
}

TwoLocalModel decode_model(const Ring& ring, std::size_t n, const json& j) {
  return guarded("model", [&]() -> TwoLocalModel {
    auto check_dim = [&](const SkewMatrix& x) {
      if (x.dim() != n) throw SchemaError("model matrix has dimension " + std::to_string(x.dim()) + ", expected " +
                                          std::to_string(n));
      return x;
    };
    if (j.is_array()) {
      std::vector<std::pair<SkewMatrix, SkewMatrix>> entries;
      for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) throw SchemaError("tabulated entries are [input, output] pairs");
        entries.emplace_back(check_dim(decode_skew(ring, pair[0])), check_dim(decode_skew(ring, pair[1])));
      }
      return TwoLocalModel::tabulated(ring, n, std::move(entries));
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "inner") return TwoLocalModel::inner(check_dim(decode_skew(ring, j.at("generator"))));
    throw SchemaError("unknown model kind \"" + kind + "\"");
  });
}

json encode(const SpatialSetting& setting) {
  return json{{"omega", setting.omega_size()}, {"m", setting.m()}, {"base", encode(setting.base())}};
}

SpatialSetting decode_setting(const json& j) {
  return guarded("spatial setting", [&]() {
    return SpatialSetting(read_index(j, "omega"), read_index(j, "m"), decode_ring(j.at("base")));
  });
}

json encode(const ReconstructionReport& report) {
  json conflicts = json::array();
  for (const auto& c : report.conflicts) {
    json constraints = json::array();
    for (const auto& k : c.constraints) {
      constraints.push_back(json{{"value", encode(k.value)}, {"source", encode_pair(k.source.first, k.source.second)}});
    }
    conflicts.push_back(json{{"entry", encode_pair(c.entry.first, c.entry.second)}, {"constraints", constraints}});
  }
  json residuals = json::array();
  for (const auto& [i, j] : report.residuals) residuals.push_back(encode_pair(i, j));
  return json{{"n", report.n},
              {"succeeded", report.succeeded()},
              {"outside_theorem_hypothesis", report.outside_hypothesis},
              {"generator", report.generator ? encode(*report.generator) : json(nullptr)},
              {"conflicts", conflicts},
              {"residuals", residuals}};
}

json encode(const TwoLocalReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) failures.push_back(json{{"index", f.index}, {"x", encode(f.x)}, {"y", encode(f.y)}});
  json mismatches = json::array();
  for (const auto& m : report.oracle_mismatches) {
    mismatches.push_back(
        json{{"index", m.index}, {"x", encode(m.x)}, {"y", encode(m.y)}, {"witness", encode(m.witness)}});
  }
  return json{{"seed", report.seed},           {"pairs_checked", report.pairs_checked},
              {"exhaustive", report.exhaustive}, {"vacuous", report.vacuous},
              {"passed", report.passed()},     {"failures", failures},
              {"oracle_mismatches", mismatches}};
}

json encode(const GlobalityReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(json{{"index", v.index},
                              {"x", encode(v.x)},
                              {"derivation_mismatch", v.derivation_mismatch},
                              {"block_mismatch", v.block_mismatch}});
  }
  return json{{"seed", report.seed},           {"inputs_checked", report.inputs_checked},
              {"exhaustive", report.exhaustive}, {"vacuous", report.vacuous},
              {"passed", report.passed()},     {"violations", violations}};
}

json encode(const OracleResults& results) {
  json out = json::object();
  for (const auto& [descriptor, v] : results) {
    out[descriptor] = json{{"verdict", v.verdict},
                           {"checked", v.checked},
                           {"counterexample", v.counterexample ? json(*v.counterexample) : json(nullptr)}};
  }
  return out;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace skewlie::codec
