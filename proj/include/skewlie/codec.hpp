#pragma once

/**
 * @file codec.hpp
 * @brief JSON encodings for rings, scalars, matrices, tables, models and reports.
 *
 * Scalars: rational "p/q" (decoding also accepts "p" and JSON integers), prime-field
 * element as an integer, polynomial as {"monomials": [{"exps": [...], "coef": <base>}]},
 * product as an array of components. Malformed documents raise SchemaError.
 */

#include "json.hpp"

#include <string>

#include "skewlie/basis_table.hpp"
#include "skewlie/funcspace.hpp"
#include "skewlie/matrix.hpp"
#include "skewlie/oracle.hpp"
#include "skewlie/reconstruct.hpp"
#include "skewlie/twolocal.hpp"

namespace skewlie::codec {

using json = nlohmann::ordered_json;

json encode(const Ring& ring);
const Ring& decode_ring(const json& j);
/// JSON object or compact text ("gf5", "q[t]^2").
const Ring& ring_from_text(const std::string& text);

json encode(const Scalar& s);
Scalar decode_scalar(const Ring& ring, const json& j);

json encode(const SkewMatrix& x);
SkewMatrix decode_skew(const Ring& ring, const json& j);
json encode(const SquareMatrix& x);
SquareMatrix decode_square(const Ring& ring, const json& j);

json encode(const BasisImageTable& table);
/// Duplicate or out-of-range pairs are schema errors; missing pairs are allowed here.
BasisImageTable decode_table(const Ring& ring, const json& j);

/// Tabulated: [[input, output], ...]. Inner: {"kind": "inner", "generator": ...}.
json encode_model(const TwoLocalModel& model);
TwoLocalModel decode_model(const Ring& ring, std::size_t n, const json& j);

json encode(const SpatialSetting& setting);
SpatialSetting decode_setting(const json& j);

json encode(const ReconstructionReport& report);
json encode(const TwoLocalReport& report);
json encode(const GlobalityReport& report);
json encode(const OracleResults& results);

/// Two-space indent plus trailing newline.
std::string render(const json& j);
json parse_document(const std::string& text);

}  // namespace skewlie::codec
