#pragma once

#include <json.hpp>

#include "monofan/complexes.hpp"
#include "monofan/cone.hpp"
#include "monofan/exactlin.hpp"

namespace monofan {

using Json = nlohmann::json;

// Rationals are written as strings "p/q" (just "p" for integers). Readers also
// accept plain JSON integers. Malformed input throws Error(ParseError).

Json to_json(const Rat& q);
Json to_json(const RatVec& v);
Json to_json(const RatMatrix& m);
Json to_json(const Subspace& s);
Json to_json(const Cone& c);
Json to_json(const PolyComplex& c);
Json to_json(const std::vector<Cone>& cones);

Rat rat_from_json(const Json& j);
RatVec vec_from_json(const Json& j);
RatMatrix matrix_from_json(const Json& j);
Subspace subspace_from_json(const Json& j);
Cone cone_from_json(const Json& j);
PolyComplex complex_from_json(const Json& j);

}  // namespace monofan
