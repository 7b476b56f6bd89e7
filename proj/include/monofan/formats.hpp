#pragma once

#include <map>

#include "monofan/cmcx.hpp"
#include "monofan/fan.hpp"
#include "monofan/hyper.hpp"
#include "monofan/json_io.hpp"
#include "monofan/weightfilt.hpp"

namespace monofan {

/// System file:
///   {"divisors": [...], "strata": ["1", "1,2", ...],
///    "matrices": [matrix, ...]}          (one per divisor)
/// or
///   {..., "kernels": {"1,2": [[1, -1]], ...}}   (basis vectors; missing = 0)
/// The empty stratum may be omitted.
Json to_json(const StratSystem& s);
StratSystem system_from_json(const Json& j);

/// {"system": ..., "strata": {"1,2": {"proj": matrix, "complex": complex}}}
Json to_json(const CmcAtlas& atlas, const Cmcx& c);
/// Reads the complexes back. Throws ParseError if a stored projection does
/// not match the one recomputed from the system.
Cmcx cmcx_from_json(const CmcAtlas& atlas, const Json& j);

/// {"system", "cells", "rays", "strata", "induced", "non_simplicial",
///  "non_unimodular"}
Json to_json(const CmcAtlas& atlas, const RefinedFan& rf);
/// Rebuilds a fan from its "cells" entry; rays, strata and the induced system
/// are recomputed.
RefinedFan fan_from_json(const CmcAtlas& atlas, const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const HyperIntersection& h, const StratSystem& s);

}  // namespace monofan
