#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monofan/cmcx.hpp"

namespace monofan {

/// The combinatorial monodromy map of I: the orthant C_I = Q^I_{>=0}, whose
/// ray i is labeled by divisor i, sent to the quotient coordinates of sigma_I.
const RatMatrix& monodromy_map(const CmcAtlas& atlas, Stratum i);

/// A ray of the refined fan. `support` is the smallest stratum whose orthant
/// contains it and `generator` is primitive in Q^support.
struct FanRay {
  std::string name;
  Stratum support = 0;
  RatVec generator;
};

/// One cell of the refined fan, seen as a stratum of the modification.
struct FanCell {
  Stratum base = 0;
  /// Indices into RefinedFan::rays, increasing.
  std::vector<std::size_t> rays;
  Cone cone;
};

struct RefinedFan {
  /// C'_I in the coordinates of Q^I.
  std::map<Stratum, PolyComplex> cells;
  /// Original divisors first, in index order, then new rays by discovery.
  std::vector<FanRay> rays;
  /// Every distinct cell, keyed by its ray set (bit k = rays[k]).
  std::map<Stratum, FanCell> strata;
  /// The modification as a system in Kernels mode; absent when some cell is
  /// not simplicial or there are more than 64 rays.
  std::optional<StratSystem> induced;
  std::vector<Stratum> non_simplicial;
  /// Simplicial cells whose primitive rays do not span the lattice points of
  /// their linear span.
  std::vector<Stratum> non_unimodular;
};

struct FanOptions {
  bool simplicialize = false;
};

/// Pulls every complex of the CMCX back to the orthant of its stratum through
/// the monodromy map, names the new rays "<support>#k" and checks that the
/// pieces agree on shared faces. Throws OverlapInconsistency otherwise.
RefinedFan refine_fan(const CmcAtlas& atlas, const Cmcx& t, const FanOptions& opt = {}, const ResourceCaps& caps = {});

/// Assembles a fan from given complexes on the orthants: checks shared faces
/// and registers rays and cells.
RefinedFan fan_from_cells(const CmcAtlas& atlas, std::map<Stratum, PolyComplex> cells);

/// The unrefined fan: C'_I = faces of C_I.
RefinedFan identity_fan(const CmcAtlas& atlas);

struct CompatibilityReport {
  bool ok = true;
  std::size_t cells_checked = 0;
  nlohmann::json witness;
};

/// Every cell c of every C'_I has exactly one tau in the complex of I with
/// m_I(relint c) inside relint tau.
CompatibilityReport check_compatibility(const CmcAtlas& atlas, const RefinedFan& rf, const Cmcx& t);

/// The cone of the CMCX complex of I whose relative interior contains the
/// image of the relative interior of `cell`. Throws CheckFailed unless unique.
Cone assigned_tau(const CmcAtlas& atlas, const Cmcx& t, Stratum i, const Cone& cell);

/// The descendant map from quotient coordinates of the modification stratum
/// `j` to those of I. Needs the induced system; throws NotOverStratum unless
/// the cell of j lies in C'_I.
RatMatrix descendant_map(const CmcAtlas& atlas, const RefinedFan& rf, Stratum j, Stratum i);

/// Tau data for the strata of the modification, with bases in the original
/// system. Needs the induced system.
TauData refined_tau_data(const CmcAtlas& atlas, const RefinedFan& rf, const Cmcx& t);

}  // namespace monofan
