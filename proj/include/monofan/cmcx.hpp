#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "monofan/cmc.hpp"
#include "monofan/complexes.hpp"

namespace monofan {

/// Upper bounds on work done by the constructions. Exceeding one raises
/// ResourceCap; nothing is ever truncated silently.
struct ResourceCaps {
  std::size_t max_cells = 10000;
  std::size_t max_states = 10000;
};

/// Worker threads for per-stratum work; outputs do not depend on it.
struct Parallelism {
  unsigned jobs = 1;
};

/// A complex on every closed CMC, in the quotient coordinates of its stratum.
struct Cmcx {
  std::map<Stratum, PolyComplex> complexes;
};

struct CmcxReport {
  bool ok = true;
  std::string kind;
  nlohmann::json witness;
};

/// Every complex is supported on its CMC and every adjacent map sends each
/// cone of the smaller stratum's complex onto a cone of the larger one.
CmcxReport check_cmcx(const CmcAtlas& atlas, const Cmcx& c);

struct SimplicialReport {
  bool simplicial = true;
  Stratum witness = 0;
  std::string reason;
};

/// Every CMC is simplicial and every divisor's ray image spans a face of it.
SimplicialReport is_simplicial(const CmcAtlas& atlas);

/// All faces of every CMC. Throws NotSimplicial with the offending stratum.
Cmcx canonical_t0(const CmcAtlas& atlas);

/// Where a stratum's CMC lands in the complex of its base stratum: `sigma` is
/// its image and `tau` the unique cone whose relative interior contains the
/// image of the relative interior, both in base coordinates.
struct TauEntry {
  Stratum base = 0;
  Cone sigma;
  Cone tau;
};

/// Assignment of tau cones to the strata of `system`. Base strata belong to
/// the system behind `base_atlas`; for raw strata the two coincide.
struct TauData {
  const CmcAtlas* base_atlas = nullptr;
  const StratSystem* system = nullptr;
  std::map<Stratum, TauEntry> entries;
};

/// Tau data on the strata of the CMCX's own system: tau_J = sigma_J. Strata
/// whose CMC is not a cell of its complex get no entry.
TauData raw_tau_data(const CmcAtlas& atlas, const Cmcx& c);

struct Commensurability {
  bool span_criterion = false;
  bool tau_criterion = false;
  bool agree() const { return span_criterion == tau_criterion; }
};

/// Both characterizations of J ~ K, computed independently in the
/// coordinates of the base of J ∪ K. False when J ∪ K is not a stratum.
/// Throws MissingTau.
Commensurability commensurable(const TauData& td, Stratum j, Stratum k);

struct NccResult {
  Stratum seed = 0;
  std::vector<Stratum> members;
  std::size_t iterations = 0;
};

/// Closes {J} under commensurability until nothing changes. The open stratum
/// only takes part when it is the seed. Throws UnknownStratum.
NccResult ncc(const TauData& td, Stratum j);

struct CmcxTrace {
  std::map<Stratum, std::size_t> states;
  std::map<Stratum, std::size_t> arrangement_cells;
  std::map<Stratum, std::size_t> semicomplex_cells;
  std::map<Stratum, std::size_t> final_cells;
  /// False when no chart-invariant lattice exists for barycenter scaling and
  /// local primitive scaling was used.
  bool global_reference = true;
};

nlohmann::json to_json(const CmcxTrace& t, const StratSystem& s);

struct CmcxBuild {
  Cmcx cmcx;
  CmcxTrace trace;
};

/// Builds a CMCX for any valid pointed system: refine every CMC by all of its
/// hyperintersections (top strata first), refine each cell by every
/// identification through it, and complexify. Throws NotPointed or
/// ResourceCap (the witness carries the partial trace).
CmcxBuild construct_cmcx(const CmcAtlas& atlas, const ResourceCaps& caps = {}, Parallelism par = {});

/// For every hyperintersection between I and J, the complex of I restricted to
/// the value equals the chart image of the complex of J restricted to it.
CmcxReport check_hyperintersection_coherence(const CmcAtlas& atlas, const Cmcx& c,
                                             const ResourceCaps& caps = {}, Parallelism par = {});

}  // namespace monofan
