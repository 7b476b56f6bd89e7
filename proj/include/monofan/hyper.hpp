#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <vector>

#include "monofan/cmc.hpp"

namespace monofan {

/// Sequence of strata visited by a boundary path; consecutive entries are
/// comparable.
using IndexedPath = std::vector<Stratum>;

/// left ⊆ apex ⊇ right: the path climbs into the deeper stratum `apex` and
/// leaves it again.
struct Scissors {
  Stratum left = 0;
  Stratum apex = 0;
  Stratum right = 0;

  friend auto operator<=>(const Scissors&, const Scissors&) = default;
};

/// The same scissors traversed in the other direction is the same scissors;
/// this puts the smaller end on the left.
Scissors unoriented(const Scissors& s);

struct HyperIntersection {
  Stratum from = 0;
  Stratum to = 0;
  std::vector<Scissors> scissors;
  /// Unoriented scissors passed by the path.
  std::set<Scissors> scissors_set;
  Cone value_in_from;
  Cone value_in_to;
  /// Carries quotient coordinates of `to` to those of `from`; exact on the
  /// span of value_in_to, which it maps onto value_in_from.
  RatMatrix chart;
};

/// Throws InvalidPath for an empty path, an unknown stratum or a step between
/// incomparable strata.
void check_path(const StratSystem& s, const IndexedPath& p);

/// Doubles I_{l-1} and I_l around every strictly monotone triple so every
/// consecutive triple becomes a peak or a valley.
IndexedPath normalize_to_convex(const StratSystem& s, const IndexedPath& p);

/// Peaks of a convex path in order, after collapsing repeats and padding a
/// leading descent or trailing ascent. Throws NotConvex.
std::vector<Scissors> scissors_sequence(const StratSystem& s, const IndexedPath& p);

/// Folds the path's scissors: at (A, K, B) the current value is pushed into K,
/// cut by the image of the CMC of B and pulled back to B. Non-convex paths are
/// normalized first.
HyperIntersection hyperintersect(const CmcAtlas& atlas, const IndexedPath& p);
HyperIntersection hyperintersect(const StratSystem& s, const IndexedPath& p);

/// One reachable state of the enumeration: a hyperintersection seen from both
/// ends, with the chart end -> start.
struct HyperRecord {
  Stratum end = 0;
  Cone value_in_end;
  Cone value_in_start;
  RatMatrix chart;
};

struct HyperEnumeration {
  Stratum start = 0;
  /// Distinct values as subcones of the start CMC, sorted.
  std::vector<Cone> values;
  /// Every distinct reachable state, in discovery order.
  std::vector<HyperRecord> records;
  std::size_t states = 0;
};

/// All hyperintersections starting at `start` as a fixpoint closure over
/// states (end stratum, value, chart). Throws ResourceCap with the partial
/// state count if more than max_states states appear.
HyperEnumeration enumerate_hyperintersections(const CmcAtlas& atlas, Stratum start, std::size_t max_states = 10000);

}  // namespace monofan
