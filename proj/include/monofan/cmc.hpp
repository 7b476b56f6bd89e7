#pragma once

#include <map>
#include <utility>

#include "monofan/cone.hpp"
#include "monofan/strata.hpp"

namespace monofan {

/// Image of the orthant Q^I_{>=0} in Q^I / Ker_I. The quotient is written in
/// the coordinates of proj = quotient_map(|I|, Ker_I).
struct Cmc {
  Stratum stratum = 0;
  RatMatrix proj;
  Cone cone;
};

/// Linear map between quotient coordinates induced by the inclusion of a
/// substratum `from` into `to`.
struct AdjacentMap {
  Stratum from = 0;
  Stratum to = 0;
  RatMatrix matrix;
};

Cmc build_cmc(const StratSystem& s, Stratum stratum);
/// Throws NotSubstratum unless sub ⊆ sup, UnknownStratum if either is absent.
AdjacentMap adjacent_map(const StratSystem& s, Stratum sub, Stratum sup);
/// a then b; throws ChainMismatch unless a.to == b.from.
AdjacentMap compose_adjacent(const AdjacentMap& a, const AdjacentMap& b);

/// Every CMC and every adjacent map of a system, computed once.
class CmcAtlas {
 public:
  explicit CmcAtlas(const StratSystem& s);

  const StratSystem& system() const noexcept { return *system_; }
  const Cmc& at(Stratum stratum) const;
  /// The adjacent map sub -> sup.
  const RatMatrix& xi(Stratum sub, Stratum sup) const;
  /// A left inverse of xi(sub, sup); adjacent maps are injective.
  const RatMatrix& xi_inverse(Stratum sub, Stratum sup) const;

 private:
  const std::pair<RatMatrix, RatMatrix>& lookup(Stratum sub, Stratum sup) const;

  const StratSystem* system_;
  std::map<Stratum, Cmc> cmcs_;
  std::map<std::pair<Stratum, Stratum>, std::pair<RatMatrix, RatMatrix>> maps_;
};

}  // namespace monofan
