#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "monofan/exactlin.hpp"

namespace monofan {

/// Increasing filtration W_k of Q^n, stored on the window [center - m,
/// center + m] where m is the nilpotency index; W_k is zero below the
/// window and everything above it.
struct WeightFiltration {
  std::size_t dim = 0;
  int center = 0;
  int index = 0;
  std::map<int, Subspace> steps;

  Subspace at(int k) const;
  /// Same dimension, center and subspaces at every level.
  friend bool operator==(const WeightFiltration& a, const WeightFiltration& b);
};

/// Smallest m with N^(m+1) = 0. Throws NotNilpotent.
int nilpotency_index(const RatMatrix& n);

/// The weight filtration of a nilpotent N centered at l, built by peeling off
/// ker N^m and im N^m and recursing on the quotient. The output is checked
/// against both defining conditions before it is returned.
WeightFiltration weight_filtration(const RatMatrix& n, int center);

/// N W_k ⊆ W_(k-2) for every k and N^k : Gr_(l+k) -> Gr_(l-k) is an
/// isomorphism for every k >= 0.
bool satisfies_weight_axioms(const RatMatrix& n, const WeightFiltration& w);

nlohmann::json to_json(const WeightFiltration& w);

struct ConsistencyReport {
  bool consistent = true;
  std::vector<std::vector<long>> samples;
  /// First sample whose filtration differs from the first one, if any.
  nlohmann::json witness;
};

/// Compares the filtrations of several positive combinations of commuting
/// nilpotent matrices: all ones, 1..n, and two seeded random draws. Throws
/// NotNilpotent or NonCommuting.
ConsistencyReport cone_weight_consistency(const std::vector<RatMatrix>& matrices, int center, std::uint64_t seed = 0);

}  // namespace monofan
