#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "monofan/exactlin.hpp"

namespace monofan {

/// A set of divisor indices, bit i standing for divisor i. Systems are limited
/// to 64 divisors.
using Stratum = std::uint64_t;

std::size_t stratum_size(Stratum s);
std::vector<std::size_t> stratum_members(Stratum s);
bool is_subset(Stratum a, Stratum b);
/// Orders strata by size, then by bitmask.
bool stratum_less(Stratum a, Stratum b);

/// Matrix of the inclusion Q^sub -> Q^sup, coordinates listed in increasing
/// divisor order. Requires sub ⊆ sup.
RatMatrix coordinate_inclusion(Stratum sub, Stratum sup);

/// Boundary combinatorics of a simple normal crossing completion: a divisor
/// list, the family of strata with nonempty intersection, and monodromy data
/// either as one nilpotent matrix per divisor or as a kernel per stratum.
class StratSystem {
 public:
  enum class Mode { Matrices, Kernels };

  StratSystem() = default;

  /// The empty stratum is added to `nonempty` automatically.
  static StratSystem with_matrices(std::vector<std::string> divisors, std::vector<Stratum> nonempty,
                                   std::vector<RatMatrix> matrices);
  /// Strata missing from `kernels` get the zero subspace.
  static StratSystem with_kernels(std::vector<std::string> divisors, std::vector<Stratum> nonempty,
                                  std::map<Stratum, Subspace> kernels);

  Mode mode() const noexcept { return mode_; }
  const std::vector<std::string>& divisors() const noexcept { return divisors_; }
  /// Sorted by stratum_less; always starts with the empty stratum.
  const std::vector<Stratum>& nonempty() const noexcept { return nonempty_; }
  bool is_nonempty(Stratum s) const;
  /// Matrices mode only.
  const std::vector<RatMatrix>& matrices() const noexcept { return matrices_; }

  /// Kernel of the map Q^I -> End(V) sending e_i to N_i (Matrices mode), or
  /// the stored kernel (Kernels mode). Throws UnknownStratum.
  const Subspace& kernel_of(Stratum s) const;

  std::string key(Stratum s) const;
  /// Parses "x,y" into a stratum; throws ParseError on unknown names.
  Stratum parse_key(const std::string& text) const;

  /// Inclusion-maximal members of the nonempty family.
  std::vector<Stratum> maximal_strata() const;

 private:
  Mode mode_ = Mode::Kernels;
  std::vector<std::string> divisors_;
  std::vector<Stratum> nonempty_;
  std::vector<RatMatrix> matrices_;
  std::map<Stratum, Subspace> kernels_;
};

struct ValidationReport {
  bool ok = true;
  /// NotNilpotent, CommutationFailure, DownwardClosureGap, RestrictionMismatch,
  /// PositiveKernelVector, AmbientMismatch or MissingDivisor; empty when ok.
  std::string kind;
  nlohmann::json witness;
};

/// Checks every invariant of the system and reports the first failure in scan
/// order (strata by size, then bitmask).
ValidationReport validate(const StratSystem& s);

/// Ker_I ∩ Q^{sub}, written in the coordinates of sub.
Subspace restrict_kernel(const Subspace& kernel, Stratum sup, Stratum sub);

/// Pairs (I, J) of nonempty strata with I a proper subset of J.
std::vector<std::pair<Stratum, Stratum>> adjacency(const StratSystem& s);

}  // namespace monofan
