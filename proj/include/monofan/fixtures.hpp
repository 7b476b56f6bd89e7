#pragma once

#include <string>
#include <vector>

#include "monofan/strata.hpp"

namespace monofan {

/// Names of the built-in example systems.
std::vector<std::string> fixture_names();

/// Throws ParseError for an unknown name.
StratSystem fixture(const std::string& name);

/// One labeled cone of the Hosono-Takagi boundary and the dimension its
/// monodromy cone is known to have.
struct CensusEntry {
  std::string label;
  Stratum stratum = 0;
  std::size_t expected_dim = 0;
};

/// sigma_x, sigma_y, sigma_z, sigma_0..2 and tau_1..6 (dimension 2), then
/// every stratum involving an exceptional divisor (dimension 1).
std::vector<CensusEntry> hosono_takagi_census(const StratSystem& s);

}  // namespace monofan
