#pragma once

#include <cstdint>
#include <random>

#include "monofan/strata.hpp"

namespace monofan {

/// Seeded generators for random monodromy systems. All draws go through
/// std::mt19937_64, so a seed fixes the output for a given standard library.
struct SamplingOptions {
  std::size_t min_divisors = 1;
  std::size_t max_divisors = 4;
  std::size_t max_matrix_size = 6;
  /// Largest absolute value of a random coefficient.
  int max_coefficient = 2;
  /// Give up after this many rejected draws.
  int max_attempts = 1000;
};

/// Random downward-closed family on n divisors containing every singleton.
std::vector<Stratum> random_family(std::mt19937_64& rng, std::size_t n);

/// Matrices mode: each N_i is a random polynomial (without constant term) in
/// one nilpotent Jordan matrix, or block-diagonal in two of them. With three
/// or more divisors the last one is sometimes a positive combination of two
/// others, which makes the monodromy cones non-simplicial. Systems failing
/// validation are redrawn.
StratSystem random_matrix_system(std::mt19937_64& rng, const SamplingOptions& opt = {});

/// Kernels mode: random integer kernel vectors on the maximal strata, with
/// the smaller strata obtained by restriction. Inconsistent or non-pointed
/// draws are redrawn.
StratSystem random_kernel_system(std::mt19937_64& rng, const SamplingOptions& opt = {});

/// Alternates between the two modes by seed parity.
StratSystem random_system(std::uint64_t seed, const SamplingOptions& opt = {});

/// Random nilpotent matrix of the given size with small entries: a random
/// strictly upper triangular matrix conjugated by a random unimodular matrix.
RatMatrix random_nilpotent(std::mt19937_64& rng, std::size_t size, int max_coefficient = 2);

/// Random nilpotent matrix whose entries all lie in [-bound, bound]: a strictly
/// upper triangular draw, permuted, then conjugated by elementary matrices
/// whenever that keeps the entries in range.
RatMatrix random_small_nilpotent(std::mt19937_64& rng, std::size_t size, int bound = 2);

}  // namespace monofan
