#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "monofan/error.hpp"
#include "monofan/sampling.hpp"
#include "monofan/weightfilt.hpp"
#include "test_util.hpp"
#include "weight_oracle.hpp"

using namespace monofan;
using monofan::testing::mat;
using monofan::testing::vec;

namespace {

RatMatrix jordan(std::size_t n) {
  RatMatrix j(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j.at(i, i + 1) = 1;
  return j;
}

RatMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix e(n, n);
  e.at(i, j) = 1;
  return e;
}

}  // namespace

TEST_CASE("weight_filtration examples") {
  auto z = weight_filtration(RatMatrix(3, 3), 4);
  CHECK(z.at(3).dim() == 0);
  CHECK(z.at(4) == Subspace::full(3));

  auto j2 = jordan(2);
  auto w2 = weight_filtration(j2, 1);
  CHECK(w2.at(-1).dim() == 0);
  CHECK(w2.at(0) == image(j2));
  CHECK(w2.at(1) == image(j2));
  CHECK(w2.at(2) == Subspace::full(2));

  auto j3 = jordan(3);
  auto w3 = weight_filtration(j3, 2);
  CHECK(w3.at(-1).dim() == 0);
  CHECK(w3.at(0) == image(j3 * j3));
  CHECK(w3.at(1) == image(j3 * j3));
  CHECK(w3.at(2) == image(j3));
  CHECK(w3.at(3) == image(j3));
  CHECK(w3.at(4) == Subspace::full(3));

  CHECK_THROWS_AS(weight_filtration(mat({{1, 0}, {0, 0}}), 0), Error);
}

TEST_CASE("weight_filtration matches the brute-force oracle") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (int l = 0; l <= 3; ++l) {
      auto found = testing::brute_force_filtrations(jordan(n), l);
      REQUIRE(found.size() == 1);
      CHECK(found.front() == weight_filtration(jordan(n), l));
    }
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto n = random_small_nilpotent(rng, 1 + trial % 5);
    CAPTURE(trial);
    auto found = testing::brute_force_filtrations(n, 1);
    REQUIRE(found.size() == 1);
    CHECK(found.front() == weight_filtration(n, 1));
  }
}

TEST_CASE("shift and conjugation equivariance") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 4;
    auto x = random_nilpotent(rng, n);
    auto a = weight_filtration(x, 0);
    auto b = weight_filtration(x, 1);
    for (int k = -6; k <= 6; ++k) CHECK(b.at(k + 1) == a.at(k));
    RatMatrix g = RatMatrix::identity(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.at(i, i + 1) = trial % 3 - 1;
    g.at(n - 1, 0) = 2;
    if (g.rank() < n) continue;
    auto c = weight_filtration(g * x * right_inverse(g), 0);
    for (int k = -6; k <= 6; ++k) CHECK(c.at(k) == image(g, a.at(k)));
  }
}

TEST_CASE("cone_weight_consistency") {
  auto j = jordan(3);
  CHECK(cone_weight_consistency({j}, 2).consistent);
  CHECK(cone_weight_consistency({j, j}, 2).consistent);
  // a E12 + b E13 always has image span(e1), but its kernel moves with a : b.
  auto rep = cone_weight_consistency({unit(3, 0, 1), unit(3, 0, 2)}, 0);
  CHECK_FALSE(rep.consistent);
  CHECK(rep.samples.size() == 4);
  CHECK_THROWS_AS(cone_weight_consistency({unit(2, 0, 1), unit(2, 1, 0)}, 0), Error);
  CHECK_THROWS_AS(cone_weight_consistency({mat({{1}})}, 0), Error);
}
