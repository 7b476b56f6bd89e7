#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "monofan/error.hpp"
#include "monofan/hyper.hpp"
#include "monofan/sampling.hpp"
#include "test_util.hpp"

using namespace monofan;
using monofan::testing::mat;
using monofan::testing::vec;

namespace {

std::vector<Stratum> all_subsets(std::size_t n) {
  std::vector<Stratum> out;
  for (Stratum s = 0; s < (Stratum{1} << n); ++s) out.push_back(s);
  return out;
}

const RatMatrix J = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});

StratSystem free3() { return StratSystem::with_kernels({"1", "2", "3"}, all_subsets(3), {}); }

// Random walk of the given length along comparable nonempty strata.
IndexedPath random_walk(std::mt19937_64& rng, const StratSystem& s, Stratum start, int steps) {
  IndexedPath p{start};
  for (int i = 0; i < steps; ++i) {
    std::vector<Stratum> next;
    for (Stratum t : s.nonempty())
      if (t != p.back() && (is_subset(t, p.back()) || is_subset(p.back(), t))) next.push_back(t);
    if (next.empty()) break;
    p.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
  }
  return p;
}

IndexedPath reversed(IndexedPath p) {
  std::reverse(p.begin(), p.end());
  return p;
}

IndexedPath concat(IndexedPath a, const IndexedPath& b) {
  a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

}  // namespace

TEST_CASE("normalize_to_convex examples") {
  auto s = free3();
  IndexedPath convex{0b001, 0b011, 0b010};
  CHECK(normalize_to_convex(s, convex) == convex);
  IndexedPath chain{0b001, 0b011, 0b111};
  CHECK(normalize_to_convex(s, chain) == IndexedPath{0b001, 0b001, 0b011, 0b011, 0b111});
  CHECK(normalize_to_convex(s, {0b010}) == IndexedPath{0b010});
  CHECK_THROWS_AS(normalize_to_convex(s, {0b001, 0b010}), Error);
  CHECK_THROWS_AS(normalize_to_convex(s, {}), Error);
}

TEST_CASE("scissors_sequence examples") {
  auto s = free3();
  auto one = scissors_sequence(s, {0b001, 0b011, 0b010});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Scissors{0b001, 0b011, 0b010});
  CHECK(scissors_sequence(s, {0b001, 0b011, 0b010, 0b110, 0b100}).size() == 2);
  auto padded = scissors_sequence(s, normalize_to_convex(s, {0b001, 0b011, 0b111}));
  REQUIRE(padded.size() == 2);
  CHECK(padded[0] == Scissors{0b001, 0b011, 0b011});
  CHECK(padded[1] == Scissors{0b011, 0b111, 0b111});
  auto down = scissors_sequence(s, {0b111, 0b001});
  REQUIRE(down.size() == 1);
  CHECK(down[0] == Scissors{0b111, 0b111, 0b001});
  CHECK_THROWS_AS(scissors_sequence(s, {0b001, 0b011, 0b111}), Error);
}

TEST_CASE("hyperintersect examples") {
  auto h = hyperintersect(free3(), {0b001, 0b011, 0b010});
  CHECK(h.value_in_from == Cone::zero(1));
  CHECK(h.value_in_to == Cone::zero(1));

  auto same = StratSystem::with_matrices({"1", "2"}, all_subsets(2), {J, J});
  auto r = hyperintersect(same, {0b01, 0b11, 0b10});
  CHECK(r.value_in_from == Cone::orthant(1));
  CHECK(r.value_in_to == Cone::orthant(1));

  // appending a scissors already passed leaves the value unchanged
  auto sum = StratSystem::with_matrices({"1", "2", "3"}, all_subsets(3), {J, J * J, J + J * J});
  IndexedPath g{0b111, 0b100, 0b111};
  auto base = hyperintersect(sum, g);
  CHECK(base.value_in_from == Cone::hull(2, {vec({1, 1})}));
  auto longer = hyperintersect(sum, {0b111, 0b100, 0b111, 0b100});
  CHECK(longer.value_in_from == base.value_in_from);
}

TEST_CASE("enumerate_hyperintersections examples") {
  auto single = StratSystem::with_matrices({"1"}, {0b1}, {J});
  CmcAtlas a1(single);
  auto e = enumerate_hyperintersections(a1, 0b1);
  CHECK(e.values.size() <= 2);
  CHECK(std::find(e.values.begin(), e.values.end(), Cone::orthant(1)) != e.values.end());

  auto simp = StratSystem::with_matrices({"1", "2"}, all_subsets(2), {J, J * J});
  CmcAtlas a2(simp);
  for (Stratum t : simp.nonempty()) {
    auto en = enumerate_hyperintersections(a2, t);
    for (const auto& v : en.values) CHECK(is_face_of(v, a2.at(t).cone));
  }

  auto sum = StratSystem::with_matrices({"1", "2", "3"}, all_subsets(3), {J, J * J, J + J * J});
  CmcAtlas a3(sum);
  auto en = enumerate_hyperintersections(a3, 0b111);
  auto ray = Cone::hull(2, {vec({1, 1})});
  CHECK(std::find(en.values.begin(), en.values.end(), ray) != en.values.end());
  CHECK_THROWS_AS(enumerate_hyperintersections(a3, 0b111, 2), Error);
}

TEST_CASE("random systems: scissors-set determinism, absorption, monotonicity") {
  int pairs = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = random_system(seed);
    CmcAtlas atlas(s);
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 5; ++trial) {
      Stratum start = s.nonempty()[std::uniform_int_distribution<std::size_t>(0, s.nonempty().size() - 1)(rng)];
      auto g = random_walk(rng, s, start, 5);
      auto h = hyperintersect(atlas, g);
      CHECK(contains_cone(atlas.at(start).cone, h.value_in_from));
      CHECK(image_cone(h.value_in_to, h.chart) == h.value_in_from);
      // g . g^-1 . g usually passes the same scissors set; when it does the
      // values must agree
      auto loop = hyperintersect(atlas, concat(concat(g, reversed(g)), g));
      if (loop.scissors_set == h.scissors_set) {
        ++pairs;
        CHECK(loop.value_in_from == h.value_in_from);
      }
      // monotone: prefixes never grow in start coordinates
      Cone prev = atlas.at(start).cone;
      for (std::size_t k = 1; k <= g.size(); ++k) {
        auto part = hyperintersect(atlas, IndexedPath(g.begin(), g.begin() + static_cast<long>(k)));
        CHECK(contains_cone(prev, part.value_in_from));
        prev = part.value_in_from;
      }
      // every value appears in the enumeration
      auto en = enumerate_hyperintersections(atlas, start);
      CHECK(std::binary_search(en.values.begin(), en.values.end(), h.value_in_from));
    }
  }
  CHECK(pairs > 20);
}
