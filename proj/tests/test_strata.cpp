#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "monofan/error.hpp"
#include "monofan/strata.hpp"
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

const RatMatrix J2 = mat({{0, 1}, {0, 0}});

}  // namespace

TEST_CASE("validate examples") {
  auto ok = StratSystem::with_matrices({"1", "2"}, all_subsets(2), {J2, J2});
  CHECK(validate(ok).ok);

  auto a = mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
  auto b = mat({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  auto nc = StratSystem::with_matrices({"1", "2"}, all_subsets(2), {a, b});
  auto r = validate(nc);
  CHECK_FALSE(r.ok);
  CHECK(r.kind == "CommutationFailure");
  CHECK(r.witness["stratum"] == "1,2");
  // without the joint stratum the pair never has to commute
  CHECK(validate(StratSystem::with_matrices({"1", "2"}, {0b01, 0b10}, {a, b})).ok);

  std::map<Stratum, Subspace> ks{{0b11, Subspace::span(2, {vec({1, -1})})}, {0b01, Subspace::full(1)}};
  auto bad = StratSystem::with_kernels({"1", "2"}, all_subsets(2), ks);
  auto rb = validate(bad);
  CHECK(rb.kind == "RestrictionMismatch");
  CHECK(rb.witness["substratum"] == "1");

  auto nn = StratSystem::with_matrices({"1"}, {0b1}, {mat({{1, 0}, {0, 0}})});
  CHECK(validate(nn).kind == "NotNilpotent");
  CHECK(validate(StratSystem::with_matrices({"1", "2"}, {0b11}, {J2, J2})).kind == "DownwardClosureGap");
  auto pos = StratSystem::with_matrices({"1", "2"}, all_subsets(2), {J2, J2.scaled(-1)});
  CHECK(validate(pos).kind == "PositiveKernelVector");
}

TEST_CASE("kernel_of examples") {
  auto s = StratSystem::with_matrices({"1", "2"}, all_subsets(2), {J2, J2});
  CHECK(s.kernel_of(0b01).dim() == 0);
  REQUIRE(s.kernel_of(0b11).dim() == 1);
  CHECK(s.kernel_of(0b11).basis()[0] == vec({1, -1}));
  auto a = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  auto t = StratSystem::with_matrices({"1", "2"}, all_subsets(2), {a, a * a});
  CHECK(t.kernel_of(0b11).dim() == 0);
  CHECK_THROWS_AS(StratSystem::with_matrices({"1", "2"}, {0b01}, {J2, J2}).kernel_of(0b11), Error);
}

TEST_CASE("adjacency examples") {
  auto chain = StratSystem::with_kernels({"1", "2"}, {0b01, 0b11}, {});
  // 0 < {1} < {1,2}: all three comparable pairs
  CHECK(adjacency(chain).size() == 3);
  auto apart = StratSystem::with_kernels({"1", "2"}, {0b01, 0b10}, {});
  for (auto [a, b] : adjacency(apart)) CHECK(a == 0);
  auto full = StratSystem::with_kernels({"1", "2", "3"}, all_subsets(3), {});
  // brute-force count of strictly comparable pairs in the Boolean lattice
  std::size_t expect = 0;
  for (Stratum a = 0; a < 8; ++a)
    for (Stratum b = 0; b < 8; ++b)
      if (a != b && (a & b) == a) ++expect;
  CHECK(expect == 19);
  CHECK(adjacency(full).size() == expect);
}

TEST_CASE("matrix kernels obey the restriction law") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto n3 = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RatMatrix> ms;
    for (int i = 0; i < 4; ++i) ms.push_back(n3.scaled(coef(rng)) + (n3 * n3).scaled(coef(rng)));
    auto s = StratSystem::with_matrices({"a", "b", "c", "d"}, all_subsets(4), ms);
    for (Stratum t : s.nonempty())
      for (Stratum u : s.nonempty())
        if (is_subset(u, t)) CHECK(restrict_kernel(s.kernel_of(t), t, u) == s.kernel_of(u));
    auto r = validate(s);
    CHECK((r.ok || r.kind == "PositiveKernelVector"));
  }
}

TEST_CASE("keys round trip") {
  auto s = StratSystem::with_kernels({"x", "y", "z"}, {0b101}, {});
  CHECK(s.key(0b101) == "x,z");
  CHECK(s.parse_key("z, x") == 0b101);
  CHECK(s.key(0) == "");
  CHECK_THROWS_AS(s.parse_key("w"), Error);
  CHECK(s.nonempty() == std::vector<Stratum>{0, 0b101});
  CHECK(validate(s).kind == "DownwardClosureGap");
  CHECK(s.maximal_strata() == std::vector<Stratum>{0b101});
}
