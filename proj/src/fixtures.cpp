#include "monofan/fixtures.hpp"

#include "monofan/error.hpp"

namespace monofan {

namespace {

std::vector<Stratum> all_subsets(std::size_t n) {
  std::vector<Stratum> out;
  for (Stratum s = 0; s < (Stratum{1} << n); ++s) out.push_back(s);
  return out;
}

RatMatrix jordan(std::size_t n) {
  RatMatrix j(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j.at(i, i + 1) = 1;
  return j;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& n) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return i;
  throw Error(ErrorKind::ParseError, "unknown divisor", {{"name", n}});
}

Stratum bits(const std::vector<std::string>& names, std::initializer_list<std::string> members) {
  Stratum s = 0;
  for (const auto& m : members) s |= Stratum{1} << index_of(names, m);
  return s;
}

std::string exceptional(int point, int k) { return "E" + std::to_string(point) + "_" + std::to_string(k); }

// Coordinate lines D0, D1, D2 of the plane and the quintic C with six nodes
// and one order-5 tangency with each line, resolved by five blow-ups per
// tangency. Each node contributes a second local branch C~j, so its cone is a
// two-element stratum. Only cone dimensions are known, so the data is given
// as kernels: two-element strata of one-dimensional cones have kernel (1,-1).
StratSystem hosono_takagi() {
  std::vector<std::string> names{"D0", "D1", "D2", "C"};
  for (int j = 1; j <= 6; ++j) names.push_back("C~" + std::to_string(j));
  for (int i = 0; i < 3; ++i)
    for (int k = 1; k <= 5; ++k) names.push_back(exceptional(i, k));
  std::vector<Stratum> family;
  for (std::size_t i = 0; i < names.size(); ++i) family.push_back(Stratum{1} << i);
  family.push_back(bits(names, {"D1", "D2"}));
  family.push_back(bits(names, {"D0", "D2"}));
  family.push_back(bits(names, {"D0", "D1"}));
  for (int j = 1; j <= 6; ++j) family.push_back(bits(names, {"C", "C~" + std::to_string(j)}));
  std::map<Stratum, Subspace> kernels;
  const Subspace diagonal = Subspace::span(2, {{Rat(1), Rat(-1)}});
  for (int i = 0; i < 3; ++i) {
    family.push_back(bits(names, {"D" + std::to_string(i), exceptional(i, 5)}));
    for (int k = 1; k < 5; ++k) {
      Stratum s = bits(names, {exceptional(i, k), exceptional(i, k + 1)});
      family.push_back(s);
      kernels[s] = diagonal;
    }
    Stratum s = bits(names, {exceptional(i, 5), "C"});
    family.push_back(s);
    kernels[s] = diagonal;
  }
  return StratSystem::with_kernels(names, family, kernels);
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"curve", "simplicial-surface", "simplicial-threefold", "equal-pair", "sum", "hosono-takagi"};
}

StratSystem fixture(const std::string& name) {
  const RatMatrix j = jordan(3);
  if (name == "curve") return StratSystem::with_matrices({"1", "2"}, {0b01, 0b10}, {j, j * j});
  if (name == "simplicial-surface") return StratSystem::with_matrices({"1", "2"}, all_subsets(2), {j, j * j});
  if (name == "simplicial-threefold") {
    const RatMatrix j4 = jordan(4);
    return StratSystem::with_matrices({"1", "2", "3"}, all_subsets(3), {j4, j4 * j4, j4 * j4 * j4});
  }
  if (name == "equal-pair") return StratSystem::with_matrices({"1", "2"}, all_subsets(2), {j, j});
  if (name == "sum") return StratSystem::with_matrices({"1", "2", "3"}, all_subsets(3), {j, j * j, j + j * j});
  if (name == "hosono-takagi") return hosono_takagi();
  throw Error(ErrorKind::ParseError, "unknown fixture", {{"name", name}});
}

std::vector<CensusEntry> hosono_takagi_census(const StratSystem& s) {
  const auto& names = s.divisors();
  std::vector<CensusEntry> out{{"sigma_x", bits(names, {"D1", "D2"}), 2},
                               {"sigma_y", bits(names, {"D0", "D2"}), 2},
                               {"sigma_z", bits(names, {"D0", "D1"}), 2}};
  for (int i = 0; i < 3; ++i)
    out.push_back({"sigma_" + std::to_string(i), bits(names, {"D" + std::to_string(i), exceptional(i, 5)}), 2});
  for (int j = 1; j <= 6; ++j)
    out.push_back({"tau_" + std::to_string(j), bits(names, {"C", "C~" + std::to_string(j)}), 2});
  Stratum all_e = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = 1; k <= 5; ++k) all_e |= bits(names, {exceptional(i, k)});
  for (Stratum x : s.nonempty()) {
    if ((x & all_e) == 0) continue;
    bool listed = false;
    for (const auto& e : out) listed |= e.stratum == x;
    if (!listed) out.push_back({"E{" + s.key(x) + "}", x, 1});
  }
  return out;
}

}  // namespace monofan
