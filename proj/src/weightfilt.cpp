#include "monofan/weightfilt.hpp"

#include <algorithm>
#include <random>

#include "monofan/error.hpp"
#include "monofan/json_io.hpp"

namespace monofan {

namespace {

void require_square(const RatMatrix& n) {
  if (n.rows() != n.cols())
    throw Error(ErrorKind::AmbientMismatch, "matrix is not square", {{"rows", n.rows()}, {"cols", n.cols()}});
}

// Fills levels [-top, top] for N acting on the quotient b / a.
void peel(const RatMatrix& n, const Subspace& a, const Subspace& b, int top, std::map<int, Subspace>& w) {
  if (top < 0) return;
  int m = -1;
  RatMatrix power = RatMatrix::identity(n.rows());
  std::vector<RatMatrix> powers;
  for (int k = 0; k <= top; ++k) {
    powers.push_back(power);
    if (!a.contains(image(power, b))) m = k;
    power = power * n;
  }
  for (int j = -top; j <= top; ++j) {
    if (j >= m && j >= 0) w[j] = b;
    if (j <= -m - 1) w[j] = a;
  }
  if (m <= 0) return;
  const RatMatrix& nm = powers[static_cast<std::size_t>(m)];
  Subspace a2 = a + image(nm, b);
  Subspace b2 = intersect_subspaces(b, preimage(nm, a));
  w[m - 1] = b2;
  w[-m] = a2;
  peel(n, a2, b2, m - 1, w);
}

}  // namespace

Subspace WeightFiltration::at(int k) const {
  if (k < center - index) return Subspace(dim);
  if (k > center + index) return Subspace::full(dim);
  return steps.at(k);
}

bool operator==(const WeightFiltration& a, const WeightFiltration& b) {
  if (a.dim != b.dim || a.center != b.center) return false;
  const int w = std::max(a.index, b.index) + 1;
  for (int k = a.center - w; k <= a.center + w; ++k)
    if (a.at(k) != b.at(k)) return false;
  return true;
}

int nilpotency_index(const RatMatrix& n) {
  require_square(n);
  RatMatrix p = n;
  for (std::size_t k = 0; k <= n.rows(); ++k) {
    if (p.is_zero()) return static_cast<int>(k);
    p = p * n;
  }
  throw Error(ErrorKind::NotNilpotent, "matrix is not nilpotent", {{"matrix", to_json(n)}});
}

WeightFiltration weight_filtration(const RatMatrix& n, int center) {
  const int m = nilpotency_index(n);
  WeightFiltration out;
  out.dim = n.rows();
  out.center = center;
  out.index = m;
  std::map<int, Subspace> rel;
  peel(n, Subspace(n.rows()), Subspace::full(n.rows()), m, rel);
  for (auto& [j, s] : rel) out.steps[center + j] = std::move(s);
  if (!satisfies_weight_axioms(n, out))
    throw Error(ErrorKind::CheckFailed, "weight filtration failed its own axioms", {{"matrix", to_json(n)}});
  return out;
}

bool satisfies_weight_axioms(const RatMatrix& n, const WeightFiltration& w) {
  const int lo = w.center - w.index - 1;
  const int hi = w.center + w.index + 1;
  for (int k = lo; k <= hi; ++k) {
    if (!w.at(k).contains(w.at(k - 1))) return false;
    if (!w.at(k - 2).contains(image(n, w.at(k)))) return false;
  }
  if (w.at(lo).dim() != 0 || w.at(hi).dim() != w.dim) return false;
  RatMatrix power = RatMatrix::identity(w.dim);
  for (int k = 0; k <= w.index + 1; ++k) {
    const Subspace top = w.at(w.center + k);
    const Subspace below_top = w.at(w.center + k - 1);
    const Subspace bottom = w.at(w.center - k);
    const Subspace below_bottom = w.at(w.center - k - 1);
    const std::size_t gr_top = top.dim() - below_top.dim();
    const std::size_t gr_bottom = bottom.dim() - below_bottom.dim();
    if (gr_top != gr_bottom) return false;
    // Injective on Gr_(l+k) with image inside W_(l-k): the induced map hits
    // exactly gr_top dimensions modulo W_(l-k-1).
    Subspace img = image(power, top) + below_bottom;
    if (img.dim() - below_bottom.dim() != gr_top) return false;
    if (!bottom.contains(image(power, top))) return false;
    power = power * n;
  }
  return true;
}

nlohmann::json to_json(const WeightFiltration& w) {
  Json steps = Json::object();
  for (const auto& [k, s] : w.steps) steps[std::to_string(k)] = to_json(s);
  return {{"dim", w.dim}, {"center", w.center}, {"index", w.index}, {"steps", steps}};
}

ConsistencyReport cone_weight_consistency(const std::vector<RatMatrix>& matrices, int center, std::uint64_t seed) {
  if (matrices.empty()) throw Error(ErrorKind::AmbientMismatch, "no matrices given");
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    require_square(matrices[i]);
    if (matrices[i].rows() != matrices.front().rows())
      throw Error(ErrorKind::AmbientMismatch, "matrices have different sizes", {{"index", i}});
    nilpotency_index(matrices[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (matrices[i] * matrices[j] != matrices[j] * matrices[i])
        throw Error(ErrorKind::NonCommuting, "matrices do not commute", {{"pair", {j, i}}});
  }
  const std::size_t n = matrices.size();
  ConsistencyReport rep;
  rep.samples.emplace_back(n, 1);
  std::vector<long> ramp(n);
  for (std::size_t i = 0; i < n; ++i) ramp[i] = static_cast<long>(i) + 1;
  rep.samples.push_back(ramp);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(1, 9);
  for (int draw = 0; draw < 2; ++draw) {
    std::vector<long> c(n);
    for (auto& x : c) x = coef(rng);
    rep.samples.push_back(c);
  }
  std::vector<WeightFiltration> filtrations;
  for (const auto& c : rep.samples) {
    RatMatrix sum(matrices.front().rows(), matrices.front().cols());
    for (std::size_t i = 0; i < n; ++i) sum = sum + matrices[i].scaled(Rat(c[i]));
    filtrations.push_back(weight_filtration(sum, center));
    if (rep.consistent && !(filtrations.back() == filtrations.front())) {
      rep.consistent = false;
      rep.witness = {{"sample", c},
                     {"filtration", to_json(filtrations.back())},
                     {"reference", to_json(filtrations.front())}};
    }
  }
  return rep;
}

}  // namespace monofan
