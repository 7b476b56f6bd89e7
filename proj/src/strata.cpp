#include "monofan/strata.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "monofan/cone.hpp"
#include "monofan/error.hpp"
#include "monofan/json_io.hpp"

namespace monofan {

std::size_t stratum_size(Stratum s) { return static_cast<std::size_t>(std::popcount(s)); }

std::vector<std::size_t> stratum_members(Stratum s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i)
    if (s & (Stratum{1} << i)) out.push_back(i);
  return out;
}

bool is_subset(Stratum a, Stratum b) { return (a & ~b) == 0; }

bool stratum_less(Stratum a, Stratum b) {
  auto sa = stratum_size(a), sb = stratum_size(b);
  return sa != sb ? sa < sb : a < b;
}

RatMatrix coordinate_inclusion(Stratum sub, Stratum sup) {
  if (!is_subset(sub, sup)) throw Error(ErrorKind::NotSubstratum, "coordinate_inclusion: not a substratum");
  auto big = stratum_members(sup);
  auto small = stratum_members(sub);
  RatMatrix m(big.size(), small.size());
  for (std::size_t j = 0; j < small.size(); ++j) {
    auto pos = std::find(big.begin(), big.end(), small[j]) - big.begin();
    m.at(static_cast<std::size_t>(pos), j) = 1;
  }
  return m;
}

namespace {

std::vector<Stratum> normalize_family(std::vector<Stratum> family) {
  family.push_back(0);
  std::sort(family.begin(), family.end(), stratum_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

void check_divisor_count(std::size_t n, const std::vector<Stratum>& family) {
  if (n > 64) throw Error(ErrorKind::ParseError, "at most 64 divisors are supported", {{"divisors", n}});
  const Stratum all = n == 64 ? ~Stratum{0} : ((Stratum{1} << n) - 1);
  for (Stratum s : family)
    if (!is_subset(s, all)) throw Error(ErrorKind::ParseError, "stratum uses an unknown divisor index");
}

// vec(N_i) as columns, one column per divisor of the stratum.
Subspace matrix_kernel(const std::vector<RatMatrix>& ms, Stratum s) {
  auto idx = stratum_members(s);
  if (idx.empty()) return Subspace(0);
  const auto& first = ms[idx.front()];
  RatMatrix big(first.rows() * first.cols(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const auto& m = ms[idx[j]];
    if (m.rows() != first.rows() || m.cols() != first.cols()) return Subspace(idx.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) big.at(r * m.cols() + c, j) = m.at(r, c);
  }
  return kernel(big);
}

}  // namespace

StratSystem StratSystem::with_matrices(std::vector<std::string> divisors, std::vector<Stratum> nonempty,
                                       std::vector<RatMatrix> matrices) {
  if (matrices.size() != divisors.size())
    throw Error(ErrorKind::ParseError, "one matrix per divisor is required",
                {{"divisors", divisors.size()}, {"matrices", matrices.size()}});
  check_divisor_count(divisors.size(), nonempty);
  StratSystem s;
  s.mode_ = Mode::Matrices;
  s.divisors_ = std::move(divisors);
  s.nonempty_ = normalize_family(std::move(nonempty));
  s.matrices_ = std::move(matrices);
  for (Stratum t : s.nonempty_) s.kernels_.emplace(t, matrix_kernel(s.matrices_, t));
  return s;
}

StratSystem StratSystem::with_kernels(std::vector<std::string> divisors, std::vector<Stratum> nonempty,
                                      std::map<Stratum, Subspace> kernels) {
  check_divisor_count(divisors.size(), nonempty);
  StratSystem s;
  s.mode_ = Mode::Kernels;
  s.divisors_ = std::move(divisors);
  s.nonempty_ = normalize_family(std::move(nonempty));
  for (auto& [t, k] : kernels)
    if (!std::binary_search(s.nonempty_.begin(), s.nonempty_.end(), t, stratum_less))
      throw Error(ErrorKind::UnknownStratum, "kernel given for a stratum outside the nonempty family",
                  {{"stratum", s.key(t)}});
  for (Stratum t : s.nonempty_) {
    auto it = kernels.find(t);
    s.kernels_.emplace(t, it == kernels.end() ? Subspace(stratum_size(t)) : std::move(it->second));
  }
  return s;
}

bool StratSystem::is_nonempty(Stratum s) const {
  return std::binary_search(nonempty_.begin(), nonempty_.end(), s, stratum_less);
}

const Subspace& StratSystem::kernel_of(Stratum s) const {
  auto it = kernels_.find(s);
  if (it == kernels_.end()) throw Error(ErrorKind::UnknownStratum, "stratum is not in the nonempty family",
                                        {{"stratum", key(s)}});
  return it->second;
}

std::string StratSystem::key(Stratum s) const {
  std::string out;
  for (std::size_t i : stratum_members(s)) {
    if (!out.empty()) out += ',';
    out += i < divisors_.size() ? divisors_[i] : "#" + std::to_string(i);
  }
  return out;
}

Stratum StratSystem::parse_key(const std::string& text) const {
  Stratum s = 0;
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) continue;
    auto it = std::find(divisors_.begin(), divisors_.end(), name);
    if (it == divisors_.end()) throw Error(ErrorKind::ParseError, "unknown divisor name", {{"name", name}});
    s |= Stratum{1} << (it - divisors_.begin());
  }
  return s;
}

std::vector<Stratum> StratSystem::maximal_strata() const {
  std::vector<Stratum> out;
  for (Stratum s : nonempty_) {
    bool covered = std::any_of(nonempty_.begin(), nonempty_.end(), [&](Stratum t) { return t != s && is_subset(s, t); });
    if (!covered) out.push_back(s);
  }
  return out;
}

Subspace restrict_kernel(const Subspace& k, Stratum sup, Stratum sub) {
  RatMatrix inc = coordinate_inclusion(sub, sup);
  return preimage(inc, k);
}

ValidationReport validate(const StratSystem& s) {
  auto fail = [](std::string kind, nlohmann::json w) { return ValidationReport{false, std::move(kind), std::move(w)}; };
  const auto& fam = s.nonempty();

  if (s.mode() == StratSystem::Mode::Matrices) {
    const auto& ms = s.matrices();
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (ms[i].rows() != ms.front().rows() || ms[i].cols() != ms[i].rows())
        return fail("AmbientMismatch", {{"divisor", s.divisors()[i]}, {"rows", ms[i].rows()}, {"cols", ms[i].cols()}});
      if (!ms[i].power(static_cast<unsigned>(ms[i].rows())).is_zero())
        return fail("NotNilpotent", {{"divisor", s.divisors()[i]}, {"matrix", to_json(ms[i])}});
    }
  }

  for (Stratum t : fam)
    for (std::size_t i : stratum_members(t)) {
      Stratum sub = t & ~(Stratum{1} << i);
      if (!s.is_nonempty(sub)) return fail("DownwardClosureGap", {{"stratum", s.key(t)}, {"missing", s.key(sub)}});
    }

  if (s.mode() == StratSystem::Mode::Matrices) {
    const auto& ms = s.matrices();
    for (Stratum t : fam) {
      auto idx = stratum_members(t);
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          const auto& x = ms[idx[a]];
          const auto& y = ms[idx[b]];
          if (!(x * y == y * x))
            return fail("CommutationFailure",
                        {{"stratum", s.key(t)}, {"pair", {s.divisors()[idx[a]], s.divisors()[idx[b]]}}});
        }
    }
  } else {
    for (Stratum t : fam)
      if (s.kernel_of(t).ambient_dim() != stratum_size(t))
        return fail("AmbientMismatch", {{"stratum", s.key(t)}, {"ambient", s.kernel_of(t).ambient_dim()}});
    for (Stratum t : fam)
      for (std::size_t i : stratum_members(t)) {
        Stratum sub = t & ~(Stratum{1} << i);
        if (!(restrict_kernel(s.kernel_of(t), t, sub) == s.kernel_of(sub)))
          return fail("RestrictionMismatch", {{"stratum", s.key(t)},
                                              {"substratum", s.key(sub)},
                                              {"restricted", to_json(restrict_kernel(s.kernel_of(t), t, sub))},
                                              {"stored", to_json(s.kernel_of(sub))}});
      }
  }

  for (Stratum t : fam) {
    const auto& k = s.kernel_of(t);
    if (k.dim() == 0) continue;
    const std::size_t n = stratum_size(t);
    Cone pos = intersect(Cone::hull(n, {}, k.basis()), Cone::orthant(n));
    if (pos.dim() > 0)
      return fail("PositiveKernelVector", {{"stratum", s.key(t)}, {"vector", to_json(pos.rays().front())}});
  }
  return {};
}

std::vector<std::pair<Stratum, Stratum>> adjacency(const StratSystem& s) {
  std::vector<std::pair<Stratum, Stratum>> out;
  for (Stratum a : s.nonempty())
    for (Stratum b : s.nonempty())
      if (a != b && is_subset(a, b)) out.emplace_back(a, b);
  return out;
}

}  // namespace monofan
