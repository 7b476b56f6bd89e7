#include "monofan/sampling.hpp"

#include <algorithm>

#include "monofan/error.hpp"

namespace monofan {

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("d" + std::to_string(i + 1));
  return out;
}

// Nilpotent matrix with the given Jordan block sizes.
RatMatrix jordan(const std::vector<std::size_t>& blocks) {
  std::size_t d = 0;
  for (auto b : blocks) d += b;
  RatMatrix m(d, d);
  std::size_t off = 0;
  for (auto b : blocks) {
    for (std::size_t i = 0; i + 1 < b; ++i) m.at(off + i, off + i + 1) = 1;
    off += b;
  }
  return m;
}

std::vector<std::size_t> random_partition(std::mt19937_64& rng, std::size_t d) {
  std::vector<std::size_t> parts;
  std::size_t left = d;
  while (left > 0) {
    std::size_t p = static_cast<std::size_t>(draw(rng, 1, static_cast<int>(left)));
    parts.push_back(p);
    left -= p;
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

RatMatrix random_polynomial(std::mt19937_64& rng, const RatMatrix& n, int c) {
  RatMatrix out(n.rows(), n.cols());
  RatMatrix pw = n;
  while (!pw.is_zero()) {
    out = out + pw.scaled(draw(rng, -c, c));
    pw = pw * n;
  }
  return out;
}

RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

[[noreturn]] void exhausted(const char* what) {
  throw Error(ErrorKind::ResourceCap, std::string("no valid random system found: ") + what);
}

}  // namespace

std::vector<Stratum> random_family(std::mt19937_64& rng, std::size_t n) {
  std::vector<Stratum> family;
  const Stratum all = (Stratum{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) family.push_back(Stratum{1} << i);
  int tops = draw(rng, 1, static_cast<int>(n));
  for (int t = 0; t < tops; ++t) {
    Stratum top = static_cast<Stratum>(std::uniform_int_distribution<std::uint64_t>(1, all)(rng));
    for (Stratum sub = top;; sub = (sub - 1) & top) {
      family.push_back(sub);
      if (sub == 0) break;
    }
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

StratSystem random_matrix_system(std::mt19937_64& rng, const SamplingOptions& opt) {
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    std::size_t n = static_cast<std::size_t>(
        draw(rng, static_cast<int>(opt.min_divisors), static_cast<int>(opt.max_divisors)));
    std::size_t d = static_cast<std::size_t>(draw(rng, 2, static_cast<int>(opt.max_matrix_size)));
    std::vector<RatMatrix> ms;
    if (d >= 4 && draw(rng, 0, 1) == 1) {
      std::size_t d1 = static_cast<std::size_t>(draw(rng, 2, static_cast<int>(d) - 2));
      RatMatrix a = jordan(random_partition(rng, d1));
      RatMatrix b = jordan(random_partition(rng, d - d1));
      for (std::size_t i = 0; i < n; ++i)
        ms.push_back(block_diag(random_polynomial(rng, a, opt.max_coefficient),
                                random_polynomial(rng, b, opt.max_coefficient)));
    } else {
      RatMatrix a = jordan(random_partition(rng, d));
      for (std::size_t i = 0; i < n; ++i) ms.push_back(random_polynomial(rng, a, opt.max_coefficient));
    }
    if (n >= 3 && draw(rng, 0, 2) == 0) {
      auto i = static_cast<std::size_t>(draw(rng, 0, static_cast<int>(n) - 2));
      auto j = static_cast<std::size_t>(draw(rng, 0, static_cast<int>(n) - 3));
      if (j >= i) ++j;
      ms.back() = ms[i].scaled(draw(rng, 1, 2)) + ms[j].scaled(draw(rng, 1, 2));
    }
    auto s = StratSystem::with_matrices(names(n), random_family(rng, n), std::move(ms));
    if (validate(s).ok) return s;
  }
  exhausted("matrices");
}

StratSystem random_kernel_system(std::mt19937_64& rng, const SamplingOptions& opt) {
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    std::size_t n = static_cast<std::size_t>(
        draw(rng, static_cast<int>(opt.min_divisors), static_cast<int>(opt.max_divisors)));
    auto family = random_family(rng, n);
    auto probe = StratSystem::with_kernels(names(n), family, {});
    std::map<Stratum, Subspace> ks;
    for (Stratum top : probe.maximal_strata()) {
      const std::size_t m = stratum_size(top);
      if (m < 2) continue;
      std::vector<RatVec> vs;
      int count = draw(rng, 0, static_cast<int>(m) - 1);
      for (int k = 0; k < count; ++k) {
        RatVec v(m, Rat(0));
        for (auto& x : v)
          if (draw(rng, 0, 2) > 0) x = draw(rng, -opt.max_coefficient, opt.max_coefficient);
        vs.push_back(v);
      }
      ks[top] = Subspace::span(m, vs);
    }
    for (Stratum t : probe.nonempty()) {
      if (ks.count(t)) continue;
      for (auto& [top, k] : std::map<Stratum, Subspace>(ks))
        if (is_subset(t, top) && t != top) {
          ks[t] = restrict_kernel(k, top, t);
          break;
        }
    }
    auto s = StratSystem::with_kernels(names(n), family, ks);
    if (validate(s).ok) return s;
  }
  exhausted("kernels");
}

StratSystem random_system(std::uint64_t seed, const SamplingOptions& opt) {
  std::mt19937_64 rng(seed);
  return seed % 2 == 0 ? random_matrix_system(rng, opt) : random_kernel_system(rng, opt);
}

RatMatrix random_nilpotent(std::mt19937_64& rng, std::size_t size, int c) {
  RatMatrix u(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) u.at(i, j) = draw(rng, -c, c);
  // unimodular g = lower unitriangular * upper unitriangular, inverse exact
  RatMatrix lo = RatMatrix::identity(size), up = RatMatrix::identity(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lo.at(i, j) = draw(rng, -1, 1);
      up.at(j, i) = draw(rng, -1, 1);
    }
  RatMatrix g = lo * up;
  return g * u * right_inverse(g);
}

RatMatrix random_small_nilpotent(std::mt19937_64& rng, std::size_t size, int bound) {
  RatMatrix u(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) u.at(i, j) = draw(rng, -bound, bound);
  std::vector<std::size_t> perm(size);
  for (std::size_t i = 0; i < size; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  RatMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) m.at(perm[i], perm[j]) = u.at(i, j);
  if (size < 2) return m;
  for (std::size_t attempt = 0; attempt < 2 * size; ++attempt) {
    auto i = static_cast<std::size_t>(draw(rng, 0, static_cast<int>(size) - 1));
    auto j = static_cast<std::size_t>(draw(rng, 0, static_cast<int>(size) - 1));
    if (i == j) continue;
    const int c = draw(rng, 0, 1) == 0 ? -1 : 1;
    RatMatrix e = RatMatrix::identity(size), einv = RatMatrix::identity(size);
    e.at(i, j) = c;
    einv.at(i, j) = -c;
    RatMatrix next = e * m * einv;
    bool small = true;
    for (std::size_t r = 0; r < size && small; ++r)
      for (std::size_t k = 0; k < size; ++k)
        if (abs(next.at(r, k)) > bound) small = false;
    if (small) m = std::move(next);
  }
  return m;
}

}  // namespace monofan
