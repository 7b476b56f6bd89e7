#include "monofan/cone.hpp"

#include <algorithm>
#include <set>

#include "monofan/error.hpp"

namespace monofan {

namespace {

using IntVec = std::vector<Int>;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  void set_prefix(std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) set(i);
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

Int idot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

void make_primitive(IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntVec to_int(const RatVec& v) {
  RatVec p = primitive(v);
  IntVec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].get_num();
  return out;
}

RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

struct DDResult {
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;
};

// Incremental double description (Motzkin) with the combinatorial adjacency
// test. Equations are processed first, then inequalities in input order.
DDResult double_description(std::size_t n, const std::vector<IntVec>& inequalities,
                            const std::vector<IntVec>& equations) {
  struct Ray {
    IntVec v;
    Bits zero;
  };
  const std::size_t total = inequalities.size() + equations.size();
  std::vector<IntVec> lin;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < total; ++k) {
    const bool is_eq = k < equations.size();
    const IntVec& a = is_eq ? equations[k] : inequalities[k - equations.size()];

    std::size_t idx = lin.size();
    Int al;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      al = idot(a, lin[i]);
      if (sgn(al) != 0) {
        idx = i;
        break;
      }
    }

    if (idx < lin.size()) {
      IntVec l = lin[idx];
      if (sgn(al) < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(idx));
      for (auto& other : lin) {
        Int c = idot(a, other);
        if (sgn(c) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) other[j] = al * other[j] - c * l[j];
        make_primitive(other);
      }
      for (auto& r : rays) {
        Int c = idot(a, r.v);
        if (sgn(c) != 0) {
          for (std::size_t j = 0; j < n; ++j) r.v[j] = al * r.v[j] - c * l[j];
          make_primitive(r.v);
        }
        r.zero.set(k);
      }
      if (!is_eq) {
        Bits z(total);
        z.set_prefix(k);
        rays.push_back({std::move(l), std::move(z)});
      }
      continue;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<Int> val(rays.size());
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = idot(a, rays[i].v);
      int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      else if (s < 0) neg.push_back(i);
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      int s = sgn(val[i]);
      if (s == 0) {
        Ray r = rays[i];
        r.zero.set(k);
        next.push_back(std::move(r));
      } else if (s > 0 && !is_eq) {
        next.push_back(rays[i]);
      }
    }
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
        make_primitive(v);
        common.set(k);
        next.push_back({std::move(v), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  DDResult out;
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  out.lineality = std::move(lin);
  return out;
}

std::vector<IntVec> to_int_list(const std::vector<RatVec>& vs, std::size_t n) {
  std::vector<IntVec> out;
  for (const auto& v : vs) {
    if (v.size() != n) throw Error(ErrorKind::AmbientMismatch, "vector length does not match ambient dimension");
    if (is_zero(v)) continue;
    out.push_back(to_int(v));
  }
  return out;
}

std::vector<RatVec> to_rat_list(const std::vector<IntVec>& vs) {
  std::vector<RatVec> out;
  for (const auto& v : vs) out.push_back(to_rat(v));
  return out;
}

std::vector<RatVec> canonical_mod(const std::vector<RatVec>& vs, const Subspace& modulo) {
  std::vector<RatVec> out;
  for (const auto& v : vs) {
    RatVec r = modulo.reduce(v);
    if (is_zero(r)) continue;
    out.push_back(primitive(r));
  }
  std::sort(out.begin(), out.end(), [](const RatVec& a, const RatVec& b) { return compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Cone Cone::build(std::size_t n, std::vector<RatVec> rays, std::vector<RatVec> lineality,
                 std::vector<RatVec> facets, std::vector<RatVec> equations) {
  Cone c;
  c.ambient_ = n;
  c.lineality_ = Subspace::span(n, std::move(lineality));
  c.equations_ = Subspace::span(n, std::move(equations));
  c.rays_ = canonical_mod(rays, c.lineality_);
  c.facets_ = canonical_mod(facets, c.equations_);
  return c;
}

Cone Cone::hull(std::size_t n, const std::vector<RatVec>& generators, const std::vector<RatVec>& lineality) {
  auto gens = to_int_list(generators, n);
  auto lins = to_int_list(lineality, n);
  DDResult dual = double_description(n, gens, lins);
  DDResult primal = double_description(n, dual.rays, dual.lineality);
  return build(n, to_rat_list(primal.rays), to_rat_list(primal.lineality), to_rat_list(dual.rays),
               to_rat_list(dual.lineality));
}

Cone Cone::from_constraints(std::size_t n, const std::vector<RatVec>& inequalities,
                            const std::vector<RatVec>& equations) {
  auto ineq = to_int_list(inequalities, n);
  auto eqs = to_int_list(equations, n);
  DDResult primal = double_description(n, ineq, eqs);
  DDResult dual = double_description(n, primal.rays, primal.lineality);
  return build(n, to_rat_list(primal.rays), to_rat_list(primal.lineality), to_rat_list(dual.rays),
               to_rat_list(dual.lineality));
}

Cone Cone::zero(std::size_t n) {
  std::vector<RatVec> eqs;
  for (std::size_t i = 0; i < n; ++i) eqs.push_back(unit_vector(n, i));
  return build(n, {}, {}, {}, std::move(eqs));
}

Cone Cone::orthant(std::size_t n) {
  std::vector<RatVec> units;
  for (std::size_t i = 0; i < n; ++i) units.push_back(unit_vector(n, i));
  return build(n, units, {}, units, {});
}

Subspace Cone::span() const {
  std::vector<RatVec> gens = rays_;
  gens.insert(gens.end(), lineality_.basis().begin(), lineality_.basis().end());
  return Subspace::span(ambient_, std::move(gens));
}

bool Cone::contains(const RatVec& v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::AmbientMismatch, "point dimension does not match cone");
  for (const auto& e : equations_.basis())
    if (sgn(dot(e, v)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(dot(f, v)) < 0) return false;
  return true;
}

bool Cone::relint_contains(const RatVec& v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::AmbientMismatch, "point dimension does not match cone");
  for (const auto& e : equations_.basis())
    if (sgn(dot(e, v)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(dot(f, v)) <= 0) return false;
  return true;
}

RatVec Cone::relint_point() const {
  RatVec g(ambient_, Rat(0));
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < ambient_; ++i) g[i] += r[i];
  return g;
}

std::vector<Cone> Cone::facet_cones() const {
  std::vector<Cone> out;
  for (const auto& f : facets_) {
    std::vector<RatVec> gens;
    for (const auto& r : rays_)
      if (sgn(dot(f, r)) == 0) gens.push_back(r);
    out.push_back(hull(ambient_, gens, lineality_.basis()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cone> Cone::faces() const {
  std::set<Cone> seen{*this};
  std::vector<Cone> frontier{*this};
  while (!frontier.empty()) {
    std::vector<Cone> next;
    for (const auto& c : frontier)
      for (auto& f : c.facet_cones())
        if (seen.insert(f).second) next.push_back(std::move(f));
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

Cone Cone::minimal_face_containing(const Cone& sub) const {
  std::vector<RatVec> gens = sub.rays();
  gens.insert(gens.end(), sub.lineality().basis().begin(), sub.lineality().basis().end());
  std::vector<const RatVec*> tight;
  for (const auto& f : facets_) {
    bool vanishes = std::all_of(gens.begin(), gens.end(), [&](const RatVec& g) { return sgn(dot(f, g)) == 0; });
    if (vanishes) tight.push_back(&f);
  }
  if (tight.empty()) return *this;
  std::vector<RatVec> face_rays;
  for (const auto& r : rays_) {
    bool on = std::all_of(tight.begin(), tight.end(), [&](const RatVec* f) { return sgn(dot(*f, r)) == 0; });
    if (on) face_rays.push_back(r);
  }
  return hull(ambient_, face_rays, lineality_.basis());
}

std::strong_ordering operator<=>(const Cone& a, const Cone& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.lineality_.dim() <=> b.lineality_.dim(); c != 0) return c;
  for (std::size_t i = 0; i < a.lineality_.dim(); ++i) {
    int c = compare(a.lineality_.basis()[i], b.lineality_.basis()[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.rays_.size() <=> b.rays_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.rays_.size(); ++i) {
    int c = compare(a.rays_[i], b.rays_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Cone image_cone(const Cone& c, const RatMatrix& m) {
  if (m.cols() != c.ambient_dim())
    throw Error(ErrorKind::AmbientMismatch, "image_cone: map columns do not match cone ambient dimension",
                {{"map_cols", m.cols()}, {"ambient", c.ambient_dim()}});
  std::vector<RatVec> gens, lins;
  for (const auto& r : c.rays()) gens.push_back(m * r);
  for (const auto& l : c.lineality().basis()) lins.push_back(m * l);
  return Cone::hull(m.rows(), gens, lins);
}

bool contains_cone(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::AmbientMismatch, "contains_cone: ambient dimensions differ");
  for (const auto& r : b.rays())
    if (!a.contains(r)) return false;
  for (const auto& l : b.lineality().basis()) {
    RatVec neg = l;
    for (auto& x : neg) x = -x;
    if (!a.contains(l) || !a.contains(neg)) return false;
  }
  return true;
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::AmbientMismatch, "intersect: ambient dimensions differ",
                {{"a", a.ambient_dim()}, {"b", b.ambient_dim()}});
  if (contains_cone(a, b)) return b;
  if (contains_cone(b, a)) return a;
  std::vector<RatVec> ineq = a.facets();
  ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
  std::vector<RatVec> eqs = a.equations().basis();
  eqs.insert(eqs.end(), b.equations().basis().begin(), b.equations().basis().end());
  return Cone::from_constraints(a.ambient_dim(), ineq, eqs);
}

bool is_face_of(const Cone& a, const Cone& b) {
  if (!contains_cone(b, a)) return false;
  return b.minimal_face_containing(a) == a;
}

bool relints_meet(const Cone& a, const Cone& b) {
  Cone c = intersect(a, b);
  RatVec g = c.relint_point();
  return a.relint_contains(g) && b.relint_contains(g);
}

}  // namespace monofan
