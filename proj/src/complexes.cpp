#include "monofan/complexes.hpp"

#include <algorithm>
#include <set>

#include "monofan/error.hpp"
#include "monofan/json_io.hpp"

namespace monofan {

namespace {

void sort_unique(std::vector<Cone>& cones) {
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
}

void check_ambient(std::size_t n, const std::vector<Cone>& cones, const char* where) {
  for (const auto& c : cones)
    if (c.ambient_dim() != n)
      throw Error(ErrorKind::AmbientMismatch, std::string(where) + ": cone ambient dimension differs",
                  {{"expected", n}, {"cone", to_json(c)}});
}

bool sorted_contains(const std::vector<Cone>& sorted, const Cone& c) {
  return std::binary_search(sorted.begin(), sorted.end(), c);
}

Cone half(const Cone& c, const RatVec& h, bool positive) {
  std::vector<RatVec> ineq = c.facets();
  RatVec g = h;
  if (!positive)
    for (auto& x : g) x = -x;
  ineq.push_back(std::move(g));
  return Cone::from_constraints(c.ambient_dim(), ineq, c.equations().basis());
}

// Facets of every member; a member of a face-closed family is maximal iff it
// is not one of these.
std::vector<Cone> maximal_of_closed(const std::vector<Cone>& sorted) {
  std::set<Cone> facets;
  for (const auto& c : sorted)
    for (auto& f : c.facet_cones()) facets.insert(std::move(f));
  std::vector<Cone> out;
  for (const auto& c : sorted)
    if (!facets.count(c)) out.push_back(c);
  return out;
}

[[noreturn]] void overlap_witness(const Cone& a, const Cone& b) {
  for (const auto& fa : a.faces())
    for (const auto& fb : b.faces())
      if (fa != fb && relints_meet(fa, fb))
        throw Error(ErrorKind::InteriorOverlap, "two cells have overlapping relative interiors",
                    {{"a", to_json(fa)}, {"b", to_json(fb)}});
  throw Error(ErrorKind::InteriorOverlap, "maximal cells do not meet in a common face",
              {{"a", to_json(a)}, {"b", to_json(b)}});
}

}  // namespace

std::vector<Cone> face_closure(const std::vector<Cone>& cones) {
  std::set<Cone> seen;
  for (const auto& c : cones) {
    if (seen.count(c)) continue;
    for (auto& f : c.faces()) seen.insert(std::move(f));
  }
  return {seen.begin(), seen.end()};
}

PolyComplex PolyComplex::validate(std::size_t n, std::vector<Cone> cones) {
  check_ambient(n, cones, "validate_complex");
  sort_unique(cones);
  for (const auto& c : cones)
    for (const auto& f : c.facet_cones())
      if (!sorted_contains(cones, f))
        throw Error(ErrorKind::NotFaceClosed, "a face of a cell is missing from the complex",
                    {{"cone", to_json(c)}, {"face", to_json(f)}});
  // With face closure in place, disjoint relative interiors is equivalent to
  // every two maximal cells meeting in a common face.
  auto maxi = maximal_of_closed(cones);
  for (std::size_t i = 0; i < maxi.size(); ++i)
    for (std::size_t j = i + 1; j < maxi.size(); ++j) {
      Cone m = intersect(maxi[i], maxi[j]);
      if (!is_face_of(m, maxi[i]) || !is_face_of(m, maxi[j])) overlap_witness(maxi[i], maxi[j]);
    }
  PolyComplex out;
  out.ambient_ = n;
  out.cones_ = std::move(cones);
  return out;
}

PolyComplex PolyComplex::closure_of(std::size_t n, const std::vector<Cone>& cones) {
  check_ambient(n, cones, "closure_of");
  return validate(n, face_closure(cones));
}

PolyComplex PolyComplex::of_cone(const Cone& c) {
  PolyComplex out;
  out.ambient_ = c.ambient_dim();
  out.cones_ = c.faces();
  return out;
}

bool PolyComplex::contains(const Cone& c) const { return sorted_contains(cones_, c); }

std::vector<Cone> PolyComplex::maximal_cones() const { return maximal_of_closed(cones_); }

std::vector<Cone> PolyComplex::cells_of_dim(std::size_t d) const {
  std::vector<Cone> out;
  for (const auto& c : cones_)
    if (c.dim() == d) out.push_back(c);
  return out;
}

std::size_t PolyComplex::max_dim() const {
  std::size_t d = 0;
  for (const auto& c : cones_) d = std::max(d, c.dim());
  return d;
}

Cone PolyComplex::support_hull() const {
  std::vector<RatVec> gens, lins;
  for (const auto& c : cones_) {
    gens.insert(gens.end(), c.rays().begin(), c.rays().end());
    lins.insert(lins.end(), c.lineality().basis().begin(), c.lineality().basis().end());
  }
  return Cone::hull(ambient_, gens, lins);
}

bool PolyComplex::is_supported_on(const Cone& s) const {
  if (s.ambient_dim() != ambient_) return false;
  for (const auto& c : cones_)
    if (!contains_cone(s, c)) return false;
  return covers(cones_, s);
}

std::size_t SemiComplex::max_dim() const {
  std::size_t d = 0;
  for (const auto& c : cones_) d = std::max(d, c.dim());
  return d;
}

bool covers(const std::vector<Cone>& cells, const Cone& s) {
  const std::size_t d = s.dim();
  if (d == 0)
    return std::any_of(cells.begin(), cells.end(), [&](const Cone& c) { return c == s; });
  // Pseudomanifold test: each codimension-one cell inside s must be shared by
  // two top cells, each one on the boundary of s by exactly one. The union of
  // the top cells is then all of s, since removing a codimension-two set from
  // the relative interior of s leaves it connected.
  std::map<Cone, int> count;
  bool any_top = false;
  for (const auto& c : cells) {
    if (c.dim() != d) continue;
    any_top = true;
    for (auto& f : c.facet_cones()) ++count[std::move(f)];
  }
  if (!any_top) return false;
  for (const auto& [f, k] : count) {
    const bool interior = s.relint_contains(f.relint_point());
    if (k != (interior ? 2 : 1)) return false;
  }
  return true;
}

bool union_covers(const std::vector<Cone>& members, const Cone& s) {
  const std::size_t d = s.dim();
  std::vector<const Cone*> top;
  for (const auto& m : members)
    if (m.dim() == d && contains_cone(s, m)) top.push_back(&m);
  if (top.empty()) return false;
  std::set<RatVec> normals;
  for (const Cone* m : top) normals.insert(m->facets().begin(), m->facets().end());
  std::vector<Cone> chambers{s};
  for (const auto& h : normals) {
    std::vector<Cone> next;
    for (auto& c : chambers) {
      Cone p = half(c, h, true);
      Cone q = half(c, h, false);
      if (p.dim() == c.dim() && q.dim() == c.dim()) {
        next.push_back(std::move(p));
        next.push_back(std::move(q));
      } else {
        next.push_back(std::move(c));
      }
    }
    chambers = std::move(next);
  }
  for (const auto& c : chambers) {
    RatVec p = c.relint_point();
    if (!std::any_of(top.begin(), top.end(), [&](const Cone* m) { return m->contains(p); })) return false;
  }
  return true;
}

SemiComplex SemiComplex::validate(std::size_t n, std::vector<Cone> cones) {
  check_ambient(n, cones, "validate_semicomplex");
  sort_unique(cones);
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j)
      if (relints_meet(cones[i], cones[j]))
        throw Error(ErrorKind::InteriorOverlap, "two members have overlapping relative interiors",
                    {{"a", to_json(cones[i])}, {"b", to_json(cones[j])}});
  std::set<Cone> checked;
  for (const auto& c : cones)
    for (const auto& f : c.faces()) {
      if (f == c || sorted_contains(cones, f) || !checked.insert(f).second) continue;
      if (!union_covers(cones, f))
        throw Error(ErrorKind::UnionFaceViolation, "a face of a member is not a union of members",
                    {{"cone", to_json(c)}, {"face", to_json(f)}});
    }
  SemiComplex out;
  out.ambient_ = n;
  out.cones_ = std::move(cones);
  return out;
}

PolyComplex validate_complex(std::size_t n, std::vector<Cone> cones) {
  return PolyComplex::validate(n, std::move(cones));
}

SemiComplex validate_semicomplex(std::size_t n, std::vector<Cone> cones) {
  return SemiComplex::validate(n, std::move(cones));
}

PolyComplex restrict(const PolyComplex& c, const Cone& s) {
  if (s.ambient_dim() != c.ambient_dim())
    throw Error(ErrorKind::AmbientMismatch, "restrict: ambient dimensions differ");
  std::vector<Cone> parts;
  for (const auto& t : c.maximal_cones()) parts.push_back(intersect(t, s));
  auto cells = face_closure(parts);
  if (!covers(cells, s))
    throw Error(ErrorKind::NotInSupport, "restrict: cone is not contained in the support of the complex",
                {{"cone", to_json(s)}});
  return PolyComplex::validate(c.ambient_dim(), std::move(cells));
}

PolyComplex common_refinement(const std::vector<PolyComplex>& cs) {
  if (cs.empty()) throw Error(ErrorKind::SupportMismatch, "common_refinement: no complexes given");
  const Cone support = cs.front().support_hull();
  for (const auto& c : cs)
    if (c.ambient_dim() != cs.front().ambient_dim() || c.support_hull() != support || !covers(c.cones(), support))
      throw Error(ErrorKind::SupportMismatch, "common_refinement: inputs have different supports",
                  {{"expected", to_json(support)}, {"found", to_json(c.support_hull())}});
  PolyComplex acc = cs.front();
  for (std::size_t k = 1; k < cs.size(); ++k) {
    std::vector<Cone> parts;
    auto left = acc.maximal_cones();
    auto right = cs[k].maximal_cones();
    for (const auto& a : left)
      for (const auto& b : right) parts.push_back(intersect(a, b));
    acc = PolyComplex::validate(acc.ambient_dim(), face_closure(parts));
  }
  return acc;
}

bool refines(const std::vector<Cone>& fine, const std::vector<Cone>& coarse) {
  for (const auto& f : fine)
    if (!std::any_of(coarse.begin(), coarse.end(), [&](const Cone& c) { return contains_cone(c, f); }))
      return false;
  for (const auto& c : coarse) {
    std::vector<Cone> inside;
    for (const auto& f : fine)
      if (contains_cone(c, f)) inside.push_back(f);
    if (!covers(inside, c)) return false;
  }
  return true;
}

SemiComplex semicomplex_from_subdivisions(const PolyComplex& base, const std::map<Cone, PolyComplex>& per_cone) {
  for (const auto& [t, sub] : per_cone) {
    if (!base.contains(t))
      throw Error(ErrorKind::NotInSupport, "subdivision given for a cone outside the base complex",
                  {{"cone", to_json(t)}});
    if (!sub.is_supported_on(t))
      throw Error(ErrorKind::SupportMismatch, "subdivision is not supported on its cone", {{"cone", to_json(t)}});
  }
  std::vector<Cone> out;
  for (const auto& s : base.cones()) {
    std::vector<PolyComplex> pieces;
    for (const auto& t : base.cones()) {
      if (!contains_cone(t, s)) continue;
      auto it = per_cone.find(t);
      if (it == per_cone.end())
        pieces.push_back(PolyComplex::of_cone(s));
      else
        pieces.push_back(restrict(it->second, s));
    }
    PolyComplex local = common_refinement(pieces);
    for (const auto& cell : local.cones())
      if (s.relint_contains(cell.relint_point())) out.push_back(cell);
  }
  return SemiComplex::validate(base.ambient_dim(), std::move(out));
}

PolyComplex stellar_subdivision(const PolyComplex& c, const RatVec& p) {
  std::vector<Cone> out;
  for (const auto& cell : c.cones()) {
    if (!cell.contains(p)) {
      out.push_back(cell);
      continue;
    }
    for (const auto& f : cell.faces()) {
      if (f.contains(p)) continue;
      std::vector<RatVec> gens = f.rays();
      gens.push_back(p);
      out.push_back(Cone::hull(c.ambient_dim(), gens, f.lineality().basis()));
    }
  }
  return PolyComplex::closure_of(c.ambient_dim(), out);
}

std::vector<Cone> skeleton(const std::vector<Cone>& cones, std::size_t r) {
  std::vector<Cone> out;
  for (const auto& c : cones)
    if (c.dim() <= r) out.push_back(c);
  return out;
}

Complexification canonical_complexification(const SemiComplex& c, const RayNormalizer& normalize) {
  const std::size_t n = c.ambient_dim();
  for (const auto& s : c.cones())
    if (!s.is_pointed())
      throw Error(ErrorKind::NotPointed, "complexification needs pointed cones", {{"cone", to_json(s)}});
  std::set<Cone> cur(c.cones().begin(), c.cones().end());
  Complexification out;
  const std::size_t top = c.max_dim();
  out.stages.assign(std::max<std::size_t>(top + 1, 2), {});
  out.stages[0] = out.stages[1] = c.cones();
  for (std::size_t r = 2; r <= top; ++r) {
    for (const auto& s : c.cones()) {
      if (s.dim() != r) continue;
      auto fs = s.faces();
      if (std::all_of(fs.begin(), fs.end(), [&](const Cone& f) { return f == s || cur.count(f); })) continue;
      std::vector<Cone> boundary;
      for (const auto& t : cur)
        if (t != s && contains_cone(s, t)) boundary.push_back(t);
      for (const auto& facet : s.facet_cones()) {
        std::vector<Cone> inside;
        for (const auto& t : boundary)
          if (contains_cone(facet, t)) inside.push_back(t);
        if (!covers(inside, facet))
          throw Error(ErrorKind::InvalidSemiComplex, "boundary cells do not tile a facet",
                      {{"cone", to_json(s)}, {"facet", to_json(facet)}});
      }
      RatVec g(n, Rat(0));
      for (const auto& ray : s.rays()) {
        RatVec v = normalize ? normalize(ray) : primitive(ray);
        for (std::size_t i = 0; i < n; ++i) g[i] += v[i];
      }
      for (auto& x : g) x /= static_cast<long>(s.rays().size());
      cur.erase(s);
      for (const auto& t : boundary) {
        std::vector<RatVec> gens = t.rays();
        gens.push_back(g);
        cur.insert(Cone::hull(n, gens));
      }
    }
    out.stages[r].assign(cur.begin(), cur.end());
  }
  try {
    out.result = PolyComplex::validate(n, {cur.begin(), cur.end()});
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidSemiComplex, std::string("complexification did not produce a complex: ") + e.what(),
                e.witness());
  }
  return out;
}

}  // namespace monofan

namespace monofan {

bool skeleton_stable(const Complexification& cx, std::size_t r) {
  const auto& stage = cx.stages[std::min(r, cx.stages.size() - 1)];
  auto kept = skeleton(stage, r);
  std::vector<Cone> seen;
  for (const auto& c : skeleton(cx.result.cones(), r))
    if (std::any_of(kept.begin(), kept.end(), [&](const Cone& k) { return contains_cone(k, c); })) seen.push_back(c);
  return seen == kept;
}

}  // namespace monofan

namespace monofan {

namespace {

// Splits every maximal cell by h where h cuts its relative interior.
std::vector<Cone> split_cells(const std::vector<Cone>& cells, const RatVec& h) {
  std::vector<Cone> out;
  for (const auto& c : cells) {
    Cone p = half(c, h, true);
    Cone q = half(c, h, false);
    if (p.dim() == c.dim() && q.dim() == c.dim()) {
      out.push_back(std::move(p));
      out.push_back(std::move(q));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool is_union_of_cells(const std::vector<Cone>& cells, const Cone& t) {
  std::vector<Cone> inside;
  for (const auto& c : cells)
    if (contains_cone(t, c)) inside.push_back(c);
  return covers(inside, t);
}

}  // namespace

PolyComplex arrangement_subdivision(const Cone& s, const std::vector<RatVec>& hyperplanes) {
  std::vector<Cone> cells{s};
  for (const auto& h : hyperplanes) cells = split_cells(cells, h);
  return PolyComplex::closure_of(s.ambient_dim(), cells);
}

PolyComplex refine_to_targets(const PolyComplex& c, const std::vector<Cone>& targets) {
  std::vector<Cone> top = c.maximal_cones();
  std::vector<Cone> cells = c.cones();
  for (const auto& t : targets) {
    if (is_union_of_cells(cells, t)) continue;
    std::vector<RatVec> cuts = t.equations().basis();
    cuts.insert(cuts.end(), t.facets().begin(), t.facets().end());
    for (const auto& h : cuts) top = split_cells(top, h);
    cells = face_closure(top);
  }
  return PolyComplex::validate(c.ambient_dim(), std::move(cells));
}

}  // namespace monofan
