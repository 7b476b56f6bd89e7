#include "monofan/fan.hpp"

#include <algorithm>
#include <set>

#include "monofan/error.hpp"
#include "monofan/json_io.hpp"

namespace monofan {

namespace {

Rat determinant(std::vector<RatVec> m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// gcd of the maximal minors of the matrix whose columns are `gens`.
Int lattice_index(const std::vector<RatVec>& gens, std::size_t n) {
  const std::size_t k = gens.size();
  Int g = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<RatVec> sq;
    for (std::size_t r = 0; r < n; ++r) {
      if (!pick[r]) continue;
      RatVec row;
      for (const auto& v : gens) row.push_back(v[r]);
      sq.push_back(std::move(row));
    }
    Int d = abs(determinant(sq).get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

Stratum support_of(const RatVec& v, Stratum in) {
  auto members = stratum_members(in);
  Stratum s = 0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) s |= Stratum{1} << members[k];
  return s;
}

PolyComplex pullback(const CmcAtlas& atlas, const Cmcx& t, Stratum i) {
  const RatMatrix& m = monodromy_map(atlas, i);
  const std::size_t n = m.cols();
  auto it = t.complexes.find(i);
  if (it == t.complexes.end())
    throw Error(ErrorKind::CheckFailed, "CMCX has no complex for a stratum", {{"stratum", atlas.system().key(i)}});
  std::vector<RatVec> orthant;
  for (std::size_t k = 0; k < n; ++k) orthant.push_back(unit_vector(n, k));
  std::vector<Cone> pieces;
  for (const auto& tau : it->second.maximal_cones()) {
    std::vector<RatVec> ineq = orthant;
    for (const auto& f : tau.facets()) ineq.push_back(m.transpose() * f);
    std::vector<RatVec> eqs;
    for (const auto& e : tau.equations().basis()) eqs.push_back(m.transpose() * e);
    pieces.push_back(Cone::from_constraints(n, ineq, eqs));
  }
  return PolyComplex::validate(n, face_closure(pieces));
}

RatVec barycenter(const Cone& c) {
  RatVec g(c.ambient_dim(), Rat(0));
  for (const auto& r : c.rays())
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += r[k];
  return g;
}

PolyComplex simplicialize(PolyComplex c, std::size_t max_cells) {
  for (std::size_t d = 2; d <= c.max_dim(); ++d) {
    while (true) {
      auto cells = c.cells_of_dim(d);
      auto bad = std::find_if(cells.begin(), cells.end(), [](const Cone& x) { return !x.is_simplicial(); });
      if (bad == cells.end()) break;
      c = stellar_subdivision(c, barycenter(*bad));
      if (c.size() > max_cells)
        throw Error(ErrorKind::ResourceCap, "simplicialization exceeded the cell cap", {{"cells", c.size()}});
    }
  }
  return c;
}

void check_overlaps(const StratSystem& s, const RefinedFan& rf) {
  for (auto [sub, sup] : adjacency(s)) {
    RatMatrix inc = coordinate_inclusion(sub, sup);
    RatMatrix back = inc.transpose();
    Cone face = image_cone(Cone::orthant(inc.cols()), inc);
    std::vector<Cone> seen;
    for (const auto& c : rf.cells.at(sup).cones())
      if (contains_cone(face, c)) seen.push_back(image_cone(c, back));
    std::sort(seen.begin(), seen.end());
    if (seen != rf.cells.at(sub).cones())
      throw Error(ErrorKind::OverlapInconsistency, "refined fans disagree on a shared face",
                  {{"sub", s.key(sub)}, {"sup", s.key(sup)}, {"restricted", to_json(seen)},
                   {"own", to_json(rf.cells.at(sub).cones())}});
  }
}

// Registers rays and cells, then derives the induced system.
void index_fan(const CmcAtlas& atlas, RefinedFan& rf) {
  const StratSystem& s = atlas.system();
  std::map<std::pair<Stratum, RatVec>, std::size_t> ids;
  std::map<Stratum, std::size_t> per_support;
  for (std::size_t k = 0; k < s.divisors().size(); ++k) {
    rf.rays.push_back({s.divisors()[k], Stratum{1} << k, {Rat(1)}});
    ids[{Stratum{1} << k, {Rat(1)}}] = k;
  }
  auto ray_id = [&](const RatVec& v, Stratum in) {
    Stratum sup = support_of(v, in);
    RatVec local = primitive(coordinate_inclusion(sup, in).transpose() * v);
    auto [it, fresh] = ids.try_emplace({sup, local}, rf.rays.size());
    if (fresh) {
      if (rf.rays.size() >= 64)
        throw Error(ErrorKind::ResourceCap, "refined fan has more than 64 rays", {{"rays", rf.rays.size() + 1}});
      // Stratum keys separate divisors by commas, so ray names must not.
      std::string base = s.key(sup);
      std::replace(base.begin(), base.end(), ',', '+');
      rf.rays.push_back({base + "#" + std::to_string(++per_support[sup]), sup, local});
    }
    return it->second;
  };
  for (Stratum i : s.nonempty()) {
    for (const auto& c : rf.cells.at(i).cones()) {
      Stratum key = 0;
      std::vector<std::size_t> rays;
      for (const auto& r : c.rays()) rays.push_back(ray_id(r, i));
      std::sort(rays.begin(), rays.end());
      for (auto r : rays) key |= Stratum{1} << r;
      if (rf.strata.count(key)) continue;
      Stratum base = 0;
      for (auto r : rays) base |= rf.rays[r].support;
      Cone local = image_cone(c, coordinate_inclusion(base, i).transpose());
      rf.strata[key] = {base, rays, local};
      if (!c.is_simplicial()) {
        rf.non_simplicial.push_back(key);
      } else {
        std::vector<RatVec> gens(c.rays());
        if (!gens.empty() && lattice_index(gens, c.ambient_dim()) != 1) rf.non_unimodular.push_back(key);
      }
    }
  }
  if (!rf.non_simplicial.empty()) return;
  std::vector<std::string> names;
  for (const auto& r : rf.rays) names.push_back(r.name);
  std::vector<Stratum> family;
  std::map<Stratum, Subspace> kernels;
  for (const auto& [key, cell] : rf.strata) {
    family.push_back(key);
    std::vector<RatVec> cols;
    for (auto r : cell.rays) cols.push_back(coordinate_inclusion(rf.rays[r].support, cell.base) * rf.rays[r].generator);
    RatMatrix gens = RatMatrix::from_columns(stratum_size(cell.base), cols);
    kernels[key] = kernel(atlas.at(cell.base).proj * gens);
  }
  rf.induced = StratSystem::with_kernels(std::move(names), std::move(family), std::move(kernels));
}

const FanCell& cell_of(const RefinedFan& rf, Stratum j) {
  auto it = rf.strata.find(j);
  if (it == rf.strata.end()) throw Error(ErrorKind::UnknownStratum, "not a stratum of the modification");
  return it->second;
}

}  // namespace

const RatMatrix& monodromy_map(const CmcAtlas& atlas, Stratum i) { return atlas.at(i).proj; }

RefinedFan refine_fan(const CmcAtlas& atlas, const Cmcx& t, const FanOptions& opt, const ResourceCaps& caps) {
  const StratSystem& s = atlas.system();
  RefinedFan rf;
  for (Stratum i : s.nonempty()) {
    PolyComplex c = pullback(atlas, t, i);
    if (opt.simplicialize) c = simplicialize(std::move(c), caps.max_cells);
    if (c.size() > caps.max_cells)
      throw Error(ErrorKind::ResourceCap, "refined fan exceeded the cell cap", {{"stratum", s.key(i)}, {"cells", c.size()}});
    rf.cells[i] = std::move(c);
  }
  check_overlaps(s, rf);
  index_fan(atlas, rf);
  return rf;
}

RefinedFan fan_from_cells(const CmcAtlas& atlas, std::map<Stratum, PolyComplex> cells) {
  const StratSystem& s = atlas.system();
  for (Stratum i : s.nonempty()) {
    auto it = cells.find(i);
    if (it == cells.end())
      throw Error(ErrorKind::CheckFailed, "fan has no complex for a stratum", {{"stratum", s.key(i)}});
    if (!it->second.is_supported_on(Cone::orthant(stratum_size(i))))
      throw Error(ErrorKind::SupportMismatch, "fan complex is not supported on the orthant", {{"stratum", s.key(i)}});
  }
  RefinedFan rf;
  rf.cells = std::move(cells);
  check_overlaps(s, rf);
  index_fan(atlas, rf);
  return rf;
}

RefinedFan identity_fan(const CmcAtlas& atlas) {
  std::map<Stratum, PolyComplex> cells;
  for (Stratum i : atlas.system().nonempty()) cells[i] = PolyComplex::of_cone(Cone::orthant(stratum_size(i)));
  return fan_from_cells(atlas, std::move(cells));
}

namespace {

std::vector<Cone> tau_candidates(const CmcAtlas& atlas, const Cmcx& t, Stratum i, const Cone& cell) {
  Cone m = image_cone(cell, monodromy_map(atlas, i));
  RatVec p = m.relint_point();
  std::vector<Cone> out;
  for (const auto& tau : t.complexes.at(i).cones())
    if (tau.relint_contains(p) && contains_cone(tau, m)) out.push_back(tau);
  return out;
}

}  // namespace

Cone assigned_tau(const CmcAtlas& atlas, const Cmcx& t, Stratum i, const Cone& cell) {
  auto found = tau_candidates(atlas, t, i, cell);
  if (found.size() != 1)
    throw Error(ErrorKind::CheckFailed, "cell does not map into a unique cone",
                {{"stratum", atlas.system().key(i)}, {"cell", to_json(cell)}, {"matches", found.size()}});
  return found.front();
}

CompatibilityReport check_compatibility(const CmcAtlas& atlas, const RefinedFan& rf, const Cmcx& t) {
  const StratSystem& s = atlas.system();
  CompatibilityReport rep;
  for (Stratum i : s.nonempty()) {
    auto it = rf.cells.find(i);
    if (it == rf.cells.end() || t.complexes.find(i) == t.complexes.end()) {
      rep.ok = false;
      rep.witness = {{"stratum", s.key(i)}, {"reason", "missing complex"}};
      return rep;
    }
    for (const auto& c : it->second.cones()) {
      ++rep.cells_checked;
      auto found = tau_candidates(atlas, t, i, c);
      if (found.size() != 1) {
        rep.ok = false;
        rep.witness = {{"stratum", s.key(i)},
                       {"cell", to_json(c)},
                       {"image", to_json(image_cone(c, monodromy_map(atlas, i)))},
                       {"matches", to_json(found)}};
        return rep;
      }
    }
  }
  return rep;
}

RatMatrix descendant_map(const CmcAtlas& atlas, const RefinedFan& rf, Stratum j, Stratum i) {
  if (!rf.induced) throw Error(ErrorKind::CheckFailed, "the modification has no induced system");
  const FanCell& cell = cell_of(rf, j);
  if (!atlas.system().is_nonempty(i) || !is_subset(cell.base, i))
    throw Error(ErrorKind::NotOverStratum, "stratum of the modification does not lie over the given stratum",
                {{"stratum", rf.induced->key(j)}, {"base", atlas.system().key(i)}});
  std::vector<RatVec> cols;
  for (auto r : cell.rays) cols.push_back(coordinate_inclusion(rf.rays[r].support, i) * rf.rays[r].generator);
  RatMatrix gens = RatMatrix::from_columns(stratum_size(i), cols);
  RatMatrix proj_j = build_cmc(*rf.induced, j).proj;
  return monodromy_map(atlas, i) * gens * right_inverse(proj_j);
}

TauData refined_tau_data(const CmcAtlas& atlas, const RefinedFan& rf, const Cmcx& t) {
  if (!rf.induced) throw Error(ErrorKind::CheckFailed, "the modification has no induced system");
  TauData td{&atlas, &*rf.induced, {}};
  for (const auto& [key, cell] : rf.strata) {
    Cone sigma = image_cone(cell.cone, monodromy_map(atlas, cell.base));
    td.entries[key] = {cell.base, sigma, assigned_tau(atlas, t, cell.base, cell.cone)};
  }
  return td;
}

}  // namespace monofan
