#include "monofan/cmcx.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "monofan/error.hpp"
#include "monofan/hyper.hpp"
#include "monofan/json_io.hpp"
#include "monofan/parallel.hpp"

namespace monofan {

namespace {

std::vector<Cone> images(const std::vector<Cone>& cones, const RatMatrix& m) {
  std::vector<Cone> out;
  out.reserve(cones.size());
  for (const auto& c : cones) out.push_back(image_cone(c, m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const PolyComplex& complex_at(const StratSystem& s, const Cmcx& c, Stratum i) {
  auto it = c.complexes.find(i);
  if (it == c.complexes.end())
    throw Error(ErrorKind::UnknownStratum, "CMCX has no complex for a stratum", {{"stratum", s.key(i)}});
  return it->second;
}

// Linear maps E_I from quotient coordinates of I into one space shared by all
// strata, compatible with every adjacent map. Empty when none is available.
std::map<Stratum, RatMatrix> reference_embeddings(const CmcAtlas& atlas) {
  const StratSystem& s = atlas.system();
  const std::size_t n = s.divisors().size();
  std::map<Stratum, RatMatrix> out;
  if (s.mode() == StratSystem::Mode::Matrices) {
    const auto& ms = s.matrices();
    const std::size_t d = ms.empty() ? 0 : ms.front().rows();
    for (Stratum i : s.nonempty()) {
      std::vector<RatVec> cols;
      for (std::size_t k : stratum_members(i)) {
        RatVec v;
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) v.push_back(ms[k].at(r, c));
        cols.push_back(std::move(v));
      }
      RatMatrix m = RatMatrix::from_columns(d * d, cols);
      out[i] = m * right_inverse(atlas.at(i).proj);
    }
    return out;
  }
  const Stratum all = n == 64 ? ~Stratum{0} : (Stratum{1} << n) - 1;
  std::vector<RatVec> w;
  for (Stratum i : s.nonempty()) {
    RatMatrix inc = coordinate_inclusion(i, all);
    for (const auto& b : s.kernel_of(i).basis()) w.push_back(inc * b);
  }
  Subspace ws = Subspace::span(n, std::move(w));
  RatMatrix q = quotient_map(n, ws);
  for (Stratum i : s.nonempty()) {
    RatMatrix inc = coordinate_inclusion(i, all);
    if (preimage(inc, ws) != s.kernel_of(i)) return {};
    out[i] = q * inc * right_inverse(atlas.at(i).proj);
  }
  return out;
}

RayNormalizer normalizer_for(const RatMatrix* e) {
  if (e == nullptr) return {};
  return [e](const RatVec& r) {
    RatVec img = (*e) * r;
    RatVec p = primitive(img);
    for (std::size_t k = 0; k < img.size(); ++k)
      if (sgn(img[k]) != 0) {
        Rat t = p[k] / img[k];
        RatVec out = r;
        for (auto& x : out) x *= t;
        return out;
      }
    return primitive(r);
  };
}

}  // namespace

CmcxReport check_cmcx(const CmcAtlas& atlas, const Cmcx& c) {
  const StratSystem& s = atlas.system();
  for (Stratum i : s.nonempty()) {
    auto it = c.complexes.find(i);
    if (it == c.complexes.end()) return {false, "UnknownStratum", {{"stratum", s.key(i)}}};
    if (!it->second.is_supported_on(atlas.at(i).cone))
      return {false, "SupportMismatch",
              {{"stratum", s.key(i)}, {"cmc", to_json(atlas.at(i).cone)}, {"support", to_json(it->second.support_hull())}}};
  }
  for (auto [sub, sup] : adjacency(s)) {
    const PolyComplex& big = c.complexes.at(sup);
    const RatMatrix& xi = atlas.xi(sub, sup);
    for (const auto& cone : c.complexes.at(sub).cones()) {
      Cone img = image_cone(cone, xi);
      if (!big.contains(img))
        return {false, "EmbeddingFailure",
                {{"sub", s.key(sub)}, {"sup", s.key(sup)}, {"cone", to_json(cone)}, {"image", to_json(img)}}};
    }
  }
  return {};
}

SimplicialReport is_simplicial(const CmcAtlas& atlas) {
  const StratSystem& s = atlas.system();
  for (Stratum i : s.nonempty()) {
    const Cmc& c = atlas.at(i);
    if (!c.cone.is_simplicial()) return {false, i, "CMC is not simplicial"};
    for (std::size_t k = 0; k < c.proj.cols(); ++k) {
      Cone ray = Cone::hull(c.proj.rows(), {c.proj.column(k)});
      if (!is_face_of(ray, c.cone)) return {false, i, "divisor ray image is not a face"};
    }
  }
  return {};
}

Cmcx canonical_t0(const CmcAtlas& atlas) {
  auto rep = is_simplicial(atlas);
  if (!rep.simplicial)
    throw Error(ErrorKind::NotSimplicial, "system is not simplicial",
                {{"stratum", atlas.system().key(rep.witness)}, {"reason", rep.reason}});
  Cmcx out;
  for (Stratum i : atlas.system().nonempty()) out.complexes[i] = PolyComplex::of_cone(atlas.at(i).cone);
  return out;
}

TauData raw_tau_data(const CmcAtlas& atlas, const Cmcx& c) {
  TauData td{&atlas, &atlas.system(), {}};
  for (Stratum i : atlas.system().nonempty()) {
    const Cone& sigma = atlas.at(i).cone;
    auto it = c.complexes.find(i);
    if (it != c.complexes.end() && it->second.contains(sigma)) td.entries[i] = {i, sigma, sigma};
  }
  return td;
}

Commensurability commensurable(const TauData& td, Stratum j, Stratum k) {
  const StratSystem& s = *td.system;
  auto entry = [&](Stratum x) -> const TauEntry& {
    if (!s.is_nonempty(x)) throw Error(ErrorKind::UnknownStratum, "unknown stratum", {{"stratum", s.key(x)}});
    auto it = td.entries.find(x);
    if (it == td.entries.end()) throw Error(ErrorKind::MissingTau, "no tau cone for stratum", {{"stratum", s.key(x)}});
    return it->second;
  };
  const TauEntry& ej = entry(j);
  const TauEntry& ek = entry(k);
  const Stratum u = j | k;
  if (!s.is_nonempty(u)) return {};
  const TauEntry& eu = entry(u);
  const CmcAtlas& base = *td.base_atlas;
  auto lift = [&](const TauEntry& e, const Cone& c) {
    if (!is_subset(e.base, eu.base))
      throw Error(ErrorKind::CheckFailed, "base of a substratum is not contained in the base of the union",
                  {{"base", base.system().key(e.base)}, {"union_base", base.system().key(eu.base)}});
    return image_cone(c, base.xi(e.base, eu.base));
  };
  Cone sj = lift(ej, ej.sigma), tj = lift(ej, ej.tau);
  Cone sk = lift(ek, ek.sigma), tk = lift(ek, ek.tau);
  Commensurability out;
  out.span_criterion = tk.span().contains(sj.span()) && tj.span().contains(sk.span());
  out.tau_criterion = tj == tk && tk == eu.tau;
  return out;
}

NccResult ncc(const TauData& td, Stratum j) {
  const StratSystem& s = *td.system;
  if (!s.is_nonempty(j)) throw Error(ErrorKind::UnknownStratum, "unknown stratum", {{"stratum", s.key(j)}});
  std::vector<Stratum> candidates;
  for (Stratum k : s.nonempty())
    if (k != 0 || j == 0) candidates.push_back(k);
  std::set<Stratum> cur{j};
  NccResult out;
  out.seed = j;
  while (true) {
    std::set<Stratum> next;
    for (Stratum k : candidates)
      for (Stratum kp : cur)
        if (commensurable(td, k, kp).span_criterion) {
          next.insert(k);
          break;
        }
    next.insert(cur.begin(), cur.end());
    ++out.iterations;
    if (next == cur) break;
    cur = std::move(next);
  }
  out.members.assign(cur.begin(), cur.end());
  std::sort(out.members.begin(), out.members.end(), stratum_less);
  return out;
}

Json to_json(const CmcxTrace& t, const StratSystem& s) {
  auto table = [&](const std::map<Stratum, std::size_t>& m) {
    Json j = Json::object();
    for (auto [k, v] : m) j[s.key(k)] = v;
    return j;
  };
  return {{"states", table(t.states)},
          {"arrangement_cells", table(t.arrangement_cells)},
          {"semicomplex_cells", table(t.semicomplex_cells)},
          {"final_cells", table(t.final_cells)},
          {"global_reference", t.global_reference}};
}

CmcxBuild construct_cmcx(const CmcAtlas& atlas, const ResourceCaps& caps, Parallelism par) {
  const StratSystem& s = atlas.system();
  CmcxBuild out;
  CmcxTrace& trace = out.trace;
  for (Stratum i : s.nonempty())
    if (!atlas.at(i).cone.is_pointed())
      throw Error(ErrorKind::NotPointed, "construction needs pointed CMCs", {{"stratum", s.key(i)}});

  // Cap errors raised by workers get the trace of the finished phases.
  auto with_trace = [&](const std::function<void()>& phase) {
    try {
      phase();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceCap) throw;
      Json w = e.witness();
      w["trace"] = to_json(trace, s);
      throw Error(ErrorKind::ResourceCap, e.what(), w);
    }
  };
  auto cap_cells = [&](Stratum i, std::size_t cells, const char* phase) {
    if (cells > caps.max_cells)
      throw Error(ErrorKind::ResourceCap, "cell cap exceeded",
                  {{"stratum", s.key(i)}, {"phase", phase}, {"cells", cells}, {"cap", caps.max_cells}});
  };

  const std::vector<Stratum>& strata = s.nonempty();
  std::vector<HyperEnumeration> enums(strata.size());
  with_trace([&] {
    parallel_for(strata.size(), par.jobs,
                 [&](std::size_t k) { enums[k] = enumerate_hyperintersections(atlas, strata[k], caps.max_states); });
  });
  std::map<Stratum, const HyperEnumeration*> hyper;
  for (std::size_t k = 0; k < strata.size(); ++k) {
    hyper[strata[k]] = &enums[k];
    trace.states[strata[k]] = enums[k].states;
  }

  // Top strata first, so every larger stratum is refined before it is pulled
  // back into a smaller one. Strata of equal size do not depend on each other.
  std::map<std::size_t, std::vector<Stratum>, std::greater<>> by_size;
  for (Stratum i : strata) by_size[stratum_size(i)].push_back(i);
  std::map<Stratum, PolyComplex> level0;
  for (const auto& [size, layer] : by_size) {
    std::vector<PolyComplex> done(layer.size());
    with_trace([&] {
      parallel_for(layer.size(), par.jobs, [&](std::size_t k) {
        const Stratum i = layer[k];
        const Cone& sigma = atlas.at(i).cone;
        std::vector<Cone> targets = hyper.at(i)->values;
        for (const auto& [j, cj] : level0) {
          if (!is_subset(i, j)) continue;
          Cone pushed = image_cone(sigma, atlas.xi(i, j));
          const RatMatrix& back = atlas.xi_inverse(i, j);
          for (const auto& cell : cj.maximal_cones()) targets.push_back(image_cone(intersect(cell, pushed), back));
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        done[k] = refine_to_targets(PolyComplex::of_cone(sigma), targets);
        cap_cells(i, done[k].size(), "arrangement");
      });
    });
    for (std::size_t k = 0; k < layer.size(); ++k) {
      trace.arrangement_cells[layer[k]] = done[k].size();
      level0[layer[k]] = std::move(done[k]);
    }
  }

  auto embeddings = reference_embeddings(atlas);
  trace.global_reference = !embeddings.empty();

  std::vector<std::size_t> semi_cells(strata.size());
  std::vector<PolyComplex> finals(strata.size());
  with_trace([&] {
    parallel_for(strata.size(), par.jobs, [&](std::size_t idx) {
      const Stratum i = strata[idx];
      const PolyComplex& base = level0.at(i);
      // Every identification of a piece of sigma_I with a piece of another
      // CMC, seen in the coordinates of I.
      std::vector<std::pair<Cone, PolyComplex>> transported;
      std::set<std::pair<Cone, std::vector<Cone>>> seen;
      for (const auto& r : hyper.at(i)->records) {
        PolyComplex local = restrict(level0.at(r.end), r.value_in_end);
        std::vector<Cone> cells = images(local.cones(), r.chart);
        if (!seen.insert({r.value_in_start, cells}).second) continue;
        transported.emplace_back(r.value_in_start, PolyComplex::validate(base.ambient_dim(), std::move(cells)));
      }
      std::map<Cone, PolyComplex> per_cone;
      for (const auto& tau : base.cones()) {
        std::vector<PolyComplex> pieces{PolyComplex::of_cone(tau)};
        for (const auto& [value, cx] : transported)
          if (contains_cone(value, tau)) pieces.push_back(restrict(cx, tau));
        PolyComplex refined = common_refinement(pieces);
        if (refined.size() > tau.faces().size()) per_cone[tau] = std::move(refined);
      }
      SemiComplex semi = semicomplex_from_subdivisions(base, per_cone);
      semi_cells[idx] = semi.cones().size();
      cap_cells(i, semi_cells[idx], "semicomplex");
      auto it = embeddings.find(i);
      Complexification cx =
          canonical_complexification(semi, normalizer_for(it == embeddings.end() ? nullptr : &it->second));
      cap_cells(i, cx.result.size(), "complexification");
      finals[idx] = std::move(cx.result);
    });
  });
  for (std::size_t idx = 0; idx < strata.size(); ++idx) {
    trace.semicomplex_cells[strata[idx]] = semi_cells[idx];
    trace.final_cells[strata[idx]] = finals[idx].size();
    out.cmcx.complexes[strata[idx]] = std::move(finals[idx]);
  }
  return out;
}

CmcxReport check_hyperintersection_coherence(const CmcAtlas& atlas, const Cmcx& c, const ResourceCaps& caps,
                                             Parallelism par) {
  const StratSystem& s = atlas.system();
  for (Stratum i : s.nonempty()) complex_at(s, c, i);
  const std::vector<Stratum>& strata = s.nonempty();
  std::vector<CmcxReport> reports(strata.size());
  parallel_for(strata.size(), par.jobs, [&](std::size_t idx) {
    const Stratum i = strata[idx];
    const PolyComplex& mine = c.complexes.at(i);
    auto e = enumerate_hyperintersections(atlas, i, caps.max_states);
    for (const auto& r : e.records) {
      PolyComplex here = restrict(mine, r.value_in_start);
      std::vector<Cone> there = images(restrict(c.complexes.at(r.end), r.value_in_end).cones(), r.chart);
      bool sub = std::all_of(here.cones().begin(), here.cones().end(), [&](const Cone& x) { return mine.contains(x); });
      if (!sub || here.cones() != there) {
        reports[idx] = {false, "HyperintersectionMismatch",
                        {{"from", s.key(i)},
                         {"to", s.key(r.end)},
                         {"value", to_json(r.value_in_start)},
                         {"restricted", to_json(here.cones())},
                         {"transported", to_json(there)},
                         {"subcomplex", sub}}};
        return;
      }
    }
  });
  for (auto& r : reports)
    if (!r.ok) return r;
  return {};
}

}  // namespace monofan
