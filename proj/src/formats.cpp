#include "monofan/formats.hpp"

#include <algorithm>

#include "monofan/error.hpp"

namespace monofan {

namespace {

[[noreturn]] void parse_fail(const std::string& what, const Json& j) {
  throw Error(ErrorKind::ParseError, what, {{"at", j}});
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'", j);
  return j.at(key);
}

Stratum parse_stratum(const StratSystem& s, const Json& j) {
  if (!j.is_string()) parse_fail("expected a stratum key", j);
  try {
    return s.parse_key(j.get<std::string>());
  } catch (const Error& e) {
    parse_fail(e.what(), j);
  }
}

}  // namespace

Json to_json(const StratSystem& s) {
  Json out;
  out["divisors"] = s.divisors();
  Json strata = Json::array();
  for (Stratum x : s.nonempty())
    if (x != 0) strata.push_back(s.key(x));
  out["strata"] = strata;
  if (s.mode() == StratSystem::Mode::Matrices) {
    Json ms = Json::array();
    for (const auto& m : s.matrices()) ms.push_back(to_json(m));
    out["matrices"] = ms;
  } else {
    Json ks = Json::object();
    for (Stratum x : s.nonempty()) {
      const Subspace& k = s.kernel_of(x);
      if (k.dim() == 0) continue;
      Json basis = Json::array();
      for (const auto& b : k.basis()) basis.push_back(to_json(b));
      ks[s.key(x)] = basis;
    }
    out["kernels"] = ks;
  }
  return out;
}

StratSystem system_from_json(const Json& j) {
  const Json& names = field(j, "divisors");
  if (!names.is_array()) parse_fail("expected a list of divisor names", names);
  std::vector<std::string> divisors;
  for (const auto& n : names) {
    if (!n.is_string()) parse_fail("divisor names must be strings", n);
    divisors.push_back(n.get<std::string>());
    if (divisors.back().empty() || divisors.back().find(',') != std::string::npos)
      parse_fail("divisor names must be nonempty and free of commas", n);
  }
  if (divisors.size() > 64) parse_fail("at most 64 divisors are supported", names);
  std::vector<std::string> sorted = divisors;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) parse_fail("duplicate divisor name", names);
  // Key parsing only needs the names.
  StratSystem names_only = StratSystem::with_kernels(divisors, {}, {});
  const Json& st = field(j, "strata");
  if (!st.is_array()) parse_fail("expected a list of strata", st);
  std::vector<Stratum> family;
  for (const auto& k : st) family.push_back(parse_stratum(names_only, k));
  if (j.contains("matrices")) {
    const Json& ms = j.at("matrices");
    if (!ms.is_array() || ms.size() != divisors.size()) parse_fail("expected one matrix per divisor", ms);
    std::vector<RatMatrix> mats;
    for (const auto& m : ms) mats.push_back(matrix_from_json(m));
    for (const auto& m : mats)
      if (m.rows() != mats.front().rows() || m.cols() != mats.front().cols() || m.rows() != m.cols())
        parse_fail("matrices must be square of one common size", ms);
    return StratSystem::with_matrices(divisors, family, mats);
  }
  std::map<Stratum, Subspace> kernels;
  if (j.contains("kernels")) {
    const Json& ks = j.at("kernels");
    if (!ks.is_object()) parse_fail("expected a map from strata to kernel bases", ks);
    for (const auto& [k, basis] : ks.items()) {
      Stratum x = parse_stratum(names_only, Json(k));
      if (!basis.is_array()) parse_fail("expected a list of basis vectors", basis);
      std::vector<RatVec> vs;
      for (const auto& v : basis) {
        vs.push_back(vec_from_json(v));
        if (vs.back().size() != stratum_size(x)) parse_fail("kernel vector length does not match the stratum", v);
      }
      kernels[x] = Subspace::span(stratum_size(x), vs);
    }
  }
  return StratSystem::with_kernels(divisors, family, kernels);
}

Json to_json(const CmcAtlas& atlas, const Cmcx& c) {
  const StratSystem& s = atlas.system();
  Json strata = Json::object();
  for (const auto& [i, cx] : c.complexes) strata[s.key(i)] = {{"proj", to_json(atlas.at(i).proj)}, {"complex", to_json(cx)}};
  return {{"system", to_json(s)}, {"strata", strata}};
}

Cmcx cmcx_from_json(const CmcAtlas& atlas, const Json& j) {
  const StratSystem& s = atlas.system();
  const Json& st = field(j, "strata");
  if (!st.is_object()) parse_fail("expected a map of strata", st);
  Cmcx out;
  for (const auto& [k, entry] : st.items()) {
    Stratum i = parse_stratum(s, Json(k));
    if (!s.is_nonempty(i)) parse_fail("CMCX names a stratum outside the family", Json(k));
    if (entry.contains("proj")) {
      RatMatrix p = matrix_from_json(entry.at("proj"));
      const RatMatrix& want = atlas.at(i).proj;
      bool same = p == want || (want.rows() == 0 && entry.at("proj").empty());
      if (!same) parse_fail("stored projection differs from the system's", entry.at("proj"));
    }
    out.complexes[i] = complex_from_json(field(entry, "complex"));
  }
  return out;
}

Json to_json(const CmcAtlas& atlas, const RefinedFan& rf) {
  const StratSystem& s = atlas.system();
  Json cells = Json::object();
  for (const auto& [i, cx] : rf.cells) cells[s.key(i)] = to_json(cx);
  Json rays = Json::array();
  for (const auto& r : rf.rays) rays.push_back({{"name", r.name}, {"support", s.key(r.support)}, {"generator", to_json(r.generator)}});
  Json strata = Json::array();
  auto ray_names = [&](Stratum key) {
    Json names = Json::array();
    for (std::size_t k = 0; k < rf.rays.size(); ++k)
      if (key >> k & 1) names.push_back(rf.rays[k].name);
    return names;
  };
  for (const auto& [key, cell] : rf.strata)
    strata.push_back({{"rays", ray_names(key)}, {"base", s.key(cell.base)}, {"cone", to_json(cell.cone)}});
  Json non_simplicial = Json::array(), non_unimodular = Json::array();
  for (Stratum k : rf.non_simplicial) non_simplicial.push_back(ray_names(k));
  for (Stratum k : rf.non_unimodular) non_unimodular.push_back(ray_names(k));
  return {{"system", to_json(s)},
          {"cells", cells},
          {"rays", rays},
          {"strata", strata},
          {"induced", rf.induced ? to_json(*rf.induced) : Json(nullptr)},
          {"non_simplicial", non_simplicial},
          {"non_unimodular", non_unimodular}};
}

RefinedFan fan_from_json(const CmcAtlas& atlas, const Json& j) {
  const StratSystem& s = atlas.system();
  const Json& cs = field(j, "cells");
  if (!cs.is_object()) parse_fail("expected a map of cells", cs);
  std::map<Stratum, PolyComplex> cells;
  for (const auto& [k, cx] : cs.items()) cells[parse_stratum(s, Json(k))] = complex_from_json(cx);
  return fan_from_cells(atlas, std::move(cells));
}

Json to_json(const ValidationReport& r) {
  Json out{{"ok", r.ok}};
  if (!r.ok) {
    out["kind"] = r.kind;
    out["witness"] = r.witness;
  }
  return out;
}

Json to_json(const HyperIntersection& h, const StratSystem& s) {
  Json sc = Json::array();
  for (const auto& x : h.scissors) sc.push_back(Json::array({s.key(x.left), s.key(x.apex), s.key(x.right)}));
  Json set = Json::array();
  for (const auto& x : h.scissors_set) set.push_back(Json::array({s.key(x.left), s.key(x.apex), s.key(x.right)}));
  return {{"from", s.key(h.from)},
          {"to", s.key(h.to)},
          {"scissors", sc},
          {"scissors_set", set},
          {"value_in_from", to_json(h.value_in_from)},
          {"value_in_to", to_json(h.value_in_to)},
          {"chart", to_json(h.chart)}};
}

}  // namespace monofan
