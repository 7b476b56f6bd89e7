#include "monofan/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "monofan/error.hpp"
#include "monofan/fixtures.hpp"
#include "monofan/formats.hpp"
#include "monofan/hyper.hpp"
#include "monofan/sampling.hpp"

namespace monofan::cli {

namespace {

// A finished command: the report plus its exit status.
struct Outcome {
  Json report;
  int code = kOk;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open input file", {{"path", path}});
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "input is not valid JSON", {{"path", path}, {"detail", e.what()}});
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot open output file", {{"path", path}});
  out << j.dump(2) << "\n";
  if (!out) throw Error(ErrorKind::ParseError, "failed writing output file", {{"path", path}});
}

// Stores `data` in the output file when one was given, inline otherwise.
void emit(const RunConfig& cfg, Json& report, const char* key, const Json& data) {
  if (cfg.output) {
    write_json(*cfg.output, data);
    report["output"] = *cfg.output;
  } else {
    report[key] = data;
  }
}

Outcome invalid_system(const ValidationReport& v) {
  return {{{"status", "fail"}, {"validation", to_json(v)}}, kFailed};
}

StratSystem load_system(const std::string& path) { return system_from_json(load_json(path)); }

// A CMCX file carries its system; when a separate system file is given too
// they must agree.
void require_same_system(const StratSystem& a, const StratSystem& b) {
  if (to_json(a) != to_json(b))
    throw Error(ErrorKind::ParseError, "files describe different systems", {{"first", to_json(a)}, {"second", to_json(b)}});
}

Json keys(const StratSystem& s, const std::vector<Stratum>& xs) {
  Json out = Json::array();
  for (Stratum x : xs) out.push_back(s.key(x));
  return out;
}

Outcome cmd_validate(const RunConfig& cfg) {
  StratSystem s = load_system(cfg.inputs.at(0));
  auto v = validate(s);
  Json rep{{"status", v.ok ? "pass" : "fail"},
           {"divisors", s.divisors().size()},
           {"strata", s.nonempty().size()},
           {"mode", s.mode() == StratSystem::Mode::Matrices ? "matrices" : "kernels"},
           {"validation", to_json(v)}};
  return {rep, v.ok ? kOk : kFailed};
}

Outcome cmd_cmc(const RunConfig& cfg, const std::string& stratum) {
  StratSystem s = load_system(cfg.inputs.at(0));
  auto v = validate(s);
  if (!v.ok) return invalid_system(v);
  CmcAtlas atlas(s);
  std::vector<Stratum> which = s.nonempty();
  if (!stratum.empty()) {
    Stratum x = s.parse_key(stratum);
    if (!s.is_nonempty(x)) throw Error(ErrorKind::UnknownStratum, "unknown stratum", {{"stratum", stratum}});
    which = {x};
  }
  Json list = Json::array();
  for (Stratum x : which) {
    const Cmc& c = atlas.at(x);
    list.push_back({{"stratum", s.key(x)}, {"dim", c.cone.dim()}, {"proj", to_json(c.proj)}, {"cone", to_json(c.cone)}});
  }
  return {{{"status", "pass"}, {"cmcs", list}}, kOk};
}

Outcome cmd_cmcx_build(const RunConfig& cfg, bool t0) {
  StratSystem s = load_system(cfg.inputs.at(0));
  auto v = validate(s);
  if (!v.ok) return invalid_system(v);
  CmcAtlas atlas(s);
  Json rep{{"status", "pass"}};
  Cmcx c;
  if (t0) {
    c = canonical_t0(atlas);
    rep["method"] = "t0";
  } else {
    auto built = construct_cmcx(atlas, cfg.caps, {cfg.jobs});
    c = std::move(built.cmcx);
    rep["method"] = "construct";
    rep["trace"] = to_json(built.trace, s);
  }
  auto check = check_cmcx(atlas, c);
  rep["check"] = {{"ok", check.ok}, {"kind", check.kind}, {"witness", check.witness}};
  emit(cfg, rep, "cmcx", to_json(atlas, c));
  if (!check.ok) {
    rep["status"] = "fail";
    return {rep, kFailed};
  }
  return {rep, kOk};
}

Outcome cmd_cmcx_check(const RunConfig& cfg, bool strong) {
  Json j = load_json(cfg.inputs.at(0));
  if (!j.contains("system")) throw Error(ErrorKind::ParseError, "CMCX file has no system", {{"path", cfg.inputs.at(0)}});
  StratSystem s = system_from_json(j.at("system"));
  auto v = validate(s);
  if (!v.ok) return invalid_system(v);
  CmcAtlas atlas(s);
  Cmcx c = cmcx_from_json(atlas, j);
  auto rep = check_cmcx(atlas, c);
  Json out{{"status", rep.ok ? "pass" : "fail"}, {"kind", rep.kind}, {"witness", rep.witness}};
  if (rep.ok && strong) {
    auto coh = check_hyperintersection_coherence(atlas, c, cfg.caps, {cfg.jobs});
    out["coherence"] = {{"ok", coh.ok}, {"kind", coh.kind}, {"witness", coh.witness}};
    if (!coh.ok) {
      out["status"] = "fail";
      return {out, kFailed};
    }
  }
  return {out, rep.ok ? kOk : kFailed};
}

Outcome cmd_ncc(const RunConfig& cfg, const std::string& cmcx_path, const std::string& fan_path,
                const std::string& stratum) {
  StratSystem s = load_system(cfg.inputs.at(0));
  auto v = validate(s);
  if (!v.ok) return invalid_system(v);
  Json cj = load_json(cmcx_path);
  require_same_system(s, system_from_json(cj.at("system")));
  CmcAtlas atlas(s);
  Cmcx c = cmcx_from_json(atlas, cj);
  std::optional<RefinedFan> rf;
  TauData td;
  if (fan_path.empty()) {
    td = raw_tau_data(atlas, c);
  } else {
    Json fj = load_json(fan_path);
    require_same_system(s, system_from_json(fj.at("system")));
    rf = fan_from_json(atlas, fj);
    td = refined_tau_data(atlas, *rf, c);
  }
  const StratSystem& sys = *td.system;
  Stratum seed = sys.parse_key(stratum);
  auto r = ncc(td, seed);
  return {{{"status", "pass"},
           {"seed", sys.key(r.seed)},
           {"members", keys(sys, r.members)},
           {"iterations", r.iterations},
           {"strata", fan_path.empty() ? "raw" : "refined"}},
          kOk};
}

IndexedPath parse_path(const StratSystem& s, const std::string& text) {
  IndexedPath p;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, '/')) p.push_back(s.parse_key(part));
  return p;
}

Outcome cmd_hyperint(const RunConfig& cfg, const std::string& path, const std::string& from) {
  StratSystem s = load_system(cfg.inputs.at(0));
  auto v = validate(s);
  if (!v.ok) return invalid_system(v);
  CmcAtlas atlas(s);
  if (!path.empty()) {
    auto h = hyperintersect(atlas, parse_path(s, path));
    return {{{"status", "pass"}, {"hyperintersection", to_json(h, s)}}, kOk};
  }
  Stratum start = s.parse_key(from);
  auto e = enumerate_hyperintersections(atlas, start, cfg.caps.max_states);
  Json ends = Json::object();
  for (const auto& r : e.records) ends[s.key(r.end)] = ends.value(s.key(r.end), 0) + 1;
  return {{{"status", "pass"},
           {"start", s.key(start)},
           {"states", e.states},
           {"values", to_json(e.values)},
           {"states_by_end", ends}},
          kOk};
}

Outcome cmd_refine_fan(const RunConfig& cfg, const std::string& cmcx_path, bool simplicialize) {
  StratSystem s = load_system(cfg.inputs.at(0));
  auto v = validate(s);
  if (!v.ok) return invalid_system(v);
  Json cj = load_json(cmcx_path);
  require_same_system(s, system_from_json(cj.at("system")));
  CmcAtlas atlas(s);
  Cmcx c = cmcx_from_json(atlas, cj);
  auto check = check_cmcx(atlas, c);
  if (!check.ok) return {{{"status", "fail"}, {"kind", check.kind}, {"witness", check.witness}}, kFailed};
  RefinedFan rf = refine_fan(atlas, c, {simplicialize}, cfg.caps);
  auto compat = check_compatibility(atlas, rf, c);
  Json rep{{"status", compat.ok ? "pass" : "fail"},
           {"rays", rf.rays.size()},
           {"new_rays", rf.rays.size() - s.divisors().size()},
           {"cells", rf.strata.size()},
           {"induced", rf.induced.has_value()},
           {"compatibility", {{"ok", compat.ok}, {"cells_checked", compat.cells_checked}, {"witness", compat.witness}}}};
  emit(cfg, rep, "fan", to_json(atlas, rf));
  return {rep, compat.ok ? kOk : kFailed};
}

Outcome cmd_check_compat(const RunConfig& cfg) {
  Json fj = load_json(cfg.inputs.at(0));
  Json cj = load_json(cfg.inputs.at(1));
  StratSystem s = system_from_json(cj.at("system"));
  require_same_system(s, system_from_json(fj.at("system")));
  auto v = validate(s);
  if (!v.ok) return invalid_system(v);
  CmcAtlas atlas(s);
  Cmcx c = cmcx_from_json(atlas, cj);
  RefinedFan rf = fan_from_json(atlas, fj);
  auto rep = check_compatibility(atlas, rf, c);
  return {{{"status", rep.ok ? "pass" : "fail"}, {"cells_checked", rep.cells_checked}, {"witness", rep.witness}},
          rep.ok ? kOk : kFailed};
}

Outcome cmd_weightfilt(const RunConfig& cfg, int center, bool consistency) {
  Json j = load_json(cfg.inputs.at(0));
  std::vector<RatMatrix> ms;
  if (j.is_array()) {
    ms.push_back(matrix_from_json(j));
  } else if (j.contains("matrix")) {
    ms.push_back(matrix_from_json(j.at("matrix")));
  } else if (j.contains("matrices")) {
    for (const auto& m : j.at("matrices")) ms.push_back(matrix_from_json(m));
  } else {
    throw Error(ErrorKind::ParseError, "expected a matrix, {\"matrix\": ...} or {\"matrices\": [...]}");
  }
  if (ms.empty()) throw Error(ErrorKind::ParseError, "no matrices given");
  if (ms.size() == 1 && !consistency) {
    auto w = weight_filtration(ms.front(), center);
    return {{{"status", "pass"}, {"filtration", to_json(w)}}, kOk};
  }
  auto rep = cone_weight_consistency(ms, center, cfg.seed);
  return {{{"status", rep.consistent ? "pass" : "fail"},
           {"consistent", rep.consistent},
           {"samples", rep.samples},
           {"witness", rep.witness}},
          rep.consistent ? kOk : kFailed};
}

Outcome cmd_fixtures(const RunConfig& cfg, const std::string& name) {
  if (name.empty()) {
    auto names = fixture_names();
    names.push_back("random");
    return {{{"status", "pass"}, {"fixtures", names}}, kOk};
  }
  StratSystem s = name == "random" ? random_system(cfg.seed) : fixture(name);
  Json rep{{"status", "pass"}, {"fixture", name}};
  bool ok = true;
  auto v = validate(s);
  rep["validation"] = to_json(v);
  if (v.ok) {
    CmcAtlas atlas(s);
    Json dims = Json::object();
    for (Stratum x : s.nonempty()) dims[s.key(x)] = atlas.at(x).cone.dim();
    rep["cone_dims"] = dims;
    auto simp = is_simplicial(atlas);
    rep["simplicial"] = simp.simplicial;
    if (simp.simplicial) {
      Cmcx t0 = canonical_t0(atlas);
      auto check = check_cmcx(atlas, t0);
      RefinedFan rf = refine_fan(atlas, t0);
      bool identity = rf.cells == identity_fan(atlas).cells && rf.rays.size() == s.divisors().size();
      std::size_t cells = 0;
      for (const auto& [i, cx] : t0.complexes) cells += cx.size();
      rep["t0"] = {{"ok", check.ok}, {"cells", cells}};
      rep["identity_refinement"] = identity;
      ok = ok && check.ok && identity;
    } else {
      rep["simplicial_witness"] = {{"stratum", s.key(simp.witness)}, {"reason", simp.reason}};
    }
    if (name == "hosono-takagi") {
      Json census = Json::array();
      for (const auto& e : hosono_takagi_census(s)) {
        std::size_t got = atlas.at(e.stratum).cone.dim();
        census.push_back({{"label", e.label}, {"stratum", s.key(e.stratum)}, {"expected", e.expected_dim}, {"dim", got}});
        ok = ok && got == e.expected_dim;
      }
      rep["census"] = census;
      ok = ok && simp.simplicial;
    }
  } else {
    ok = false;
  }
  emit(cfg, rep, "system", to_json(s));
  if (!ok) rep["status"] = "fail";
  return {rep, ok ? kOk : kFailed};
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
      return kIoError;
    case ErrorKind::ResourceCap:
      return kResourceCap;
    default:
      return kFailed;
  }
}

void render_text(std::ostream& out, const Json& report) {
  for (const auto& [k, v] : report.items()) {
    if (v.is_string())
      out << k << ": " << v.get<std::string>() << "\n";
    else
      out << k << ": " << v.dump() << "\n";
  }
}

}  // namespace

ResourceCaps parse_caps(const std::string& text, ResourceCaps base) {
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "cap must look like key=value", {{"item", item}});
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      long long parsed = std::stoll(value, &used);
      if (used != value.size() || parsed <= 0) throw std::invalid_argument("cap");
      n = static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "cap value must be a positive integer", {{"item", item}});
    }
    if (key == "max_cells")
      base.max_cells = n;
    else if (key == "max_states")
      base.max_states = n;
    else
      throw Error(ErrorKind::ParseError, "unknown cap", {{"item", item}});
  }
  return base;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial monodromy cones, complexes and fan refinements"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  std::size_t max_cells = 0, max_states = 0;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_option("--max-cells", max_cells, "Cell cap per stratum")->check(CLI::PositiveNumber);
  app.add_option("--max-states", max_states, "Hyperintersection state cap")->check(CLI::PositiveNumber);
  app.fallthrough();

  std::string out_path, stratum, cmcx_path, fan_path, path, from, fixture_name;
  bool t0 = false, strong = false, simplicialize = false, consistency = false;
  int center = 0;
  std::string input, second;
  std::function<Outcome()> action;

  auto* v = app.add_subcommand("validate", "Check a system file");
  v->add_option("file", input)->required();
  v->callback([&] { action = [&] { return cmd_validate(cfg); }; });

  auto* c = app.add_subcommand("cmc", "Print monodromy cones");
  c->add_option("file", input)->required();
  c->add_option("--stratum", stratum);
  c->callback([&] { action = [&] { return cmd_cmc(cfg, stratum); }; });

  auto* b = app.add_subcommand("cmcx-build", "Build a monodromy complex");
  b->add_option("file", input)->required();
  b->add_option("-o,--output", out_path);
  b->add_flag("--t0", t0, "Use all faces of every cone (simplicial systems)");
  b->callback([&] { action = [&] { return cmd_cmcx_build(cfg, t0); }; });

  auto* k = app.add_subcommand("cmcx-check", "Check a monodromy complex");
  k->add_option("file", input)->required();
  k->add_flag("--strong", strong, "Also compare complexes along every hyperintersection");
  k->callback([&] { action = [&] { return cmd_cmcx_check(cfg, strong); }; });

  auto* n = app.add_subcommand("ncc", "Nilpotent cone closure of a stratum");
  n->add_option("file", input)->required();
  n->add_option("--cmcx", cmcx_path)->required();
  n->add_option("--fan", fan_path, "Use the strata of a refined fan");
  n->add_option("--stratum", stratum)->required();
  n->callback([&] { action = [&] { return cmd_ncc(cfg, cmcx_path, fan_path, stratum); }; });

  auto* h = app.add_subcommand("hyperint", "Hyperintersection along a path, or all from a stratum");
  h->add_option("file", input)->required();
  auto* hp = h->add_option("--path", path, "Strata separated by '/', e.g. 1,2/3/1,2,3");
  auto* hf = h->add_option("--from", from, "Enumerate every hyperintersection starting here");
  hp->excludes(hf);
  h->callback([&] {
    if (path.empty() && hf->count() == 0) throw CLI::ValidationError("hyperint", "give --path or --from");
    action = [&] { return cmd_hyperint(cfg, path, from); };
  });

  auto* r = app.add_subcommand("refine-fan", "Pull a monodromy complex back to the orthants");
  r->add_option("file", input)->required();
  r->add_option("--cmcx", cmcx_path)->required();
  r->add_option("-o,--output", out_path);
  r->add_flag("--simplicialize", simplicialize);
  r->callback([&] { action = [&] { return cmd_refine_fan(cfg, cmcx_path, simplicialize); }; });

  auto* p = app.add_subcommand("check-compat", "Check a fan against a monodromy complex");
  p->add_option("fan", input)->required();
  p->add_option("cmcx", second)->required();
  p->callback([&] { action = [&] { return cmd_check_compat(cfg); }; });

  auto* w = app.add_subcommand("weightfilt", "Weight filtration of a nilpotent matrix");
  w->add_option("file", input)->required();
  w->add_option("--center", center);
  w->add_flag("--consistency", consistency, "Compare positive combinations of several matrices");
  w->callback([&] { action = [&] { return cmd_weightfilt(cfg, center, consistency); }; });

  auto* f = app.add_subcommand("fixtures", "List or load the built-in systems");
  f->add_option("name", fixture_name);
  f->add_option("-o,--output", out_path);
  f->callback([&] { action = [&] { return cmd_fixtures(cfg, fixture_name); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoError;
  }

  cfg.format = format == "text" ? Format::Text : Format::Json;
  std::string command = app.get_subcommands().front()->get_name();
  cfg.command = command;
  cfg.inputs = {input};
  if (!second.empty()) cfg.inputs.push_back(second);
  if (!out_path.empty()) cfg.output = out_path;

  Outcome result;
  try {
    if (const char* env = std::getenv("MONODROMY_FAN_CAPS")) cfg.caps = parse_caps(env, cfg.caps);
    if (max_cells) cfg.caps.max_cells = max_cells;
    if (max_states) cfg.caps.max_states = max_states;
    result = action();
  } catch (const Error& e) {
    result.code = exit_code_for(e.kind());
    result.report = {{"status", "error"}, {"error", to_string(e.kind())}, {"message", e.what()}, {"witness", e.witness()}};
  } catch (const std::exception& e) {
    result.code = kFailed;
    result.report = {{"status", "error"}, {"error", "Internal"}, {"message", e.what()}};
  }
  Json report{{"command", command}, {"exit_code", result.code}};
  report.update(result.report);
  if (cfg.format == Format::Json)
    out << report.dump(2) << "\n";
  else
    render_text(out, report);
  return result.code;
}

}  // namespace monofan::cli
