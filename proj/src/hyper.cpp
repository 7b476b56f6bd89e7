#include "monofan/hyper.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "monofan/error.hpp"
#include "monofan/json_io.hpp"

namespace monofan {

namespace {

bool comparable(Stratum a, Stratum b) { return is_subset(a, b) || is_subset(b, a); }

bool strictly_below(Stratum a, Stratum b) { return a != b && is_subset(a, b); }

Json path_json(const StratSystem& s, const IndexedPath& p) {
  Json out = Json::array();
  for (Stratum t : p) out.push_back(s.key(t));
  return out;
}

bool is_convex_triple(Stratum a, Stratum b, Stratum c) {
  return (is_subset(a, b) && is_subset(c, b)) || (is_subset(b, a) && is_subset(b, c));
}

struct State {
  Stratum end;
  Cone value_end;
  Cone value_start;
  RatMatrix chart;
};

// One scissors step (A, K, B) applied to a state sitting at A.
State step(const CmcAtlas& atlas, const State& st, const Scissors& sc) {
  const RatMatrix& xa = atlas.xi(sc.left, sc.apex);
  const RatMatrix& xb = atlas.xi(sc.right, sc.apex);
  Cone pushed = image_cone(st.value_end, xa);
  Cone cut = intersect(pushed, image_cone(atlas.at(sc.right).cone, xb));
  State out;
  out.end = sc.right;
  out.value_end = image_cone(cut, atlas.xi_inverse(sc.right, sc.apex));
  out.chart = st.chart * atlas.xi_inverse(sc.left, sc.apex) * xb;
  out.value_start = image_cone(out.value_end, out.chart);
  return out;
}

// The chart only matters on the span of the value, so the key records where
// it sends the canonical generators.
std::vector<RatVec> chart_signature(const State& st) {
  std::vector<RatVec> sig;
  for (const auto& r : st.value_end.rays()) sig.push_back(st.chart * r);
  for (const auto& l : st.value_end.lineality().basis()) sig.push_back(st.chart * l);
  return sig;
}

}  // namespace

Scissors unoriented(const Scissors& s) {
  if (s.right < s.left) return {s.right, s.apex, s.left};
  return s;
}

void check_path(const StratSystem& s, const IndexedPath& p) {
  if (p.empty()) throw Error(ErrorKind::InvalidPath, "empty path");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!s.is_nonempty(p[i]))
      throw Error(ErrorKind::InvalidPath, "path visits a stratum outside the nonempty family",
                  {{"path", path_json(s, p)}, {"position", i}});
    if (i > 0 && !comparable(p[i - 1], p[i]))
      throw Error(ErrorKind::InvalidPath, "consecutive strata are not comparable",
                  {{"path", path_json(s, p)}, {"position", i}});
  }
}

IndexedPath normalize_to_convex(const StratSystem& s, const IndexedPath& p) {
  check_path(s, p);
  std::vector<bool> twice(p.size(), false);
  for (std::size_t l = 1; l + 1 < p.size(); ++l) {
    bool up = strictly_below(p[l - 1], p[l]) && strictly_below(p[l], p[l + 1]);
    bool down = strictly_below(p[l], p[l - 1]) && strictly_below(p[l + 1], p[l]);
    if (up || down) twice[l - 1] = twice[l] = true;
  }
  IndexedPath out;
  for (std::size_t l = 0; l < p.size(); ++l) {
    out.push_back(p[l]);
    if (twice[l]) out.push_back(p[l]);
  }
  return out;
}

std::vector<Scissors> scissors_sequence(const StratSystem& s, const IndexedPath& p) {
  check_path(s, p);
  for (std::size_t l = 1; l + 1 < p.size(); ++l)
    if (!is_convex_triple(p[l - 1], p[l], p[l + 1]))
      throw Error(ErrorKind::NotConvex, "path is not convex", {{"path", path_json(s, p)}, {"position", l}});
  IndexedPath q;
  for (std::size_t l = 0; l < p.size(); ++l)
    if (q.size() < 2 || q[q.size() - 1] != p[l] || q[q.size() - 2] != p[l]) q.push_back(p[l]);
  if (q.size() >= 2 && strictly_below(q[1], q[0])) q.insert(q.begin(), q[0]);
  if (q.size() >= 2 && strictly_below(q[q.size() - 2], q.back())) q.push_back(q.back());
  std::vector<Scissors> out;
  for (std::size_t l = 1; l + 1 < q.size(); ++l)
    if (is_subset(q[l - 1], q[l]) && is_subset(q[l + 1], q[l])) out.push_back({q[l - 1], q[l], q[l + 1]});
  return out;
}

HyperIntersection hyperintersect(const CmcAtlas& atlas, const IndexedPath& p) {
  const StratSystem& s = atlas.system();
  auto convex = normalize_to_convex(s, p);
  HyperIntersection h;
  h.from = p.front();
  h.to = p.back();
  h.scissors = scissors_sequence(s, convex);
  const Cmc& start = atlas.at(h.from);
  State st{h.from, start.cone, start.cone, RatMatrix::identity(start.proj.rows())};
  for (const auto& sc : h.scissors) {
    st = step(atlas, st, sc);
    h.scissors_set.insert(unoriented(sc));
  }
  h.value_in_from = st.value_start;
  h.value_in_to = st.value_end;
  h.chart = st.chart;
  return h;
}

HyperIntersection hyperintersect(const StratSystem& s, const IndexedPath& p) {
  CmcAtlas atlas(s);
  return hyperintersect(atlas, p);
}

HyperEnumeration enumerate_hyperintersections(const CmcAtlas& atlas, Stratum start, std::size_t max_states) {
  const StratSystem& s = atlas.system();
  const Cmc& c = atlas.at(start);
  using Key = std::tuple<Stratum, Cone, std::vector<RatVec>>;
  std::set<Key> seen;
  std::deque<State> queue;
  HyperEnumeration out;
  out.start = start;

  auto admit = [&](State st) {
    Key k{st.end, st.value_end, chart_signature(st)};
    if (!seen.insert(std::move(k)).second) return;
    if (seen.size() > max_states)
      throw Error(ErrorKind::ResourceCap, "hyperintersection state cap exceeded",
                  {{"start", s.key(start)}, {"cap", max_states}, {"states", seen.size()}});
    out.records.push_back({st.end, st.value_end, st.value_start, st.chart});
    queue.push_back(std::move(st));
  };

  // Scissors available from each stratum, in deterministic order.
  std::map<Stratum, std::vector<Scissors>> moves;
  for (Stratum a : s.nonempty())
    for (Stratum k : s.nonempty()) {
      if (!is_subset(a, k)) continue;
      for (Stratum b : s.nonempty())
        if (is_subset(b, k)) moves[a].push_back({a, k, b});
    }

  admit({start, c.cone, c.cone, RatMatrix::identity(c.proj.rows())});
  while (!queue.empty()) {
    State st = std::move(queue.front());
    queue.pop_front();
    for (const auto& sc : moves[st.end]) admit(step(atlas, st, sc));
  }
  out.states = seen.size();
  for (const auto& r : out.records) out.values.push_back(r.value_in_start);
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  return out;
}

}  // namespace monofan
