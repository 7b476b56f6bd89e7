#include "monofan/json_io.hpp"

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

std::size_t count_from_json(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    parse_fail("expected a nonnegative integer", j);
  return j.get<std::size_t>();
}

std::vector<RatVec> vec_list(const Json& j, std::size_t n) {
  if (!j.is_array()) parse_fail("expected a list of vectors", j);
  std::vector<RatVec> out;
  for (const auto& v : j) {
    out.push_back(vec_from_json(v));
    if (out.back().size() != n) parse_fail("vector length does not match ambient dimension", v);
  }
  return out;
}

}  // namespace

Json to_json(const Rat& q) { return to_string(q); }

Json to_json(const RatVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Json to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& b : s.basis()) basis.push_back(to_json(b));
  return {{"ambient", s.ambient_dim()}, {"basis", basis}};
}

Json to_json(const Cone& c) {
  Json rays = Json::array(), lin = Json::array();
  for (const auto& r : c.rays()) rays.push_back(to_json(r));
  for (const auto& l : c.lineality().basis()) lin.push_back(to_json(l));
  return {{"ambient", c.ambient_dim()}, {"rays", rays}, {"lineality", lin}};
}

Json to_json(const std::vector<Cone>& cones) {
  Json out = Json::array();
  for (const auto& c : cones) out.push_back(to_json(c));
  return out;
}

Json to_json(const PolyComplex& c) { return {{"ambient", c.ambient_dim()}, {"cones", to_json(c.cones())}}; }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  parse_fail("expected a rational as string or integer", j);
}

RatVec vec_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected a vector", j);
  RatVec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected a matrix as a list of rows", j);
  std::vector<RatVec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(r));
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) parse_fail("ragged matrix rows", j);
  return RatMatrix::from_rows(cols, rows);
}

Subspace subspace_from_json(const Json& j) {
  std::size_t n = count_from_json(field(j, "ambient"));
  return Subspace::span(n, vec_list(field(j, "basis"), n));
}

Cone cone_from_json(const Json& j) {
  std::size_t n = count_from_json(field(j, "ambient"));
  std::vector<RatVec> lin;
  if (j.contains("lineality")) lin = vec_list(j.at("lineality"), n);
  return Cone::hull(n, vec_list(field(j, "rays"), n), lin);
}

PolyComplex complex_from_json(const Json& j) {
  std::size_t n = count_from_json(field(j, "ambient"));
  const Json& cs = field(j, "cones");
  if (!cs.is_array()) parse_fail("expected a list of cones", cs);
  std::vector<Cone> cones;
  for (const auto& c : cs) {
    cones.push_back(cone_from_json(c));
    if (cones.back().ambient_dim() != n) parse_fail("cone ambient dimension differs from complex", c);
  }
  return PolyComplex::validate(n, std::move(cones));
}

}  // namespace monofan
