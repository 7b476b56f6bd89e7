#include "monofan/cmc.hpp"

#include "monofan/error.hpp"

namespace monofan {

namespace {

// proj_sup . inclusion vanishes on Ker_sub, so any section of proj_sub works.
RatMatrix induced(const Cmc& sub, const Cmc& sup) {
  return sup.proj * coordinate_inclusion(sub.stratum, sup.stratum) * right_inverse(sub.proj);
}

}  // namespace

Cmc build_cmc(const StratSystem& s, Stratum stratum) {
  const Subspace& k = s.kernel_of(stratum);
  const std::size_t n = stratum_size(stratum);
  Cmc c;
  c.stratum = stratum;
  c.proj = quotient_map(n, k);
  c.cone = image_cone(Cone::orthant(n), c.proj);
  return c;
}

AdjacentMap adjacent_map(const StratSystem& s, Stratum sub, Stratum sup) {
  if (!is_subset(sub, sup))
    throw Error(ErrorKind::NotSubstratum, "adjacent map needs a substratum", {{"from", s.key(sub)}, {"to", s.key(sup)}});
  return {sub, sup, induced(build_cmc(s, sub), build_cmc(s, sup))};
}

AdjacentMap compose_adjacent(const AdjacentMap& a, const AdjacentMap& b) {
  if (a.to != b.from)
    throw Error(ErrorKind::ChainMismatch, "adjacent maps do not chain", {{"first_to", a.to}, {"second_from", b.from}});
  return {a.from, b.to, b.matrix * a.matrix};
}

CmcAtlas::CmcAtlas(const StratSystem& s) : system_(&s) {
  for (Stratum t : s.nonempty()) cmcs_.emplace(t, build_cmc(s, t));
  for (auto [sub, sup] : adjacency(s)) {
    RatMatrix m = induced(cmcs_.at(sub), cmcs_.at(sup));
    RatMatrix inv = left_inverse(m);
    maps_.emplace(std::make_pair(sub, sup), std::make_pair(std::move(m), std::move(inv)));
  }
  for (Stratum t : s.nonempty()) {
    RatMatrix id = RatMatrix::identity(cmcs_.at(t).proj.rows());
    maps_.emplace(std::make_pair(t, t), std::make_pair(id, id));
  }
}

const Cmc& CmcAtlas::at(Stratum stratum) const {
  auto it = cmcs_.find(stratum);
  if (it == cmcs_.end())
    throw Error(ErrorKind::UnknownStratum, "stratum is not in the nonempty family", {{"stratum", system_->key(stratum)}});
  return it->second;
}

const RatMatrix& CmcAtlas::xi(Stratum sub, Stratum sup) const { return lookup(sub, sup).first; }

const RatMatrix& CmcAtlas::xi_inverse(Stratum sub, Stratum sup) const { return lookup(sub, sup).second; }

const std::pair<RatMatrix, RatMatrix>& CmcAtlas::lookup(Stratum sub, Stratum sup) const {
  auto it = maps_.find({sub, sup});
  if (it == maps_.end()) {
    if (!is_subset(sub, sup))
      throw Error(ErrorKind::NotSubstratum, "adjacent map needs a substratum",
                  {{"from", system_->key(sub)}, {"to", system_->key(sup)}});
    throw Error(ErrorKind::UnknownStratum, "stratum is not in the nonempty family",
                {{"from", system_->key(sub)}, {"to", system_->key(sup)}});
  }
  return it->second;
}

}  // namespace monofan
