#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "monofan/cone.hpp"

namespace monofan {

/// A face-closed collection of cones with pairwise disjoint relative
/// interiors. Cones are kept sorted and unique.
class PolyComplex {
 public:
  PolyComplex() = default;

  /// Checks both axioms and throws NotFaceClosed or InteriorOverlap with a
  /// witness on failure.
  static PolyComplex validate(std::size_t ambient_dim, std::vector<Cone> cones);
  /// Adds all faces of the given cones, then validates.
  static PolyComplex closure_of(std::size_t ambient_dim, const std::vector<Cone>& cones);
  /// All faces of a single cone.
  static PolyComplex of_cone(const Cone& c);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  const std::vector<Cone>& cones() const noexcept { return cones_; }
  std::size_t size() const noexcept { return cones_.size(); }
  bool contains(const Cone& c) const;
  std::vector<Cone> maximal_cones() const;
  std::vector<Cone> cells_of_dim(std::size_t d) const;
  std::size_t max_dim() const;
  /// Convex hull of all cells. Equal to the support when the support is convex.
  Cone support_hull() const;
  /// True iff the union of the cells equals s.
  bool is_supported_on(const Cone& s) const;

  friend bool operator==(const PolyComplex&, const PolyComplex&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Cone> cones_;
};

/// Cones with disjoint relative interiors where every face of a member is a
/// union of members. Weaker than a complex: faces need not be members.
class SemiComplex {
 public:
  SemiComplex() = default;

  /// Throws UnionFaceViolation or InteriorOverlap with a witness on failure.
  static SemiComplex validate(std::size_t ambient_dim, std::vector<Cone> cones);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  const std::vector<Cone>& cones() const noexcept { return cones_; }
  std::size_t max_dim() const;

  friend bool operator==(const SemiComplex&, const SemiComplex&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Cone> cones_;
};

/// Sorted, duplicate-free list of all faces of the given cones.
std::vector<Cone> face_closure(const std::vector<Cone>& cones);

/// True iff the cones (assumed face-closed, interior-disjoint, all inside s)
/// have union equal to s.
bool covers(const std::vector<Cone>& complex_cells, const Cone& s);

/// True iff the union of `members` equals s, for an arbitrary finite family of
/// cones inside s. Slower than covers(); splits s along member facets.
bool union_covers(const std::vector<Cone>& members, const Cone& s);

PolyComplex validate_complex(std::size_t ambient_dim, std::vector<Cone> cones);
SemiComplex validate_semicomplex(std::size_t ambient_dim, std::vector<Cone> cones);

/// {t ∩ s : t in c} with faces; throws NotInSupport unless s lies in the support.
PolyComplex restrict(const PolyComplex& c, const Cone& s);

/// All intersections of one cone from each input; inputs must share support.
PolyComplex common_refinement(const std::vector<PolyComplex>& cs);

/// Every cone of `coarse` is the union of the cells of `fine` it contains, and
/// every cell of `fine` lies in some cone of `coarse`.
bool refines(const std::vector<Cone>& fine, const std::vector<Cone>& coarse);

/// Replaces each cone s of `base` by the cells of the common refinement of the
/// restrictions to s of per_cone[t] for all t in base containing s, keeping the
/// cells whose relative interior lies in that of s. Missing entries of
/// per_cone stand for the face complex of the cone.
SemiComplex semicomplex_from_subdivisions(const PolyComplex& base, const std::map<Cone, PolyComplex>& per_cone);

/// Scales a ray before it enters a barycenter. The default makes it a
/// primitive integer vector.
using RayNormalizer = std::function<RatVec(const RatVec&)>;

struct Complexification {
  PolyComplex result;
  /// stages[r] is the collection after processing all r-dimensional cones;
  /// stages[0] and stages[1] equal the input.
  std::vector<std::vector<Cone>> stages;
};

/// Dimension-by-dimension barycentric starring that turns a semicomplex into
/// a complex. Every r-cone whose faces are not all present is replaced by the
/// cones over its boundary cells from the barycenter of its normalized rays.
Complexification canonical_complexification(const SemiComplex& c, const RayNormalizer& normalize = {});

/// Once stage r is done its cells of dimension <= r are final: the cells of
/// that dimension in the result which lie inside them are exactly those cells.
/// Later stages only add cells in the interiors of higher cones.
bool skeleton_stable(const Complexification& cx, std::size_t r);

/// Stellar subdivision at p: every cell containing p is replaced by the
/// cones joining p to its faces that miss p.
PolyComplex stellar_subdivision(const PolyComplex& c, const RatVec& p);

/// Face complex of the chambers cut out of s by the hyperplanes {h = 0}.
/// Hyperplanes that do not split a chamber are ignored.
PolyComplex arrangement_subdivision(const Cone& s, const std::vector<RatVec>& hyperplanes);

/// Refines `c` (supported on a convex cone) by just enough hyperplanes that
/// every target becomes a union of cells: targets already unions of cells are
/// skipped, the others cut by their span equations and facet functionals.
/// Targets must lie in the support.
PolyComplex refine_to_targets(const PolyComplex& c, const std::vector<Cone>& targets);

/// Cells of dimension at most r.
std::vector<Cone> skeleton(const std::vector<Cone>& cones, std::size_t r);

}  // namespace monofan
