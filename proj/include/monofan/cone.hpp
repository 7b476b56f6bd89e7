#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "monofan/exactlin.hpp"

namespace monofan {

/// A closed, finitely generated rational polyhedral cone.
///
/// Canonical form: the lineality space in RREF plus the extreme rays of the
/// pointed part, each reduced modulo the lineality space (zero on its pivot
/// coordinates), scaled to a primitive integer vector and sorted. Facets are
/// stored the same way modulo the equations of the linear span. Two cones are
/// equal as sets iff their canonical forms are identical.
class Cone {
 public:
  Cone() = default;

  /// Nonnegative hull of `generators` plus the linear span of `lineality`.
  static Cone hull(std::size_t ambient_dim, const std::vector<RatVec>& generators,
                   const std::vector<RatVec>& lineality = {});
  /// {x : f.x >= 0 for f in inequalities, e.x = 0 for e in equations}.
  static Cone from_constraints(std::size_t ambient_dim, const std::vector<RatVec>& inequalities,
                               const std::vector<RatVec>& equations = {});
  static Cone zero(std::size_t ambient_dim);
  static Cone orthant(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return ambient_ - equations_.dim(); }

  const std::vector<RatVec>& rays() const noexcept { return rays_; }
  const Subspace& lineality() const noexcept { return lineality_; }
  const std::vector<RatVec>& facets() const noexcept { return facets_; }
  /// Functionals vanishing on the cone: the annihilator of its linear span.
  const Subspace& equations() const noexcept { return equations_; }
  Subspace span() const;

  bool is_pointed() const noexcept { return lineality_.dim() == 0; }
  bool is_simplicial() const noexcept { return is_pointed() && rays_.size() == dim(); }

  bool contains(const RatVec& v) const;
  bool relint_contains(const RatVec& v) const;
  /// The sum of the extreme rays; always a relative interior point.
  RatVec relint_point() const;

  /// All faces including the cone itself and its minimal face (the lineality
  /// space), sorted by the canonical order.
  std::vector<Cone> faces() const;
  /// Faces of codimension one.
  std::vector<Cone> facet_cones() const;
  /// Smallest face of *this containing `sub`; `sub` must be contained in *this.
  Cone minimal_face_containing(const Cone& sub) const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_ == b.ambient_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
  }
  friend std::strong_ordering operator<=>(const Cone& a, const Cone& b);

 private:
  static Cone build(std::size_t n, std::vector<RatVec> rays, std::vector<RatVec> lineality,
                    std::vector<RatVec> facets, std::vector<RatVec> equations);

  std::size_t ambient_ = 0;
  std::vector<RatVec> rays_;
  Subspace lineality_;
  std::vector<RatVec> facets_;
  Subspace equations_;
};

Cone image_cone(const Cone& c, const RatMatrix& m);
Cone intersect(const Cone& a, const Cone& b);
/// a contains b.
bool contains_cone(const Cone& a, const Cone& b);
/// a is a face of b.
bool is_face_of(const Cone& a, const Cone& b);
/// True iff the relative interiors of a and b meet.
bool relints_meet(const Cone& a, const Cone& b);

struct Face {
  Cone parent;
  Cone cone;
};

}  // namespace monofan
