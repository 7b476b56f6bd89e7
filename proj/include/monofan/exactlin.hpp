#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace monofan {

// Exact rational arithmetic. Everything in the library is computed over Q;
// there is no floating point anywhere in the core.
using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

std::string to_string(const Rat& q);
Rat parse_rat(std::string_view text);

Rat dot(const RatVec& a, const RatVec& b);
bool is_zero(const RatVec& v);
RatVec unit_vector(std::size_t n, std::size_t i);

/// Scales v by a positive rational so it becomes a primitive integer vector
/// (gcd of entries 1). The zero vector is returned unchanged.
RatVec primitive(const RatVec& v);

/// Lexicographic comparison of equal-length vectors.
int compare(const RatVec& a, const RatVec& b);

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(std::size_t cols, const std::vector<RatVec>& rows);
  static RatMatrix from_columns(std::size_t rows, const std::vector<RatVec>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatVec row(std::size_t r) const;
  RatVec column(std::size_t c) const;
  std::vector<RatVec> row_list() const;

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& other) const;
  RatVec operator*(const RatVec& v) const;
  RatMatrix operator+(const RatMatrix& other) const;
  RatMatrix operator-(const RatMatrix& other) const;
  RatMatrix scaled(const Rat& s) const;
  RatMatrix power(unsigned k) const;

  bool is_zero() const;
  std::size_t rank() const;

  bool operator==(const RatMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

/// Row-reduces in place to reduced row echelon form, drops zero rows and
/// returns the pivot column of each remaining row.
std::vector<std::size_t> rref(std::vector<RatVec>& rows, std::size_t cols);

/// A linear subspace of Q^n stored by its reduced row echelon basis, so two
/// equal subspaces always have identical representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, std::vector<RatVec> vectors);
  static Subspace full(std::size_t ambient_dim);
  static Subspace coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& coords);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<RatVec>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const RatVec& v) const;
  bool contains(const Subspace& other) const;

  /// Subtracts the basis so that v vanishes on every pivot column; this is the
  /// canonical representative of v modulo the subspace.
  RatVec reduce(const RatVec& v) const;

  /// Vectors y with y.x = 0 for every x in the subspace.
  Subspace annihilator() const;

  Subspace operator+(const Subspace& other) const;

  bool operator==(const Subspace& other) const = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<RatVec> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const RatMatrix& m);
Subspace image(const RatMatrix& m);
Subspace image(const RatMatrix& m, const Subspace& s);
/// {x : m x in s}
Subspace preimage(const RatMatrix& m, const Subspace& s);
Subspace intersect_subspaces(const Subspace& a, const Subspace& b);

/// Full-rank (n - dim k) x n matrix whose kernel is exactly k. The complement
/// is spanned by the leading free coordinates of the trailing-pivot echelon
/// form of k, so the result is deterministic.
RatMatrix quotient_map(std::size_t ambient_dim, const Subspace& k);

/// Matrix r with m r = id, for m of full row rank.
RatMatrix right_inverse(const RatMatrix& m);
/// Matrix l with l m = id, for m of full column rank.
RatMatrix left_inverse(const RatMatrix& m);

}  // namespace monofan
