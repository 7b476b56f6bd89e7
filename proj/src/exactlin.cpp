#include "monofan/exactlin.hpp"

#include <algorithm>
#include <cassert>

#include "monofan/error.hpp"

namespace monofan {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::NotInSupport: return "NotInSupport";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::NotFaceClosed: return "NotFaceClosed";
    case ErrorKind::InteriorOverlap: return "InteriorOverlap";
    case ErrorKind::UnionFaceViolation: return "UnionFaceViolation";
    case ErrorKind::InvalidSemiComplex: return "InvalidSemiComplex";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::UnknownStratum: return "UnknownStratum";
    case ErrorKind::NotSubstratum: return "NotSubstratum";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::MissingTau: return "MissingTau";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::OverlapInconsistency: return "OverlapInconsistency";
    case ErrorKind::NotOverStratum: return "NotOverStratum";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in rational '" + s + "'");
    Rat q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "malformed rational '" + s + "'");
  }
}

Rat dot(const RatVec& a, const RatVec& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

RatVec unit_vector(std::size_t n, std::size_t i) {
  RatVec v(n, Rat(0));
  v[i] = 1;
  return v;
}

RatVec primitive(const RatVec& v) {
  Int lcm_den = 1;
  for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  Int g = 0;
  for (const auto& x : v) {
    Int n = x.get_num() * (lcm_den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return v;
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = Rat(v[i].get_num() * (lcm_den / v[i].get_den()) / g);
  }
  return out;
}

int compare(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// RatMatrix

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(std::size_t cols, const std::vector<RatVec>& rows) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::AmbientMismatch, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<RatVec>& cols) {
  return from_rows(rows, cols).transpose();
}

RatVec RatMatrix::row(std::size_t r) const {
  return RatVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RatVec RatMatrix::column(std::size_t c) const {
  RatVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

std::vector<RatVec> RatMatrix::row_list() const {
  std::vector<RatVec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorKind::AmbientMismatch, "matrix product dimension mismatch");
  RatMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = at(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        if (sgn(other.at(k, c)) != 0) out.at(r, c) += a * other.at(k, c);
      }
    }
  return out;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::AmbientMismatch, "matrix-vector dimension mismatch");
  RatVec out(rows_, Rat(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(at(r, c)) != 0 && sgn(v[c]) != 0) out[r] += at(r, c) * v[c];
  return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorKind::AmbientMismatch, "matrix sum mismatch");
  RatMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& other) const { return *this + other.scaled(-1); }

RatMatrix RatMatrix::scaled(const Rat& s) const {
  RatMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

RatMatrix RatMatrix::power(unsigned k) const {
  RatMatrix out = identity(rows_);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

bool RatMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return sgn(x) == 0; });
}

std::size_t RatMatrix::rank() const {
  auto rows = row_list();
  return rref(rows, cols_).size();
}

// ---------------------------------------------------------------------------
// Row reduction

std::vector<std::size_t> rref(std::vector<RatVec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
    std::size_t p = lead;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[lead], rows[p]);
    Rat inv = 1 / rows[lead][c];
    for (auto& x : rows[lead]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || sgn(rows[r][c]) == 0) continue;
      Rat f = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[lead][k];
    }
    pivots.push_back(c);
    ++lead;
  }
  rows.resize(lead);
  return pivots;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(std::size_t ambient_dim, std::vector<RatVec> vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw Error(ErrorKind::AmbientMismatch, "vector length does not match ambient dimension");
  Subspace s(ambient_dim);
  s.pivots_ = rref(vectors, ambient_dim);
  s.basis_ = std::move(vectors);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<RatVec> basis;
  for (std::size_t i = 0; i < ambient_dim; ++i) basis.push_back(unit_vector(ambient_dim, i));
  return span(ambient_dim, std::move(basis));
}

Subspace Subspace::coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& coords) {
  std::vector<RatVec> basis;
  for (auto c : coords) basis.push_back(unit_vector(ambient_dim, c));
  return span(ambient_dim, std::move(basis));
}

RatVec Subspace::reduce(const RatVec& v) const {
  RatVec out = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Rat f = out[pivots_[i]];
    if (sgn(f) == 0) continue;
    for (std::size_t k = 0; k < ambient_; ++k)
      if (sgn(basis_[i][k]) != 0) out[k] -= f * basis_[i][k];
  }
  return out;
}

bool Subspace::contains(const RatVec& v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::AmbientMismatch, "vector length does not match ambient dimension");
  return is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "subspace ambient mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const RatVec& v) { return contains(v); });
}

Subspace Subspace::annihilator() const { return kernel(RatMatrix::from_rows(ambient_, basis_)); }

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "subspace ambient mismatch");
  auto all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_, std::move(all));
}

Subspace kernel(const RatMatrix& m) {
  auto rows = m.row_list();
  auto pivots = rref(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(m.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), std::move(basis));
}

Subspace image(const RatMatrix& m) {
  std::vector<RatVec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Subspace::span(m.rows(), std::move(cols));
}

Subspace image(const RatMatrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.cols()) throw Error(ErrorKind::AmbientMismatch, "image: dimension mismatch");
  std::vector<RatVec> vs;
  for (const auto& b : s.basis()) vs.push_back(m * b);
  return Subspace::span(m.rows(), std::move(vs));
}

Subspace preimage(const RatMatrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.rows()) throw Error(ErrorKind::AmbientMismatch, "preimage: dimension mismatch");
  return kernel(quotient_map(s.ambient_dim(), s) * m);
}

Subspace intersect_subspaces(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::AmbientMismatch, "intersect_subspaces: ambient dimensions differ",
                {{"a", a.ambient_dim()}, {"b", b.ambient_dim()}});
  return (a.annihilator() + b.annihilator()).annihilator();
}

RatMatrix quotient_map(std::size_t ambient_dim, const Subspace& k) {
  if (k.ambient_dim() != ambient_dim)
    throw Error(ErrorKind::AmbientMismatch, "quotient_map: subspace ambient dimension mismatch",
                {{"ambient", ambient_dim}, {"subspace", k.ambient_dim()}});
  const std::size_t n = ambient_dim;
  // Trailing-pivot echelon form: reduce with columns reversed.
  std::vector<RatVec> rows;
  for (const auto& b : k.basis()) rows.emplace_back(b.rbegin(), b.rend());
  auto rpivots = rref(rows, n);
  std::vector<std::size_t> pivots;
  for (auto p : rpivots) pivots.push_back(n - 1 - p);
  for (auto& r : rows) std::reverse(r.begin(), r.end());

  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec row(n, Rat(0));
    row[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) row[pivots[i]] = -rows[i][f];
    out.push_back(std::move(row));
  }
  return RatMatrix::from_rows(n, out);
}

namespace {

RatMatrix invert_square(RatMatrix m) {
  const std::size_t n = m.rows();
  if (n == 0) return m;
  std::vector<RatVec> aug(n, RatVec(2 * n, Rat(0)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r][c] = m.at(r, c);
    aug[r][n + r] = 1;
  }
  auto piv = rref(aug, 2 * n);
  if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorKind::CheckFailed, "matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug[r][n + c];
  return inv;
}

}  // namespace

RatMatrix right_inverse(const RatMatrix& m) {
  auto rows = m.row_list();
  auto pivots = rref(rows, m.cols());
  if (pivots.size() != m.rows()) throw Error(ErrorKind::CheckFailed, "right_inverse: matrix lacks full row rank");
  RatMatrix sub(m.rows(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t i = 0; i < pivots.size(); ++i) sub.at(r, i) = m.at(r, pivots[i]);
  RatMatrix inv = invert_square(sub);
  RatMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t c = 0; c < m.rows(); ++c) out.at(pivots[i], c) = inv.at(i, c);
  return out;
}

RatMatrix left_inverse(const RatMatrix& m) { return right_inverse(m.transpose()).transpose(); }

}  // namespace monofan
