#include "qsym/linalg.hpp"

#include "qsym/error.hpp"

namespace qsym {

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), r_(rows), c_(cols), a_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<long>>& rows) {
  if (rows.empty()) return Matrix(f, 0, 0);
  Matrix m(f, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.c_) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = Scalar::from_int(f, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty() || rows[0].empty()) throw DomainError("from_rows needs a non-empty matrix");
  Matrix m(rows[0][0].field(), rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.c_) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Matrix::col(std::size_t j) const {
  Vec v;
  for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw DomainError("matrix dimension mismatch");
  if (field_ != o.field_) throw FieldMismatch("matrix field mismatch");
  Matrix m(field_, r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

Vec Matrix::operator*(const Vec& v) const {
  if (v.size() != c_) throw DomainError("matrix-vector dimension mismatch");
  Vec out(r_, Scalar::zero(field_));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw DomainError("matrix dimension mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i]) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = i + 1; j < c_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

std::pair<Matrix, std::vector<std::size_t>> Matrix::rref() const {
  Matrix m = *this;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < c_ && r < r_; ++c) {
    std::size_t p = r;
    while (p < r_ && m(p, c).is_zero()) ++p;
    if (p == r_) continue;
    if (p != r)
      for (std::size_t j = 0; j < c_; ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < c_; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < r_; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < c_; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {m, piv};
}

std::size_t Matrix::rank() const { return rref().second.size(); }

Scalar Matrix::det() const {
  if (r_ != c_) throw DomainError("determinant of a non-square matrix");
  Matrix m = *this;
  Scalar d = Scalar::one(field_);
  for (std::size_t c = 0; c < c_; ++c) {
    std::size_t p = c;
    while (p < r_ && m(p, c).is_zero()) ++p;
    if (p == r_) return Scalar::zero(field_);
    if (p != c) {
      for (std::size_t j = 0; j < c_; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Scalar inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < r_; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) * inv;
      for (std::size_t j = c; j < c_; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::optional<Matrix> Matrix::inverse() const {
  if (r_ != c_) return std::nullopt;
  Matrix aug(field_, r_, 2 * c_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, c_ + i) = Scalar::one(field_);
  }
  auto [red, piv] = aug.rref();
  if (piv.size() < r_ || piv[r_ - 1] >= c_) return std::nullopt;
  Matrix inv(field_, r_, c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) inv(i, j) = red(i, c_ + j);
  return inv;
}

std::vector<Vec> Matrix::kernel() const {
  auto [red, piv] = rref();
  std::vector<bool> is_piv(c_, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < c_; ++f) {
    if (is_piv[f]) continue;
    Vec v(c_, Scalar::zero(field_));
    v[f] = Scalar::one(field_);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -red(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix Matrix::to_field(const Field& f) const {
  Matrix m(f, r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i].to_field(f);
  return m;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < r_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < c_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

Vec charpoly(const Matrix& a) {
  std::size_t n = a.rows();
  const Field& f = a.field();
  if (n == 0) return {Scalar::one(f)};
  // Berkowitz; division free.
  Vec c(2, Scalar::zero(f));
  c[0] = Scalar::one(f);
  c[1] = -a(0, 0);
  // c holds the leading block's charpoly, high degree first.
  for (std::size_t r = 1; r < n; ++r) {
    // Partition leading (r+1)x(r+1) block: [[A_r, C],[R, a_rr]].
    Vec cur(r);
    for (std::size_t i = 0; i < r; ++i) cur[i] = a(i, r);
    Vec t(r + 2, Scalar::zero(f));
    t[0] = Scalar::one(f);
    t[1] = -a(r, r);
    for (std::size_t k = 0; k + 2 < r + 2; ++k) {
      Scalar s = Scalar::zero(f);
      for (std::size_t j = 0; j < r; ++j) s += a(r, j) * cur[j];
      t[k + 2] = -s;
      Vec nxt(r, Scalar::zero(f));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) nxt[i] += a(i, j) * cur[j];
      cur = std::move(nxt);
    }
    // Toeplitz product: new = T * c where T lower triangular from t.
    Vec nc(r + 2, Scalar::zero(f));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < c.size(); ++j) nc[i] += t[i - j] * c[j];
    c = std::move(nc);
  }
  Vec low(c.rbegin(), c.rend());
  return low;
}

Congruence diagonalize_symmetric(const Matrix& a) {
  if (!a.is_symmetric()) throw DomainError("diagonalize_symmetric needs a symmetric matrix");
  std::size_t n = a.rows();
  const Field& f = a.field();
  Matrix m = a;
  Matrix t = Matrix::identity(f, n);
  auto add_col = [&](Matrix& x, std::size_t dst, std::size_t src, const Scalar& s) {
    for (std::size_t i = 0; i < x.rows(); ++i) x(i, dst) += s * x(i, src);
  };
  auto add_row = [&](Matrix& x, std::size_t dst, std::size_t src, const Scalar& s) {
    for (std::size_t j = 0; j < x.cols(); ++j) x(dst, j) += s * x(src, j);
  };
  auto swap_idx = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(m(i, k), m(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(m(k, i), m(k, j));
    for (std::size_t k = 0; k < n; ++k) std::swap(t(k, i), t(k, j));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, p).is_zero()) ++p;
    if (p == n) {
      // No diagonal pivot: create one from an off-diagonal entry.
      std::size_t i = n, j = n;
      for (std::size_t u = k; u < n && i == n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (!m(u, v).is_zero()) {
            i = u;
            j = v;
            break;
          }
      if (i == n) break;
      Scalar one = Scalar::one(f);
      add_col(m, i, j, one);
      add_row(m, i, j, one);
      add_col(t, i, j, one);
      p = i;
    }
    if (p != k) swap_idx(p, k);
    Scalar inv = m(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      Scalar s = -(m(i, k) * inv);
      add_col(m, i, k, s);
      add_row(m, i, k, s);
      add_col(t, i, k, s);
    }
  }
  return {m, t};
}

// ---------------------------------------------------------------------------

CoordChange::CoordChange(Matrix t) : t_(std::move(t)) {
  if (t_.rows() != t_.cols()) throw DomainError("coordinate change must be square");
  if (t_.det().is_zero()) throw DomainError("coordinate change matrix is singular");
}

CoordChange CoordChange::identity(const Field& f, std::size_t n) { return CoordChange(Matrix::identity(f, n)); }

CoordChange CoordChange::random(const Field& f, std::size_t n, std::mt19937_64& rng, long height) {
  for (;;) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(f, rng, height);
    if (!m.det().is_zero()) return CoordChange(std::move(m));
  }
}

CoordChange CoordChange::inverse() const { return CoordChange(*t_.inverse()); }

CoordChange CoordChange::compose(const CoordChange& o) const { return CoordChange(t_ * o.t_); }

MultiPoly apply_coord_change(const MultiPoly& f, const CoordChange& t) {
  const Matrix& m = t.matrix();
  if (m.rows() != f.nvars()) throw DomainError("coordinate change size differs from variable count");
  if (m.field() != f.field()) throw FieldMismatch("coordinate change over another field");
  std::vector<MultiPoly> subs;
  for (std::size_t i = 0; i < m.rows(); ++i) subs.push_back(linear_form(f.ring(), m.row(i)));
  return substitute(f, subs);
}

CoordChange move_point_to_e0(const Vec& p) {
  if (p.empty() || is_zero_vec(p)) throw DomainError("cannot move the zero vector");
  const Field& f = p[0].field();
  std::size_t n = p.size();
  std::size_t piv = 0;
  while (p[piv].is_zero()) ++piv;
  Matrix t(f, n, n);
  for (std::size_t i = 0; i < n; ++i) t(i, 0) = p[i];
  std::size_t col = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == piv) continue;
    t(j, col++) = Scalar::one(f);
  }
  return CoordChange(std::move(t));
}

Vec linear_coefficients(const MultiPoly& f) {
  Vec c(f.nvars(), Scalar::zero(f.field()));
  for (const auto& [m, s] : f.terms()) {
    if (m.degree() != 1) throw DomainError("expected a linear form, got " + f.to_string());
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (m[i]) c[i] = s;
  }
  return c;
}

MultiPoly linear_form(const RingPtr& ring, const Vec& c) {
  if (c.size() != ring->nvars()) throw DomainError("linear form arity mismatch");
  std::vector<Term> t;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) t.emplace_back(Monomial::var(i), c[i]);
  return MultiPoly(ring, std::move(t));
}

Vec normalize_point(const Vec& p) {
  for (const auto& x : p)
    if (!x.is_zero()) {
      Scalar inv = x.inverse();
      Vec q = p;
      for (auto& y : q) y *= inv;
      return q;
    }
  throw DomainError("the zero vector is not a projective point");
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec ints_to_vec(const Field& f, const std::vector<long>& v) {
  Vec out;
  for (long x : v) out.push_back(Scalar::from_int(f, x));
  return out;
}

std::string vec_to_string(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ":" : "") + v[i].to_string();
  return s + "]";
}

}  // namespace qsym
