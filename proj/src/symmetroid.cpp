#include "qsym/symmetroid.hpp"

#include <sstream>
#include <unordered_map>

#include "qsym/error.hpp"
#include "qsym/univariate.hpp"

namespace qsym {

PencilMatrix::PencilMatrix(RingPtr ring, std::vector<Matrix> coefficients)
    : ring_(std::move(ring)), a_(std::move(coefficients)) {
  if (a_.size() != ring_->nvars()) throw DomainError("pencil needs one coefficient matrix per variable");
  if (a_.empty()) throw DomainError("pencil over an empty variable list");
  d_ = a_[0].rows();
  if (d_ == 0 || d_ > 16) throw DomainError("pencil size must be between 1 and 16");
  for (const auto& a : a_) {
    if (a.rows() != d_ || a.cols() != d_) throw DomainError("coefficient matrices differ in size");
    if (a.field() != ring_->field) throw FieldMismatch("coefficient matrix over another field");
    if (!a.is_symmetric()) throw DomainError("coefficient matrix is not symmetric");
  }
}

PencilMatrix PencilMatrix::from_entries(const RingPtr& ring, const std::vector<std::vector<MultiPoly>>& entries) {
  std::size_t d = entries.size();
  if (d == 0) throw DomainError("empty matrix");
  std::vector<Matrix> a(ring->nvars(), Matrix(ring->field, d, d));
  for (std::size_t i = 0; i < d; ++i) {
    if (entries[i].size() != d) throw DomainError("matrix is not square");
    for (std::size_t j = 0; j < d; ++j) {
      const MultiPoly& e = entries[i][j];
      if (!same_ring(e.ring(), ring)) throw RingMismatch("matrix entry from another ring");
      if (e != entries[j][i]) throw DomainError("matrix is not symmetric");
      if (e.is_zero()) continue;
      if (e.total_degree() != 1 || !e.is_homogeneous())
        throw DomainError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a linear form");
      Vec c = linear_coefficients(e);
      for (std::size_t k = 0; k < c.size(); ++k) a[k](i, j) = c[k];
    }
  }
  return PencilMatrix(ring, std::move(a));
}

PencilMatrix PencilMatrix::from_strings(const RingPtr& ring, const std::vector<std::vector<std::string>>& entries) {
  std::vector<std::vector<MultiPoly>> e;
  for (const auto& row : entries) {
    std::vector<MultiPoly> r;
    for (const auto& s : row) r.push_back(parse_poly(s, ring));
    e.push_back(std::move(r));
  }
  return from_entries(ring, e);
}

MultiPoly PencilMatrix::entry(std::size_t i, std::size_t j) const {
  std::vector<Term> t;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!a_[k](i, j).is_zero()) t.emplace_back(Monomial::var(k), a_[k](i, j));
  return MultiPoly(ring_, std::move(t));
}

std::vector<std::vector<MultiPoly>> PencilMatrix::entries() const {
  std::vector<std::vector<MultiPoly>> e(d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) e[i].push_back(entry(i, j));
  return e;
}

Matrix PencilMatrix::evaluate(const Vec& point) const {
  if (point.size() != a_.size()) throw DomainError("point has the wrong number of coordinates");
  Matrix out(field(), d_, d_);
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (point[k].field() != field()) throw FieldMismatch("point over another field");
    if (point[k].is_zero()) continue;
    out = out + a_[k] * point[k];
  }
  return out;
}

PencilMatrix PencilMatrix::substitute(const CoordChange& t) const {
  const Matrix& m = t.matrix();
  if (m.rows() != a_.size()) throw DomainError("coordinate change of the wrong size");
  std::vector<Matrix> b(a_.size(), Matrix(field(), d_, d_));
  for (std::size_t j = 0; j < a_.size(); ++j)
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!m(k, j).is_zero()) b[j] = b[j] + a_[k] * m(k, j);
  return PencilMatrix(ring_, std::move(b));
}

PencilMatrix PencilMatrix::congruence(const Matrix& t) const {
  if (t.rows() != d_ || t.cols() != d_) throw DomainError("congruence matrix of the wrong size");
  Matrix tt = t.transpose();
  std::vector<Matrix> b;
  for (const auto& a : a_) b.push_back(tt * a * t);
  return PencilMatrix(ring_, std::move(b));
}

PencilMatrix PencilMatrix::to_field(const Field& f) const {
  std::vector<Matrix> b;
  for (const auto& a : a_) b.push_back(a.to_field(f));
  return PencilMatrix(with_field(ring_, f), std::move(b));
}

bool operator==(const PencilMatrix& a, const PencilMatrix& b) {
  return a.d_ == b.d_ && same_ring(a.ring_, b.ring_) && a.a_ == b.a_;
}

// ----- file format -------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

PencilMatrix parse_pencil(std::string_view text) {
  std::optional<Field> field;
  std::vector<std::string> vars;
  std::size_t d = 0;
  struct Pending {
    std::size_t i, j, offset;
    std::string expr;
  };
  std::vector<Pending> pending;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    std::size_t off = pos;
    pos = end + 1;
    if (t.empty()) continue;
    std::size_t colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", off);
    std::string key = trim(std::string_view(t).substr(0, colon));
    std::string val = trim(std::string_view(t).substr(colon + 1));
    if (key == "ring") {
      field = Field::parse(val);
    } else if (key == "vars") {
      std::string v = val;
      for (char& c : v)
        if (c == ',') c = ' ';
      std::istringstream is(v);
      std::string name;
      while (is >> name) vars.push_back(name);
    } else if (key == "size") {
      try {
        d = std::stoul(val);
      } catch (const std::exception&) {
        throw ParseError("size must be a positive integer", off);
      }
      if (d == 0 || d > 16) throw ParseError("size must be between 1 and 16", off);
    } else if (key.size() > 1 && key[0] == 'a' && std::isspace(static_cast<unsigned char>(key[1]))) {
      std::istringstream is(key.substr(1));
      long i = -1, j = -1;
      std::string extra;
      if (!(is >> i >> j) || (is >> extra) || i < 0 || j < 0) throw ParseError("expected 'a i j : expr'", off);
      std::size_t eoff = off + std::string_view(text.substr(off)).find(':') + 1;
      pending.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), eoff, val});
    } else {
      throw ParseError("unknown header '" + key + "'", off);
    }
  }
  if (!field) throw ParseError("missing 'ring:' header", 0);
  if (vars.empty()) throw ParseError("missing 'vars:' header", 0);
  if (d == 0) throw ParseError("missing 'size:' header", 0);
  RingPtr ring = make_ring(*field, vars);
  std::vector<std::vector<MultiPoly>> e(d, std::vector<MultiPoly>(d, MultiPoly(ring)));
  std::vector<std::vector<bool>> seen(d, std::vector<bool>(d, false));
  for (const auto& p : pending) {
    std::size_t i = std::min(p.i, p.j), j = std::max(p.i, p.j);
    if (j >= d) throw ParseError("entry index outside the matrix", p.offset);
    if (seen[i][j]) throw ParseError("entry given twice", p.offset);
    seen[i][j] = true;
    MultiPoly f;
    try {
      f = parse_poly(p.expr, ring);
    } catch (const ParseError& err) {
      std::size_t lead = 0;
      std::string_view rest = text.substr(p.offset);
      while (lead < rest.size() && std::isspace(static_cast<unsigned char>(rest[lead]))) ++lead;
      throw ParseError(err.message(), p.offset + lead + err.offset());
    }
    if (!f.is_zero() && (f.total_degree() != 1 || !f.is_homogeneous()))
      throw ParseError("entry is not a linear form in the declared variables", p.offset);
    e[i][j] = f;
    e[j][i] = f;
  }
  return PencilMatrix::from_entries(ring, e);
}

std::string format_pencil(const PencilMatrix& m) {
  std::ostringstream os;
  os << "ring: " << m.field().to_string() << "\n";
  os << "vars:";
  for (const auto& v : m.ring()->vars) os << ' ' << v;
  os << "\nsize: " << m.size() << "\n";
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) {
      MultiPoly e = m.entry(i, j);
      if (!e.is_zero()) os << "a " << i << ' ' << j << " : " << e.to_string() << "\n";
    }
  return os.str();
}

// ----- minors --------------------------------------------------------------

namespace {

class MinorTable {
 public:
  explicit MinorTable(const PencilMatrix& m) : ring_(m.ring()), e_(m.entries()) {}

  const MultiPoly& get(std::uint32_t rows, std::uint32_t cols) {
    std::uint64_t key = (static_cast<std::uint64_t>(rows) << 32) | cols;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    MultiPoly v(ring_);
    if (rows == 0) {
      v = MultiPoly::constant(ring_, 1);
    } else {
      unsigned r = static_cast<unsigned>(__builtin_ctz(rows));
      std::uint32_t rest = rows & (rows - 1);
      int sign = 1;
      for (unsigned c = 0; c < 32; ++c) {
        if (!(cols >> c & 1u)) continue;
        const MultiPoly& a = e_[r][c];
        if (!a.is_zero()) {
          const MultiPoly& sub = get(rest, cols & ~(1u << c));
          if (!sub.is_zero()) {
            MultiPoly p = a * sub;
            if (sign > 0)
              v += p;
            else
              v -= p;
          }
        }
        sign = -sign;
      }
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

 private:
  RingPtr ring_;
  std::vector<std::vector<MultiPoly>> e_;
  std::unordered_map<std::uint64_t, MultiPoly> memo_;
};

std::uint32_t to_mask(const std::vector<std::size_t>& idx, std::size_t d) {
  std::uint32_t m = 0;
  for (std::size_t i : idx) {
    if (i >= d) throw DomainError("minor index outside the matrix");
    if (m >> i & 1u) throw DomainError("repeated minor index");
    m |= 1u << i;
  }
  return m;
}

int mask_sign(const std::vector<std::size_t>& idx) {
  int inv = 0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) inv += idx[a] > idx[b];
  return inv % 2 ? -1 : 1;
}

}  // namespace

MultiPoly minor(const PencilMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() != cols.size()) throw DomainError("minor needs as many rows as columns");
  MinorTable t(m);
  MultiPoly v = t.get(to_mask(rows, m.size()), to_mask(cols, m.size()));
  if (mask_sign(rows) * mask_sign(cols) < 0) v = -v;
  return v;
}

MultiPoly determinant(const PencilMatrix& m) {
  MinorTable t(m);
  std::uint32_t all = (m.size() >= 32) ? ~0u : ((1u << m.size()) - 1);
  return t.get(all, all);
}

std::vector<MultiPoly> all_minors(const PencilMatrix& m, std::size_t k) {
  std::size_t d = m.size();
  if (k == 0 || k > d) throw DomainError("minor size out of range");
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t s = 0; s < (1u << d); ++s)
    if (static_cast<std::size_t>(__builtin_popcount(s)) == k) subsets.push_back(s);
  MinorTable t(m);
  std::vector<MultiPoly> out;
  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t b = a; b < subsets.size(); ++b) {
      const MultiPoly& v = t.get(subsets[a], subsets[b]);
      if (v.is_zero()) continue;
      bool dup = false;
      for (const auto& o : out)
        if (o == v || o == -v) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(v);
    }
  return out;
}

IdealHandle rank_locus_ideal(const PencilMatrix& m, std::size_t k) {
  if (k == 0 || k >= m.size()) throw DomainError("rank locus needs 0 < k < d");
  return IdealHandle(m.ring(), all_minors(m, k + 1));
}

IdealHandle jacobian_ideal(const MultiPoly& f) {
  if (!f.is_homogeneous()) throw DomainError("jacobian_ideal needs a homogeneous polynomial");
  std::vector<MultiPoly> g{f};
  for (std::size_t i = 0; i < f.nvars(); ++i) g.push_back(partial_derivative(f, i));
  return IdealHandle(f.ring(), std::move(g));
}

std::size_t corank_at(const PencilMatrix& m, const Vec& point) {
  if (is_zero_vec(point)) throw DomainError("the zero vector is not a projective point");
  return m.size() - m.evaluate(point).rank();
}

RingPtr web_ring(const PencilMatrix& m) { return make_ring(m.field(), m.size(), "y"); }

IdealHandle web_base_locus_ideal(const PencilMatrix& m) {
  RingPtr y = web_ring(m);
  std::vector<MultiPoly> g;
  for (const auto& a : m.coefficients()) {
    std::vector<Term> t;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i; j < m.size(); ++j) {
        if (a(i, j).is_zero()) continue;
        Scalar c = i == j ? a(i, j) : a(i, j) + a(i, j);
        t.emplace_back(Monomial::var(i) * Monomial::var(j), c);
      }
    g.emplace_back(y, std::move(t));
  }
  return IdealHandle(y, std::move(g));
}

PencilMatrix generic_symmetric_pencil(const Field& f, std::size_t d) {
  if (d == 0 || d > 5) throw DomainError("generic pencil size must be between 1 and 5");
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      names.push_back("x" + std::to_string(i) + std::to_string(j));
      pos.emplace_back(i, j);
    }
  RingPtr ring = make_ring(f, names);
  std::vector<Matrix> a;
  for (auto [i, j] : pos) {
    Matrix e(f, d, d);
    e(i, j) = Scalar::one(f);
    e(j, i) = Scalar::one(f);
    a.push_back(e);
  }
  return PencilMatrix(ring, std::move(a));
}

// ----- square roots ----------------------------------------------------------

std::optional<SquareRoot> poly_sqrt(const MultiPoly& f) {
  const Field& fld = f.field();
  if (f.is_zero()) return SquareRoot{f, Scalar::one(fld)};
  int deg = f.total_degree();
  if (f.is_homogeneous() && deg % 2) throw DomainError("poly_sqrt needs even degree");
  const auto& [lm, lc] = f.leading_term();
  Monomial half;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    if (lm[i] % 2) return std::nullopt;
    if (lm[i]) half.set(i, lm[i] / 2);
  }
  MultiPoly target = f * lc.inverse();
  MultiPoly g = MultiPoly::monomial(f.ring(), half, Scalar::one(fld));
  Scalar two_inv = Scalar::from_int(fld, 2).inverse();
  for (;;) {
    MultiPoly r = target - g * g;
    if (r.is_zero()) break;
    const auto& [rm, rc] = r.leading_term();
    if (!half.divides(rm)) return std::nullopt;
    Monomial t = rm / half;
    const Monomial& last = g.terms().back().first;
    if (compare_degrevlex(t, last, f.nvars()) >= 0) return std::nullopt;
    g += MultiPoly::monomial(f.ring(), t, rc * two_inv);
  }
  Scalar scale = lc.inverse();
  if (fld.is_rational()) {
    MultiPoly h = normalize_content(g);
    Scalar lam = h.leading_term().second / g.leading_term().second;
    return SquareRoot{h, lam * lam * scale};
  }
  return SquareRoot{g, scale};
}

// ----- normalization at rank-2 points ---------------------------------------

NodeNormalization normalize_rank2_node(const PencilMatrix& m, const Vec& p, NodeMode mode) {
  const Field& f = m.field();
  std::size_t d = m.size();
  if (!evaluate(determinant(m), p).is_zero()) throw DomainError("point is not on the symmetroid");
  std::size_t cork = corank_at(m, p);
  std::size_t want_corank = d - (mode == NodeMode::Rank2 ? 2 : 3);
  if (d < 3 || cork != want_corank)
    throw DomainError("corank mismatch: point has corank " + std::to_string(cork) + ", mode needs " +
                      std::to_string(want_corank));
  CoordChange tx = move_point_to_e0(p);
  PencilMatrix moved = m.substitute(tx);
  const Matrix& a0 = moved.coefficient(0);
  Congruence c = diagonalize_symmetric(a0);
  std::vector<std::size_t> nz, z;
  for (std::size_t i = 0; i < d; ++i) (c.diagonal(i, i).is_zero() ? z : nz).push_back(i);
  Matrix ty(f, d, d);
  auto set_col = [&](std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < d; ++i) ty(i, j) = v[i];
  };
  if (mode == NodeMode::Rank2) {
    Scalar d1 = c.diagonal(nz[0], nz[0]), d2 = c.diagonal(nz[1], nz[1]);
    auto s = (-d2 / d1).sqrt();
    if (!s)
      throw NormalizationError("hyperbolic normalization impossible over " + f.to_string() + ": " +
                               (-d2 / d1).to_string() + " is not a square; rerun over GF(p) or GF(p,2)");
    Vec v1 = c.transform.col(nz[0]), v2 = c.transform.col(nz[1]);
    Scalar k = (Scalar::from_int(f, 4) * d2).inverse();
    Vec w1(d, Scalar::zero(f)), w2(d, Scalar::zero(f));
    for (std::size_t i = 0; i < d; ++i) {
      w1[i] = *s * v1[i] + v2[i];
      w2[i] = (v2[i] - *s * v1[i]) * k;
    }
    set_col(0, w1);
    set_col(1, w2);
    for (std::size_t j = 0; j < z.size(); ++j) set_col(2 + j, c.transform.col(z[j]));
  } else {
    std::size_t j = 0;
    for (std::size_t i : nz) set_col(j++, c.transform.col(i));
    for (std::size_t i : z) set_col(j++, c.transform.col(i));
  }
  PencilMatrix out = moved.congruence(ty);
  if (mode == NodeMode::Rank2) {
    Matrix expect(f, d, d);
    Scalar half = Scalar::from_int(f, 2).inverse();
    expect(0, 1) = half;
    expect(1, 0) = half;
    if (out.coefficient(0) != expect) throw InternalError("rank-2 normalization produced the wrong A_0");
  }
  Scalar dt = ty.det();
  if (determinant(out) != determinant(moved) * (dt * dt))
    throw InternalError("determinant did not transform by det(T)^2");
  return {out, tx, ty};
}

// ----- restriction to a line -------------------------------------------------

namespace {

std::size_t distinct_roots_binary(const MultiPoly& g) {
  // g homogeneous in (s, t)
  if (g.is_zero() || g.is_constant()) return 0;
  std::size_t n = 0;
  if (g.degree_in(0) < g.total_degree()) ++n;  // t | g: root at [1:0]
  std::vector<Scalar> c(static_cast<std::size_t>(g.total_degree()) + 1, Scalar::zero(g.field()));
  for (const auto& [m, v] : g.terms()) c[m[0]] = v;
  UPoly u(g.field(), c);
  if (u.degree() > 0) n += static_cast<std::size_t>(squarefree_part(u).degree());
  return n;
}

}  // namespace

std::string to_string(PencilType t) {
  switch (t) {
    case PencilType::None: return "none";
    case PencilType::CommonVertex: return "common-vertex";
    case PencilType::SingleRank2: return "single-rank2";
  }
  return "?";
}

PencilReport analyze_pencil(const PencilMatrix& m, const Vec& a, const Vec& b) {
  const Field& f = m.field();
  std::size_t d = m.size();
  if (a.size() != m.nvars() || b.size() != m.nvars()) throw DomainError("line points of the wrong length");
  if (Matrix::from_rows({a, b}).rank() != 2) throw DomainError("line needs two distinct points");
  RingPtr st = make_ring(f, {"s", "t"});
  Matrix aa = m.evaluate(a), bb = m.evaluate(b);
  PencilMatrix line(st, {aa, bb});
  PencilReport rep;
  Matrix generic = bb;
  rep.generic_rank = bb.rank();
  for (long lam = 0; lam <= static_cast<long>(d) + 1; ++lam) {
    Matrix x = aa + bb * Scalar::from_int(f, lam);
    std::size_t r = x.rank();
    if (r > rep.generic_rank) {
      rep.generic_rank = r;
      generic = x;
    }
  }
  rep.degenerate = rep.generic_rank < 2;
  rep.discriminant = determinant(line);
  rep.discriminant_length = rep.discriminant.is_zero() ? -1 : static_cast<int>(d);
  std::size_t r = rep.generic_rank;
  if (r >= 1) {
    IdealHandle drop(st, all_minors(line, r));
    IdealHandle sat = saturate_irrelevant(drop);
    DimDegree dd = hilbert_dim_degree(sat);
    rep.rank_drop_length = dd.dim == 0 ? static_cast<int>(dd.degree) : (dd.dim < 0 ? 0 : -1);
    if (r == d - 1 && d >= 2) {
      auto ker = generic.kernel();
      if (ker.size() == 1 && is_zero_vec(aa * ker[0]) && is_zero_vec(bb * ker[0])) {
        rep.type = PencilType::CommonVertex;
        rep.common_vertex = normalize_point(ker[0]);
      } else if (dd.dim == 0 && sat.basis().size() == 1 && distinct_roots_binary(sat.basis()[0]) == 1) {
        rep.type = PencilType::SingleRank2;
      }
    }
  }
  if (r == 2 && d > 2) {
    RingPtr y = web_ring(m);
    auto quad = [&](const Matrix& q) {
      std::vector<Term> t;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
          if (!q(i, j).is_zero()) t.emplace_back(Monomial::var(i) * Monomial::var(j), i == j ? q(i, j) : q(i, j) + q(i, j));
      return MultiPoly(y, std::move(t));
    };
    MultiPoly qa = quad(generic);
    MultiPoly other = generic == aa ? quad(bb) : quad(aa);
    Congruence c = diagonalize_symmetric(generic);
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < d; ++i)
      if (!c.diagonal(i, i).is_zero()) nz.push_back(i);
    Matrix tinv = *c.transform.inverse();
    Scalar d1 = c.diagonal(nz[0], nz[0]), d2 = c.diagonal(nz[1], nz[1]);
    if (auto s = (-d2 / d1).sqrt()) {
      Vec u1 = tinv.row(nz[0]), u2 = tinv.row(nz[1]);
      for (int sign : {1, -1}) {
        Vec l(d, Scalar::zero(f));
        for (std::size_t i = 0; i < d; ++i) l[i] = u1[i] + *s * u2[i] * Scalar::from_int(f, sign);
        MultiPoly h = normalize_content(linear_form(y, l));
        if (divide_exact(other, h) && divide_exact(qa, h)) {
          rep.common_plane = h;
          IdealHandle base(y, {qa, other});
          rep.residual_base = hilbert_dim_degree(saturate(base, h));
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace qsym
