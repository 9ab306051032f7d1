#include "qsym/zerodim.hpp"

#include <random>
#include <set>

#include "qsym/error.hpp"

namespace qsym {

namespace {

bool is_unit_basis(const std::vector<MultiPoly>& b) { return b.size() == 1 && b[0].is_constant() && !b[0].is_zero(); }

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.raw() < b.raw(); }
};

}  // namespace

std::vector<Monomial> standard_monomials(const std::vector<MultiPoly>& basis, std::size_t nvars) {
  if (is_unit_basis(basis)) return {};
  std::vector<Monomial> lead;
  for (const auto& g : basis) lead.push_back(g.leading_term().first);
  for (std::size_t i = 0; i < nvars; ++i) {
    bool pure = false;
    for (const auto& m : lead)
      if (m[i] && m.degree() == m[i]) pure = true;
    if (!pure) throw DomainError("ideal is not zero-dimensional");
  }
  std::set<Monomial, MonoLess> seen;
  std::vector<Monomial> out, stack{Monomial()};
  while (!stack.empty()) {
    Monomial m = stack.back();
    stack.pop_back();
    if (seen.count(m)) continue;
    seen.insert(m);
    bool std_mono = true;
    for (const auto& l : lead)
      if (l.divides(m)) {
        std_mono = false;
        break;
      }
    if (!std_mono) continue;
    out.push_back(m);
    for (std::size_t i = 0; i < nvars; ++i) stack.push_back(m * Monomial::var(i));
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return compare_degrevlex(a, b, nvars) < 0; });
  return out;
}

UPoly minimal_polynomial(const MultiPoly& f, const std::vector<MultiPoly>& basis) {
  const RingPtr& ring = f.ring();
  const Field& fld = ring->field;
  auto std_monos = standard_monomials(basis, ring->nvars());
  if (std_monos.empty()) return UPoly::constant(Scalar::one(fld));
  Reducer red(ring, basis);
  auto coords = [&](const MultiPoly& g) {
    Vec v(std_monos.size(), Scalar::zero(fld));
    for (const auto& [m, c] : g.terms()) {
      auto it = std::lower_bound(std_monos.begin(), std_monos.end(), m, [&](const Monomial& a, const Monomial& b) {
        return compare_degrevlex(a, b, ring->nvars()) < 0;
      });
      if (it == std_monos.end() || *it != m) throw InternalError("normal form left the standard monomials");
      v[static_cast<std::size_t>(it - std_monos.begin())] = c;
    }
    return v;
  };
  std::vector<Vec> cols;
  MultiPoly power = MultiPoly::constant(ring, 1);
  for (std::size_t k = 0; k <= std_monos.size(); ++k) {
    cols.push_back(coords(power));
    Matrix m(fld, std_monos.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < std_monos.size(); ++i) m(i, j) = cols[j][i];
    auto ker = m.kernel();
    if (!ker.empty()) {
      Vec c = ker[0];
      Scalar lead = c.back();
      for (auto& x : c) x /= lead;
      return UPoly(fld, c);
    }
    power = red.reduce(power * f);
  }
  throw InternalError("minimal polynomial search exceeded the quotient dimension");
}

AffineRadical affine_radical(const RingPtr& ring, const std::vector<MultiPoly>& gens) {
  IdealHandle ideal(ring, gens);
  std::vector<MultiPoly> basis = ideal.basis();
  AffineRadical out{ring, basis, 0};
  if (is_unit_basis(basis)) return out;
  std::vector<MultiPoly> extra;
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    UPoly mu = minimal_polynomial(MultiPoly::variable(ring, i), basis);
    if (!ring->field.is_rational() && static_cast<std::uint64_t>(mu.degree()) >= ring->field.characteristic())
      throw DomainError("radical computation needs a characteristic larger than " + std::to_string(mu.degree()));
    UPoly s = squarefree_part(mu);
    if (s.degree() < mu.degree()) extra.push_back(from_upoly(s, ring, i));
  }
  if (!extra.empty()) {
    std::vector<MultiPoly> g = basis;
    g.insert(g.end(), extra.begin(), extra.end());
    out.basis = IdealHandle(ring, g).basis();
  }
  out.points = static_cast<long>(standard_monomials(out.basis, ring->nvars()).size());
  return out;
}

namespace {

void solve_from(const RingPtr& ring, const std::vector<MultiPoly>& basis, std::size_t var, Vec& partial,
                std::vector<Vec>& out) {
  if (is_unit_basis(basis)) return;
  if (var == ring->nvars()) {
    out.push_back(partial);
    return;
  }
  MultiPoly y = MultiPoly::variable(ring, var);
  for (const auto& r : roots(minimal_polynomial(y, basis))) {
    std::vector<MultiPoly> g = basis;
    g.push_back(y - MultiPoly::constant(ring, r));
    partial[var] = r;
    solve_from(ring, IdealHandle(ring, g).basis(), var + 1, partial, out);
  }
}

}  // namespace

std::vector<Vec> affine_rational_points(const RingPtr& ring, const std::vector<MultiPoly>& gens) {
  AffineRadical r = affine_radical(ring, gens);
  std::vector<Vec> out;
  Vec partial(ring->nvars(), Scalar::zero(ring->field));
  solve_from(ring, r.basis, 0, partial, out);
  return out;
}

// ----- ZeroDimScheme ---------------------------------------------------------------

ZeroDimScheme::ZeroDimScheme(const IdealHandle& ideal, std::uint64_t seed) : ideal_(ideal) {
  const RingPtr& ring = ideal.ring();
  const Field& fld = ring->field;
  std::size_t n = ring->nvars();
  if (n < 2) throw DomainError("zero-dimensional schemes need at least two variables");
  if (!ideal.is_homogeneous()) throw DomainError("ZeroDimScheme needs a homogeneous ideal");
  DimDegree dd = hilbert_dim_degree(ideal);
  if (dd.dim > 0) throw DomainError("scheme has positive dimension " + std::to_string(dd.dim));
  length_ = dd.dim < 0 ? 0 : dd.degree;
  RingPtr chart_ring = make_ring(fld, n - 1, "y");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 17);
  for (int attempt = 0; attempt < 40; ++attempt) {
    long height = 2 + attempt / 4;
    Matrix t = CoordChange::random(fld, n, rng, height).matrix();
    std::vector<MultiPoly> subs;
    for (std::size_t i = 0; i < n; ++i) {
      MultiPoly s = MultiPoly::constant(chart_ring, t(i, n - 1));
      for (std::size_t j = 0; j + 1 < n; ++j)
        if (!t(i, j).is_zero()) s += MultiPoly::variable(chart_ring, j) * t(i, j);
      subs.push_back(s);
    }
    CoordChange change(t);
    std::vector<MultiPoly> moved;
    for (const auto& g : ideal.generators()) moved.push_back(apply_coord_change(g, change));
    std::vector<MultiPoly> dehom;
    for (std::size_t j = 0; j + 1 < n; ++j) dehom.push_back(MultiPoly::variable(chart_ring, j));
    dehom.push_back(MultiPoly::constant(chart_ring, 1));
    std::vector<MultiPoly> gens;
    IdealHandle moved_ideal(ring, moved);
    for (const auto& g : moved_ideal.basis()) gens.push_back(substitute(g, dehom));
    IdealHandle affine(chart_ring, gens);
    const auto& b = affine.basis();
    long dim = is_unit_basis(b) ? 0 : static_cast<long>(standard_monomials(b, n - 1).size());
    if (dim != length_) continue;
    chart_ = t;
    subs_ = std::move(subs);
    radical_ = affine_radical(chart_ring, b);
    reducer_ = std::make_shared<Reducer>(chart_ring, radical_.basis);
    return;
  }
  throw InternalError("no affine chart avoided the points at infinity");
}

MultiPoly ZeroDimScheme::to_chart(const MultiPoly& g) const { return substitute(g, subs_); }

MultiPoly ZeroDimScheme::normal_form(const MultiPoly& g) const { return reducer_->reduce(to_chart(g)); }

bool ZeroDimScheme::vanishes_on(const MultiPoly& g) const { return normal_form(g).is_zero(); }

long ZeroDimScheme::point_count_with(const std::vector<MultiPoly>& extra) const {
  if (radical_.points == 0) return 0;
  std::vector<MultiPoly> g = radical_.basis;
  for (const auto& e : extra) g.push_back(to_chart(e));
  return affine_radical(chart_ring(), g).points;
}

std::vector<Vec> ZeroDimScheme::rational_points() const {
  std::vector<Vec> out;
  if (radical_.points == 0) return out;
  Vec partial(chart_ring()->nvars(), Scalar::zero(chart_ring()->field));
  std::vector<Vec> ys;
  solve_from(chart_ring(), radical_.basis, 0, partial, ys);
  for (const auto& y : ys) {
    Vec full(y);
    full.push_back(Scalar::one(chart_.field()));
    Vec x = chart_ * full;
    out.push_back(normalize_point(x));
  }
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return vec_to_string(a) < vec_to_string(b); });
  return out;
}

}  // namespace qsym
