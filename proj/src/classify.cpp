#include "qsym/classify.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "qsym/error.hpp"
#include "qsym/fflab.hpp"
#include "qsym/univariate.hpp"
#include "qsym/zerodim.hpp"

namespace qsym {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt) {
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ull ^ (salt + 0x7f4a7c15ull));
}

Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng, long h) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(f, rng, h));
  return v;
}

/// Coefficients of var^k, with var removed, indexed by k.
std::vector<MultiPoly> split_by_var(const MultiPoly& f, std::size_t var) {
  std::vector<std::vector<Term>> buckets;
  for (const auto& [m, c] : f.terms()) {
    unsigned k = m[var];
    if (buckets.size() <= k) buckets.resize(k + 1);
    Monomial r = m;
    r.set(var, 0);
    buckets[k].emplace_back(r, c);
  }
  std::vector<MultiPoly> out;
  for (auto& b : buckets) out.emplace_back(f.ring(), std::move(b));
  return out;
}

/// Symmetric matrix of a quadratic form in the given variables.
Matrix quadric_matrix(const MultiPoly& q, const std::vector<std::size_t>& vars) {
  const Field& fld = q.field();
  std::size_t n = vars.size();
  Matrix s(fld, n, n);
  Scalar half = Scalar::from_int(fld, 2).inverse();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Monomial m = Monomial::var(vars[i]) * Monomial::var(vars[j]);
      Scalar c = q.coefficient(m);
      if (i == j) {
        s(i, i) = c;
      } else {
        s(i, j) = c * half;
        s(j, i) = c * half;
      }
    }
  return s;
}

bool on_surface_point(const std::vector<MultiPoly>& eqs, const Vec& p) {
  for (const auto& e : eqs)
    if (!evaluate(e, p).is_zero()) return false;
  return true;
}

/// Every polynomial vanishes identically on the line through a and b.
bool vanish_on_line(const std::vector<MultiPoly>& eqs, const Vec& a, const Vec& b) {
  const Field& fld = a.front().field();
  RingPtr st = make_ring(fld, {"s", "t"});
  std::vector<MultiPoly> subs;
  MultiPoly s = MultiPoly::variable(st, 0), t = MultiPoly::variable(st, 1);
  for (std::size_t i = 0; i < a.size(); ++i) subs.push_back(s * a[i] + t * b[i]);
  for (const auto& e : eqs)
    if (!substitute(e, subs).is_zero()) return false;
  return true;
}

std::vector<MultiPoly> monomials_of_degree(const RingPtr& ring, unsigned d) {
  std::vector<MultiPoly> out;
  std::size_t n = ring->nvars();
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(MultiPoly::monomial(ring, Monomial(e), Scalar::one(ring->field)));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = left - k;
      self(self, i + 1, k);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::size_t generic_corank(const PencilMatrix* m, const IdealHandle& curve) {
  if (!m) return 0;
  std::size_t d = m->size();
  std::size_t c = 0;
  for (std::size_t k = 1; k <= d; ++k) {
    bool all = true;
    for (const auto& g : all_minors(*m, d - k + 1))
      if (!ideal_contains(curve, g)) {
        all = false;
        break;
      }
    if (!all) break;
    c = k;
  }
  return c;
}

struct Section {
  std::vector<MultiPoly> subs;  // x_k in terms of u
  ZeroDimScheme scheme;
};

/// Kernel of g -> (g*m restricted to each section's points) on forms of degree e.
std::vector<MultiPoly> section_kernel(const RingPtr& ring, const std::vector<Section>& secs, const MultiPoly& m,
                                      unsigned e) {
  const Field& fld = ring->field;
  auto monos = monomials_of_degree(ring, e);
  std::vector<std::vector<std::map<std::array<std::uint8_t, kMaxVars>, Scalar>>> cols(monos.size());
  std::vector<std::map<std::array<std::uint8_t, kMaxVars>, std::size_t>> row_index(secs.size());
  std::size_t nrows = 0;
  for (std::size_t j = 0; j < monos.size(); ++j) {
    MultiPoly g = monos[j] * m;
    cols[j].resize(secs.size());
    for (std::size_t i = 0; i < secs.size(); ++i) {
      MultiPoly nf = secs[i].scheme.normal_form(substitute(g, secs[i].subs));
      for (const auto& [mono, c] : nf.terms()) {
        cols[j][i][mono.raw()] = c;
        if (!row_index[i].count(mono.raw())) row_index[i][mono.raw()] = nrows++;
      }
    }
  }
  std::vector<MultiPoly> out;
  if (nrows == 0) return monos;
  Matrix a(fld, nrows, monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (std::size_t i = 0; i < secs.size(); ++i)
      for (const auto& [raw, c] : cols[j][i]) a(row_index[i][raw], j) = c;
  for (const auto& v : a.kernel()) {
    MultiPoly g(ring);
    for (std::size_t j = 0; j < monos.size(); ++j)
      if (!v[j].is_zero()) g += monos[j] * v[j];
    out.push_back(normalize_content(g));
  }
  return out;
}

/// Basis of the plane l = 0 as three points.
std::vector<Vec> plane_basis(const MultiPoly& l) {
  Matrix row = Matrix::from_rows({linear_coefficients(l)});
  return row.kernel();
}

MultiPoly restrict_to_plane(const MultiPoly& q, const std::vector<Vec>& basis, const RingPtr& vring) {
  std::vector<MultiPoly> subs;
  for (std::size_t i = 0; i < q.nvars(); ++i) {
    MultiPoly s(vring);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!basis[j][i].is_zero()) s += MultiPoly::variable(vring, j) * basis[j][i];
    subs.push_back(s);
  }
  return substitute(q, subs);
}

bool canonical_less(const Vec& a, const Vec& b) { return vec_to_string(a) < vec_to_string(b); }

void add_line(CurveSearch& out, const RingPtr& ring, const PencilMatrix* m, const Vec& a, const Vec& b,
              std::uint64_t modulus = 0) {
  IdealHandle li = span_ideal(ring, {a, b});
  auto& target = modulus ? out.modular_findings : out.curves;
  for (const auto& c : target)
    if (c.kind == CurveKind::Line && same_ideal(IdealHandle(ring, c.equations), li)) return;
  SingularCurve c;
  c.kind = CurveKind::Line;
  c.equations = li.generators();
  c.span = std::make_pair(a, b);
  c.modulus = modulus;
  if (!modulus) {
    c.generic_corank = generic_corank(m, li);
    if (m) {
      Vec ab(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] + b[i];
      for (const Vec* p : std::initializer_list<const Vec*>{&a, &b, &ab}) c.sampled_coranks.push_back(corank_at(*m, *p));
    }
  }
  target.push_back(std::move(c));
}

void harvest_modular(CurveSearch& out, const MultiPoly& f, const PencilMatrix* m) {
  for (std::uint32_t p : {11u, 13u}) {
    Field fp = Field::prime(p);
    MultiPoly fr;
    try {
      fr = change_field(f, fp);
    } catch (const BadPrime&) {
      continue;
    }
    if (fr.is_zero() || fr.total_degree() != f.total_degree()) continue;
    std::vector<MultiPoly> eqs{fr};
    for (std::size_t i = 0; i < fr.nvars(); ++i) eqs.push_back(partial_derivative(fr, i));
    auto pts = harvest_singular_points(fr, fp);
    if (pts.size() > 400) continue;
    std::optional<PencilMatrix> mr;
    if (m) {
      try {
        mr = m->to_field(fp);
      } catch (const BadPrime&) {
      }
    }
    for (const auto& [a, b] : collinear_candidates(pts))
      if (vanish_on_line(eqs, a, b)) add_line(out, fr.ring(), nullptr, a, b, p);
    IdealHandle jr(fr.ring(), eqs);
    RingPtr vring = make_ring(fp, 3, "v");
    for (const auto& five : coplanar_conic_candidates(pts, 60)) {
      MultiPoly l = span_ideal(fr.ring(), {five[0], five[1], five[2]}).generators().at(0);
      auto monos = monomials_of_degree(fr.ring(), 2);
      Matrix a(fp, 5, monos.size());
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < monos.size(); ++j) a(i, j) = evaluate(monos[j], five[i]);
      std::optional<MultiPoly> q;
      for (const auto& v : a.kernel()) {
        MultiPoly g(fr.ring());
        for (std::size_t j = 0; j < monos.size(); ++j)
          if (!v[j].is_zero()) g += monos[j] * v[j];
        if (!restrict_to_plane(g, plane_basis(l), vring).is_zero()) {
          q = g;
          break;
        }
      }
      if (!q) continue;
      IdealHandle ci(fr.ring(), {l, *q});
      if (!ideal_subset(jr, ci)) continue;
      bool dup = false;
      for (const auto& c : out.modular_findings)
        if (c.modulus == p && c.kind != CurveKind::Line && same_ideal(IdealHandle(fr.ring(), c.equations), ci))
          dup = true;
      if (dup) continue;
      SingularCurve c;
      c.kind = quadric_matrix(restrict_to_plane(*q, plane_basis(l), vring), {0, 1, 2}).rank() == 3 ? CurveKind::Conic
                                                                                                 : CurveKind::LinePair;
      c.equations = {l, *q};
      c.modulus = p;
      if (mr) c.generic_corank = generic_corank(&*mr, ci);
      out.modular_findings.push_back(std::move(c));
    }
  }
}

}  // namespace

std::string to_string(PointLabel l) {
  switch (l) {
    case PointLabel::Smooth: return "smooth";
    case PointLabel::Node: return "node";
    case PointLabel::TacnodeCandidate: return "tacnode-candidate";
    case PointLabel::Corank2Cone: return "corank2-cone";
    case PointLabel::TriplePoint: return "triple-point";
    case PointLabel::Other: return "other";
  }
  return "other";
}

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Line: return "line";
    case CurveKind::Conic: return "conic";
    case CurveKind::LinePair: return "line-pair";
  }
  return "line";
}

std::string to_string(FamilyLabel l) {
  switch (l) {
    case FamilyLabel::Rank3Line: return "Rank3Line";
    case FamilyLabel::Rank2Line: return "Rank2Line";
    case FamilyLabel::DoubleConic: return "DoubleConic";
    case FamilyLabel::TriplePoint: return "TriplePoint";
    case FamilyLabel::Tacnode: return "Tacnode";
    case FamilyLabel::NodalIrrational: return "NodalIrrational";
    case FamilyLabel::TwoLines: return "TwoLines";
    case FamilyLabel::OtherOrDegenerate: return "OtherOrDegenerate";
  }
  return "OtherOrDegenerate";
}

std::optional<FamilyLabel> parse_family_label(const std::string& s) {
  for (auto l : {FamilyLabel::Rank3Line, FamilyLabel::Rank2Line, FamilyLabel::DoubleConic, FamilyLabel::TriplePoint,
                 FamilyLabel::Tacnode, FamilyLabel::NodalIrrational, FamilyLabel::TwoLines,
                 FamilyLabel::OtherOrDegenerate})
    if (to_string(l) == s) return l;
  return std::nullopt;
}

int LocalExpansion::multiplicity() const {
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (!parts[k].is_zero()) return static_cast<int>(k);
  return -1;
}

LocalExpansion local_expansion(const MultiPoly& f, const Vec& p) {
  if (f.is_zero()) throw DomainError("local expansion of the zero polynomial");
  if (!f.is_homogeneous()) throw DomainError("local expansion needs a homogeneous polynomial");
  CoordChange t = move_point_to_e0(p);
  MultiPoly g = apply_coord_change(f, t);
  int deg = f.total_degree();
  auto by_x0 = split_by_var(g, 0);
  LocalExpansion out{t, {}};
  for (int k = 0; k <= deg; ++k) {
    std::size_t e = static_cast<std::size_t>(deg - k);
    out.parts.push_back(e < by_x0.size() ? by_x0[e] : MultiPoly(f.ring()));
  }
  return out;
}

SingularPointReport point_report(const MultiPoly& f, const PencilMatrix* m, const Vec& p) {
  if (p.size() != f.nvars()) throw DomainError("point has the wrong number of coordinates");
  if (is_zero_vec(p)) throw DomainError("the zero vector is not a projective point");
  if (!evaluate(f, p).is_zero()) throw DomainError("point " + vec_to_string(p) + " is not on the surface");
  SingularPointReport r;
  r.point = normalize_point(p);
  LocalExpansion le = local_expansion(f, r.point);
  r.multiplicity = le.multiplicity();
  if (m) r.corank = corank_at(*m, r.point);
  if (r.multiplicity == 2) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 1; i < f.nvars(); ++i) vars.push_back(i);
    r.tangent_cone_rank = static_cast<int>(quadric_matrix(le.parts[2], vars).rank());
    r.tangent_cone_square = poly_sqrt(le.parts[2]).has_value();
  }
  if (r.multiplicity == 1)
    r.label = PointLabel::Smooth;
  else if (r.multiplicity == 2 && r.tangent_cone_rank == static_cast<int>(f.nvars()) - 1)
    r.label = PointLabel::Node;
  else if (r.multiplicity == 2 && r.tangent_cone_square)
    r.label = PointLabel::TacnodeCandidate;
  else if (r.multiplicity == 2 && r.tangent_cone_rank == 2)
    r.label = PointLabel::Corank2Cone;
  else if (r.multiplicity == 3)
    r.label = PointLabel::TriplePoint;
  else
    r.label = PointLabel::Other;
  return r;
}

IdealHandle span_ideal(const RingPtr& ring, const std::vector<Vec>& points) {
  std::vector<MultiPoly> forms;
  for (const auto& v : Matrix::from_rows(points).kernel()) forms.push_back(normalize_content(linear_form(ring, v)));
  return IdealHandle(ring, forms);
}

bool certify_irreducible(const MultiPoly& f, std::uint64_t seed, std::string* why) {
  auto say = [&](const std::string& s) {
    if (why) *why = s;
  };
  if (f.is_zero() || f.is_constant()) {
    say("constant determinant");
    return false;
  }
  if (f.total_degree() >= 2 && f.total_degree() % 2 == 0 && poly_sqrt(f)) {
    say("determinant is a constant times a square");
    return false;
  }
  const Field& fld = f.field();
  int d = f.total_degree();
  if (d == 1) {
    say("linear");
    return true;
  }
  RingPtr tring = make_ring(fld, 1, "t");
  auto rng = make_rng(seed, 0x1ee);
  MultiPoly t = MultiPoly::variable(tring, 0);
  for (int attempt = 0; attempt < 40; ++attempt) {
    Vec a = random_vec(fld, f.nvars(), rng, 12), b = random_vec(fld, f.nvars(), rng, 12);
    std::vector<MultiPoly> subs;
    for (std::size_t i = 0; i < f.nvars(); ++i) subs.push_back(MultiPoly::constant(tring, a[i]) + t * b[i]);
    UPoly u = to_upoly(substitute(f, subs), 0);
    if (u.degree() != d) continue;
    if (fld.is_finite()) {
      if (is_irreducible_finite(u)) {
        say("restriction to a line is irreducible over " + fld.to_string());
        return true;
      }
      continue;
    }
    std::uint32_t p = 101;
    for (int k = 0; k < 8; ++p) {
      if (!is_prime_u32(p)) continue;
      ++k;
      Field fp = Field::prime(p);
      std::vector<Scalar> c;
      try {
        for (const auto& x : u.coeffs()) c.push_back(x.to_field(fp));
      } catch (const BadPrime&) {
        continue;
      }
      UPoly ur(fp, c);
      if (ur.degree() != d) continue;
      if (is_irreducible_finite(ur)) {
        say("restriction to a line is irreducible modulo " + std::to_string(p));
        return true;
      }
    }
  }
  say("no certificate found");
  return false;
}

CurveSearch find_singular_curves(const MultiPoly& f, const PencilMatrix* m, const std::vector<Vec>& hints,
                                 std::uint64_t seed) {
  const RingPtr& ring = f.ring();
  const Field& fld = ring->field;
  std::size_t n = ring->nvars();
  if (n != 4) throw DomainError("curve search works in projective 3-space");
  IdealHandle jac = jacobian_ideal(f);
  const auto& jgens = jac.generators();
  CurveSearch out;
  if (hilbert_dim_degree(jac).dim < 1) return out;

  RingPtr uring = make_ring(fld, 3, "u");
  auto rng = make_rng(seed, 0xc0de);
  std::vector<Section> all;
  std::map<long, std::vector<std::size_t>> by_count;
  std::vector<std::size_t> chosen;
  for (int attempt = 0; attempt < 16 && chosen.empty(); ++attempt) {
    Matrix p(fld, n, 3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 3; ++j) p(i, j) = random_scalar(fld, rng, 3);
    if (p.rank() < 3) continue;
    std::vector<MultiPoly> subs;
    for (std::size_t i = 0; i < n; ++i) {
      MultiPoly s(uring);
      for (std::size_t j = 0; j < 3; ++j)
        if (!p(i, j).is_zero()) s += MultiPoly::variable(uring, j) * p(i, j);
      subs.push_back(s);
    }
    std::vector<MultiPoly> gens;
    for (const auto& g : jgens) gens.push_back(substitute(g, subs));
    IdealHandle ju(uring, gens);
    if (hilbert_dim_degree(ju).dim > 0) continue;
    all.push_back({subs, ZeroDimScheme(ju, seed + static_cast<std::uint64_t>(attempt))});
    auto& v = by_count[all.back().scheme.point_count()];
    v.push_back(all.size() - 1);
    if (v.size() == 3) chosen = v;
  }
  if (chosen.empty()) throw InternalError("plane sections of the singular locus never stabilized");
  std::vector<Section> secs;
  for (auto i : chosen) secs.push_back(std::move(all[i]));
  long remaining = secs[0].scheme.point_count();
  out.section_degree = remaining;

  auto to_x = [&](const Section& s, const Vec& u) {
    Vec x;
    for (const auto& sub : s.subs) x.push_back(evaluate(sub, u));
    return normalize_point(x);
  };
  std::vector<Vec> first, second;
  for (const auto& u : secs[0].scheme.rational_points()) first.push_back(to_x(secs[0], u));
  for (const auto& u : secs[1].scheme.rational_points()) second.push_back(to_x(secs[1], u));
  for (const auto& h : hints)
    if (h.size() == n && !is_zero_vec(h) && on_surface_point(jgens, h)) second.push_back(normalize_point(h));
  std::vector<Vec> pool = first;
  pool.insert(pool.end(), second.begin(), second.end());
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = std::max(i + 1, first.size()); j < pool.size(); ++j) {
      if (Matrix::from_rows({pool[i], pool[j]}).rank() < 2) continue;
      if (vanish_on_line(jgens, pool[i], pool[j])) add_line(out, ring, m, pool[i], pool[j]);
    }
  remaining -= static_cast<long>(out.curves.size());

  MultiPoly mult = MultiPoly::constant(ring, 1);
  auto absorb = [&](const SingularCurve& c) {
    if (c.kind == CurveKind::Line)
      mult *= c.equations[0] * random_scalar(fld, rng, 5) + c.equations[1] * random_scalar(fld, rng, 5);
    else
      mult *= c.equations[0];
  };
  for (const auto& c : out.curves) absorb(c);

  RingPtr vring = make_ring(fld, 3, "v");
  while (remaining > 0) {
    auto k1 = section_kernel(ring, secs, mult, 1);
    if (k1.size() >= 2) {
      IdealHandle li(ring, {k1[0], k1[1]});
      if (!ideal_subset(jac, li)) break;
      auto pts = Matrix::from_rows({linear_coefficients(k1[0]), linear_coefficients(k1[1])}).kernel();
      std::size_t before = out.curves.size();
      add_line(out, ring, m, normalize_point(pts[0]), normalize_point(pts[1]));
      if (out.curves.size() == before) break;
      absorb(out.curves.back());
      remaining -= 1;
      continue;
    }
    if (k1.size() != 1) break;
    MultiPoly l = k1[0];
    auto basis = plane_basis(l);
    std::optional<MultiPoly> q;
    for (const auto& g : section_kernel(ring, secs, mult, 2))
      if (!restrict_to_plane(g, basis, vring).is_zero()) {
        q = g;
        break;
      }
    if (!q) break;
    std::size_t r = quadric_matrix(restrict_to_plane(*q, basis, vring), {0, 1, 2}).rank();
    if (r < 2) break;
    IdealHandle ci(ring, {l, *q});
    if (!ideal_subset(jac, ci)) break;
    SingularCurve c;
    c.kind = r == 3 ? CurveKind::Conic : CurveKind::LinePair;
    c.equations = {l, *q};
    c.generic_corank = generic_corank(m, ci);
    absorb(c);
    out.curves.push_back(std::move(c));
    remaining -= 2;
  }
  out.unexplained_degree = remaining;
  if (remaining != 0 && fld.is_rational()) harvest_modular(out, f, m);
  return out;
}

FamilyLabel decide_family(const Evidence& e) {
  if (!e.irreducible) return FamilyLabel::OtherOrDegenerate;
  if (e.singular.dim < 0 || e.singular.dim >= 2) return FamilyLabel::OtherOrDegenerate;
  if (e.unexplained_curve_degree != 0) return FamilyLabel::OtherOrDegenerate;
  for (const auto& p : e.isolated_points)
    if (p.label == PointLabel::TriplePoint) return FamilyLabel::TriplePoint;
  if (e.curves.empty()) {
    for (const auto& p : e.isolated_points)
      if (p.label == PointLabel::TacnodeCandidate && p.corank == 2u) return FamilyLabel::Tacnode;
    bool only_nodes = true;
    for (const auto& p : e.isolated_points)
      if (p.label != PointLabel::Node) only_nodes = false;
    if (only_nodes && e.nodes_reduced && e.isolated_nodes == e.isolated_length && e.isolated_nodes > 0)
      return FamilyLabel::NodalIrrational;
    return FamilyLabel::OtherOrDegenerate;
  }
  if (e.curves.size() == 1) {
    const auto& c = e.curves[0];
    if (c.kind == CurveKind::Line) return c.generic_corank >= 2 ? FamilyLabel::Rank2Line : FamilyLabel::Rank3Line;
    if (c.kind == CurveKind::Conic) return FamilyLabel::DoubleConic;
    return FamilyLabel::TwoLines;
  }
  if (e.curves.size() == 2 && e.curves[0].kind == CurveKind::Line && e.curves[1].kind == CurveKind::Line) {
    std::vector<Vec> rows;
    for (const auto& c : e.curves)
      for (const auto& l : c.equations) rows.push_back(linear_coefficients(l));
    if (Matrix::from_rows(rows).rank() == 3) return FamilyLabel::TwoLines;
  }
  return FamilyLabel::OtherOrDegenerate;
}

Classification classify_family(const PencilMatrix& m, const ClassifyOptions& opts) {
  Classification out;
  Evidence& e = out.evidence;
  MultiPoly f = determinant(m);
  if (f.is_zero()) {
    e.reason = "determinant vanishes identically";
    return out;
  }
  std::string why;
  e.irreducible = certify_irreducible(f, opts.seed, &why);
  if (!e.irreducible) {
    e.reason = "irreducibility not certified: " + why;
    return out;
  }
  const RingPtr& ring = m.ring();
  IdealHandle jac = jacobian_ideal(f);
  e.singular = hilbert_dim_degree(jac);
  if (e.singular.dim >= 2) {
    e.reason = "singular along a surface";
    return out;
  }
  if (e.singular.dim < 0) {
    e.reason = "smooth surface";
    return out;
  }
  if (e.singular.dim == 1) {
    CurveSearch cs = find_singular_curves(f, &m, opts.hints, opts.seed);
    e.curves = std::move(cs.curves);
    e.unexplained_curve_degree = cs.unexplained_degree;
    e.modular_findings = std::move(cs.modular_findings);
    if (!opts.harvest) e.modular_findings.clear();
    if (e.unexplained_curve_degree != 0) {
      e.reason = "singular curves of degree " + std::to_string(e.unexplained_curve_degree) + " not identified";
      out.label = decide_family(e);
      return out;
    }
  }

  IdealHandle j_sat = jac;
  for (const auto& c : e.curves) j_sat = saturate(j_sat, IdealHandle(ring, c.equations));
  j_sat = saturate_irrelevant(j_sat);
  DimDegree iso = hilbert_dim_degree(j_sat);
  if (iso.dim > 0) throw InternalError("singular scheme keeps a curve after removing the detected curves");
  e.isolated_length = iso.dim < 0 ? 0 : iso.degree;

  std::vector<Vec> special;
  for (std::size_t i = 0; i < e.curves.size(); ++i)
    for (std::size_t j = i + 1; j < e.curves.size(); ++j) {
      IdealHandle meet = ideal_sum(IdealHandle(ring, e.curves[i].equations), IdealHandle(ring, e.curves[j].equations));
      if (hilbert_dim_degree(meet).dim != 0) continue;
      for (const auto& p : ZeroDimScheme(saturate_irrelevant(meet), opts.seed).rational_points())
        if (std::none_of(e.curve_points.begin(), e.curve_points.end(),
                         [&](const SingularPointReport& r) { return r.point == p; }))
          e.curve_points.push_back(point_report(f, &m, p));
    }
  for (const auto& h : opts.hints) {
    if (h.size() != ring->nvars() || is_zero_vec(h)) continue;
    Vec p = normalize_point(h);
    bool on_curve = false;
    for (const auto& c : e.curves)
      if (std::all_of(c.equations.begin(), c.equations.end(), [&](const MultiPoly& g) { return evaluate(g, p).is_zero(); }))
        on_curve = true;
    if (!on_curve || !on_surface_point(jac.generators(), p)) continue;
    if (std::none_of(e.curve_points.begin(), e.curve_points.end(),
                     [&](const SingularPointReport& r) { return r.point == p; }))
      e.curve_points.push_back(point_report(f, &m, p));
  }
  std::sort(e.curve_points.begin(), e.curve_points.end(),
            [](const SingularPointReport& a, const SingularPointReport& b) { return canonical_less(a.point, b.point); });

  IdealHandle nodes = j_sat;
  if (e.isolated_length > 0) {
    ZeroDimScheme zi(j_sat, opts.seed);
    for (const auto& p : zi.rational_points()) {
      e.isolated_points.push_back(point_report(f, &m, p));
      if (e.isolated_points.back().label != PointLabel::Node) special.push_back(p);
    }
    for (const auto& p : special) nodes = saturate(nodes, span_ideal(ring, {p}));
    if (!special.empty()) nodes = saturate_irrelevant(nodes);
  }
  DimDegree nd = hilbert_dim_degree(nodes);
  e.isolated_nodes = nd.dim < 0 ? 0 : nd.degree;
  IdealHandle rank2 = rank_locus_ideal(m, 2);
  if (e.isolated_nodes > 0) {
    ZeroDimScheme zn(nodes, opts.seed);
    e.isolated_node_points = zn.point_count();
    e.nodes_reduced = zn.is_reduced();
    e.rank2_isolated = zn.point_count_with(rank2.generators());
  } else {
    e.nodes_reduced = true;
  }

  IdealHandle residual = rank2;
  for (const auto& c : e.curves)
    if (c.generic_corank >= 2) residual = saturate(residual, IdealHandle(ring, c.equations));
  residual = saturate_irrelevant(residual);
  DimDegree rd = hilbert_dim_degree(residual);
  if (rd.dim > 0) {
    e.rank2_residual_length = -1;
    e.rank2_residual_points = -1;
  } else if (rd.dim == 0) {
    e.rank2_residual_length = rd.degree;
    e.rank2_residual_points = ZeroDimScheme(residual, opts.seed).point_count();
  }

  for (const auto& c : e.curves) {
    LineRankData lr;
    if (c.kind == CurveKind::Line) {
      IdealHandle on_line = ideal_add(rank2, c.equations);
      DimDegree dd = hilbert_dim_degree(on_line);
      lr.rank2_length = dd.dim > 0 ? -1 : (dd.dim < 0 ? 0 : dd.degree);
      if (dd.dim <= 0) {
        IdealHandle off = on_line;
        for (const auto& r : e.curve_points)
          if (std::all_of(c.equations.begin(), c.equations.end(),
                          [&](const MultiPoly& g) { return evaluate(g, r.point).is_zero(); }))
            off = saturate(off, span_ideal(ring, {r.point}));
        off = saturate_irrelevant(off);
        DimDegree od = hilbert_dim_degree(off);
        lr.rank2_length_off_special = od.dim < 0 ? 0 : od.degree;
        lr.rank2_points_off_special = od.dim < 0 ? 0 : ZeroDimScheme(off, opts.seed).point_count();
        IdealHandle surface = residual;
        for (const auto& r : e.curve_points)
          if (std::all_of(c.equations.begin(), c.equations.end(),
                          [&](const MultiPoly& g) { return evaluate(g, r.point).is_zero(); }))
            surface = saturate(surface, span_ideal(ring, {r.point}));
        surface = saturate_irrelevant(surface);
        DimDegree all = hilbert_dim_degree(surface);
        DimDegree away = hilbert_dim_degree(saturate_irrelevant(saturate(surface, IdealHandle(ring, c.equations))));
        auto len = [](const DimDegree& x) { return x.dim < 0 ? 0L : x.degree; };
        lr.surface_rank2_length_off_special = all.dim > 0 ? -1 : len(all) - len(away);
      } else {
        lr.rank2_length_off_special = -1;
        lr.rank2_points_off_special = -1;
        lr.surface_rank2_length_off_special = -1;
      }
    }
    e.line_rank_data.push_back(lr);
  }

  out.label = decide_family(e);
  return out;
}

RamificationSplit ramification_split(const PencilMatrix& m, const Vec& p) {
  if (m.size() != 4 || m.nvars() != 4) throw DomainError("ramification split needs a 4x4 pencil in 4 variables");
  std::size_t c = corank_at(m, p);
  if (c != 2) throw DomainError("ramification split needs a corank-2 point, got corank " + std::to_string(c));
  RamificationSplit out{normalize_rank2_node(m, p, NodeMode::Rank2), {}, {}, {}, {}, {}, {}};
  const PencilMatrix& nm = out.normalization.matrix;
  MultiPoly f = determinant(nm);
  auto parts = split_by_var(f, 0);
  if (parts.size() > 3) throw InternalError("normalized determinant has x0-degree above 2");
  parts.resize(3, MultiPoly(nm.ring()));
  out.f4 = parts[0];
  out.f3 = parts[1];
  out.f2 = parts[2];
  std::vector<Matrix> coeffs = nm.coefficients();
  coeffs[0] = Matrix(nm.field(), 4, 4);
  PencilMatrix m0(nm.ring(), coeffs);
  out.r1 = minor(m0, {1, 2, 3}, {1, 2, 3});
  out.r2 = minor(m0, {0, 2, 3}, {0, 2, 3});
  out.ramification = out.f3 * out.f3 - out.f2 * out.f4 * Scalar::from_int(nm.field(), 4);
  if (out.r1 * out.r2 != out.ramification) throw InternalError("r1 r2 differs from F3^2 - 4 F2 F4");
  return out;
}

ZConicResult z_conic_test(const PencilMatrix& normalized) {
  if (normalized.size() != 4 || normalized.nvars() != 4) throw DomainError("z_conic_test needs a 4x4 pencil in 4 variables");
  const Field& fld = normalized.field();
  Matrix want(fld, 4, 4);
  want(0, 1) = want(1, 0) = Scalar::from_int(fld, 2).inverse();
  if (normalized.coefficient(0) != want) throw DomainError("pencil is not normalized at [1:0:0:0]");
  RingPtr r3 = drop_leading_vars(normalized.ring(), 1);
  std::vector<MultiPoly> subs{MultiPoly(r3)};
  for (std::size_t i = 0; i < 3; ++i) subs.push_back(MultiPoly::variable(r3, i));
  std::vector<std::vector<MultiPoly>> a(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) a[i].push_back(substitute(normalized.entry(i + 1, j), subs));
  auto det3 = [&](std::size_t c0, std::size_t c1, std::size_t c2) {
    return a[0][c0] * (a[1][c1] * a[2][c2] - a[1][c2] * a[2][c1]) -
           a[0][c1] * (a[1][c0] * a[2][c2] - a[1][c2] * a[2][c0]) +
           a[0][c2] * (a[1][c0] * a[2][c1] - a[1][c1] * a[2][c0]);
  };
  std::vector<MultiPoly> minors;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != skip) cols.push_back(j);
    MultiPoly g = det3(cols[0], cols[1], cols[2]);
    if (!g.is_zero()) minors.push_back(g);
  }
  ZConicResult out;
  out.z = IdealHandle(r3, minors);
  IdealHandle sat = saturate_irrelevant(out.z);
  DimDegree dd = hilbert_dim_degree(sat);
  if (dd.dim != 0) throw DomainError("degenerate input: Z is not a finite scheme (dimension " + std::to_string(dd.dim) + ")");
  out.length = dd.degree;
  out.on_conic = hilbert_function(sat, 2) < 6;
  return out;
}

long grassmannian_dim(long k, long n) {
  if (k < 0 || k > n) throw DomainError("need 0 <= k <= n");
  return (k + 1) * (n - k);
}

long schubert_dim(long l, long m, long k, long n) {
  if (l < 0 || l > k || k > n || l > m || m > n) throw DomainError("need 0 <= l <= k <= n and l <= m <= n");
  return (l + 1) * (m - l) + (k - l) * (n - k);
}

}  // namespace qsym
