#include "qsym/construct.hpp"

#include <random>

#include "qsym/error.hpp"

namespace qsym {

namespace {

constexpr std::size_t kSize = 4;

std::vector<std::pair<std::size_t, std::size_t>> sym_slots() {
  std::vector<std::pair<std::size_t, std::size_t>> s;
  for (std::size_t i = 0; i < kSize; ++i)
    for (std::size_t j = i; j < kSize; ++j) s.emplace_back(i, j);
  return s;
}

Matrix sym_from_vec(const Field& f, const Vec& c) {
  Matrix m(f, kSize, kSize);
  auto slots = sym_slots();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    auto [i, j] = slots[k];
    m(i, j) = c[k];
    m(j, i) = c[k];
  }
  return m;
}

/// Symmetric matrices whose slot coordinates satisfy every row.
std::vector<Matrix> sym_subspace(const Field& f, const std::vector<Vec>& rows) {
  std::vector<Matrix> out;
  if (rows.empty()) {
    for (std::size_t k = 0; k < sym_slots().size(); ++k) {
      Vec c(sym_slots().size(), Scalar::zero(f));
      c[k] = Scalar::one(f);
      out.push_back(sym_from_vec(f, c));
    }
    return out;
  }
  for (auto v : Matrix::from_rows(rows).kernel()) {
    if (f.is_rational()) {
      mpz_class l = 1;
      for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rational().get_den_mpz_t());
      for (auto& x : v) x *= Scalar::from_mpz(f, l);
    }
    out.push_back(sym_from_vec(f, v));
  }
  return out;
}

/// Row expressing p^T A q in slot coordinates.
Vec bilinear_row(const Vec& p, const Vec& q) {
  Vec r;
  for (auto [i, j] : sym_slots()) r.push_back(i == j ? p[i] * q[i] : p[i] * q[j] + p[j] * q[i]);
  return r;
}

Matrix random_combination(const Field& f, const std::vector<Matrix>& space, std::mt19937_64& rng, long h) {
  Matrix m(f, kSize, kSize);
  for (const auto& b : space) m = m + b * random_scalar(f, rng, h);
  return m;
}

Vec random_point(const Field& f, std::mt19937_64& rng, long h) {
  for (;;) {
    Vec v;
    for (std::size_t i = 0; i < kSize; ++i) v.push_back(random_scalar(f, rng, h));
    if (!is_zero_vec(v)) return v;
  }
}

Scalar nonzero_scalar(const Field& f, std::mt19937_64& rng, long h) {
  for (;;) {
    Scalar s = random_scalar(f, rng, h);
    if (!s.is_zero()) return s;
  }
}

MultiPoly random_form(const RingPtr& ring, std::mt19937_64& rng, long h, std::size_t first_var) {
  MultiPoly l(ring);
  for (std::size_t i = first_var; i < ring->nvars(); ++i)
    l += MultiPoly::variable(ring, i) * random_scalar(ring->field, rng, h);
  return l;
}

std::size_t rank_of(std::initializer_list<const Vec*> pts) {
  std::vector<Vec> rows;
  for (auto p : pts) rows.push_back(*p);
  return Matrix::from_rows(rows).rank();
}

PencilMatrix from_coefficients(const RingPtr& ring, std::vector<Matrix> a) {
  return PencilMatrix(ring, std::move(a));
}

std::uint64_t derive_seed(std::uint64_t seed, unsigned k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

PencilMatrix family_candidate(FamilyLabel label, std::uint64_t seed, const Field& field, long height) {
  if (height < 5) throw DomainError("height bound must be at least 5");
  RingPtr ring = make_ring(field, kSize);
  std::mt19937_64 rng(derive_seed(seed, 1000));
  long h = height;
  switch (label) {
    case FamilyLabel::TriplePoint: {
      std::vector<std::vector<MultiPoly>> e(kSize, std::vector<MultiPoly>(kSize));
      for (std::size_t i = 0; i < kSize; ++i)
        for (std::size_t j = i; j < kSize; ++j) e[i][j] = e[j][i] = random_form(ring, rng, h, 1);
      e[0][0] += MultiPoly::variable(ring, 0);
      return PencilMatrix::from_entries(ring, e);
    }
    case FamilyLabel::Tacnode: {
      std::vector<std::vector<MultiPoly>> e(kSize, std::vector<MultiPoly>(kSize));
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = i; j < kSize; ++j) e[i][j] = e[j][i] = random_form(ring, rng, h, 1);
      MultiPoly x0 = MultiPoly::variable(ring, 0);
      e[0][0] += x0 * nonzero_scalar(field, rng, h);
      e[1][1] += x0 * nonzero_scalar(field, rng, h);
      MultiPoly l = random_form(ring, rng, h, 1);
      e[2][2] = l * random_scalar(field, rng, h);
      e[2][3] = e[3][2] = l * random_scalar(field, rng, h);
      e[3][3] = l * random_scalar(field, rng, h);
      return PencilMatrix::from_entries(ring, e);
    }
    case FamilyLabel::Rank2Line: {
      Vec p1, p2, p3, p4;
      for (;;) {
        p1 = random_point(field, rng, h);
        p2 = random_point(field, rng, h);
        p3 = random_point(field, rng, h);
        Scalar a = nonzero_scalar(field, rng, h), b = nonzero_scalar(field, rng, h), c = nonzero_scalar(field, rng, h);
        p4.assign(kSize, Scalar::zero(field));
        for (std::size_t i = 0; i < kSize; ++i) p4[i] = p1[i] * a + p2[i] * b + p3[i] * c;
        if (rank_of({&p1, &p2, &p3}) == 3 && rank_of({&p1, &p2, &p4}) == 3 && rank_of({&p1, &p3, &p4}) == 3 &&
            rank_of({&p2, &p3, &p4}) == 3)
          break;
      }
      auto space = sym_subspace(field, {bilinear_row(p1, p1), bilinear_row(p2, p2), bilinear_row(p3, p3),
                                        bilinear_row(p4, p4)});
      std::vector<Matrix> a;
      for (std::size_t k = 0; k < kSize; ++k) a.push_back(random_combination(field, space, rng, h));
      return from_coefficients(ring, a);
    }
    case FamilyLabel::Rank3Line: {
      Vec p = random_point(field, rng, h);
      std::vector<Vec> singular_rows;
      for (std::size_t i = 0; i < kSize; ++i) {
        Vec ei(kSize, Scalar::zero(field));
        ei[i] = Scalar::one(field);
        singular_rows.push_back(bilinear_row(ei, p));
      }
      auto xp = sym_subspace(field, singular_rows);
      auto through = sym_subspace(field, {bilinear_row(p, p)});
      std::vector<Matrix> a{random_combination(field, xp, rng, h), random_combination(field, xp, rng, h),
                            random_combination(field, through, rng, h), random_combination(field, through, rng, h)};
      return from_coefficients(ring, a);
    }
    case FamilyLabel::DoubleConic: {
      auto mono = [&](std::size_t i, std::size_t j) {
        Matrix m(field, kSize, kSize);
        m(i, j) = m(j, i) = Scalar::one(field);
        return m;
      };
      std::vector<Matrix> x12{mono(0, 2), mono(1, 2), mono(0, 3), mono(1, 3)};
      std::vector<Matrix> a{random_combination(field, x12, rng, h), random_combination(field, x12, rng, h),
                            random_combination(field, x12, rng, h),
                            random_combination(field, x12, rng, h) + mono(0, 1) * nonzero_scalar(field, rng, h) +
                                mono(2, 3) * nonzero_scalar(field, rng, h)};
      Matrix t = CoordChange::random(field, kSize, rng, 3).matrix();
      return from_coefficients(ring, a).congruence(t);
    }
    case FamilyLabel::NodalIrrational: {
      auto all = sym_subspace(field, {});
      std::vector<Matrix> a;
      for (std::size_t k = 0; k < kSize; ++k) a.push_back(random_combination(field, all, rng, h));
      return from_coefficients(ring, a);
    }
    default:
      throw DomainError("no generator for label " + to_string(label));
  }
}

bool meets_family_expectation(FamilyLabel label, const Classification& c) {
  if (c.label != label) return false;
  const Evidence& e = c.evidence;
  switch (label) {
    case FamilyLabel::Rank2Line: return e.rank2_isolated == 6;
    case FamilyLabel::Rank3Line:
      return e.isolated_nodes == 4 && e.nodes_reduced && e.line_rank_data.size() == 1 &&
             e.line_rank_data[0].rank2_length == 3;
    case FamilyLabel::DoubleConic: return e.isolated_nodes == 4 && e.nodes_reduced;
    case FamilyLabel::TriplePoint: return e.isolated_nodes == 6 && e.nodes_reduced;
    case FamilyLabel::Tacnode: return e.isolated_nodes == 6 && e.nodes_reduced;
    case FamilyLabel::NodalIrrational: return e.isolated_nodes == 10 && e.nodes_reduced;
    default: return false;
  }
}

GeneratedMember gen_family(FamilyLabel label, std::uint64_t seed, const Field& field, long height) {
  constexpr unsigned kRetries = 8;
  std::string last;
  for (unsigned k = 0; k <= kRetries; ++k) {
    std::uint64_t s = k == 0 ? seed : derive_seed(seed, k);
    PencilMatrix m = family_candidate(label, s, field, height);
    ClassifyOptions opts;
    opts.seed = s;
    Classification c = classify_family(m, opts);
    if (meets_family_expectation(label, c)) return {m, c, k, s};
    last = to_string(c.label) + (c.evidence.reason.empty() ? "" : " (" + c.evidence.reason + ")");
  }
  throw GenericityError("no generic " + to_string(label) + " member after " + std::to_string(kRetries) +
                        " retries; last draw classified as " + last);
}

// ----- catalog ----------------------------------------------------------------------

namespace {

PencilMatrix build(const std::vector<std::string>& vars, const std::vector<std::vector<std::string>>& rows) {
  return PencilMatrix::from_strings(make_ring(Field::rational(), vars), rows);
}

const std::vector<std::string> kX{"x0", "x1", "x2", "x3"};

}  // namespace

std::vector<std::string> catalog_ids() {
  return {"quadrics-through-line", "quadrics-through-conic", "quadrics-through-twisted-cubic", "ex-2.2",
          "ex-8.5-a", "ex-8.5-b", "proof-8.3-M", "ex-9.1", "plucker", "ex-conic", "ex-triple", "ex-tacnode",
          "steiner", "ex-conic-line"};
}

CatalogEntry paper_catalog(const std::string& id) {
  CatalogEntry c;
  c.id = id;
  auto& x = c.expect;
  if (id == "quadrics-through-line") {
    c.topic = "quadrics containing a line";
    c.matrix = build({"x02", "x03", "x12", "x13", "x22", "x23", "x33"},
                     {{"0", "0", "x02", "x03"}, {"0", "0", "x12", "x13"}, {"x02", "x12", "x22", "x23"},
                      {"x03", "x13", "x23", "x33"}});
    x.determinant = "(x02*x13 - x03*x12)^2";
  } else if (id == "quadrics-through-conic") {
    c.topic = "quadrics containing a conic";
    c.matrix = build({"x00", "x01", "x02", "x03", "x22"},
                     {{"x00", "x01", "x02", "x03"}, {"x01", "x22", "0", "0"}, {"x02", "0", "x22", "0"},
                      {"x03", "0", "0", "x22"}});
    x.determinant = "(x00*x22 - x01^2 - x02^2 - x03^2)*x22^2";
  } else if (id == "quadrics-through-twisted-cubic") {
    c.topic = "quadrics containing a twisted cubic";
    c.matrix = build({"x02", "x03", "x13"},
                     {{"0", "0", "x02", "x03"}, {"0", "-2*x02", "-x03", "x13"}, {"x02", "-x03", "-2*x13", "0"},
                      {"x03", "x13", "0", "0"}});
    x.determinant = "(x02*x13 - x03^2)^2";
  } else if (id == "ex-2.2") {
    c.topic = "four coplanar base points and a rank-2 line";
    c.matrix = build(kX, {{"0", "x0+x1-x2-x3", "-2*x1-x2+x3", "x3"},
                          {"x0+x1-x2-x3", "0", "x0-x1-2*x2", "x0"},
                          {"-2*x1-x2+x3", "x0-x1-2*x2", "0", "x1"},
                          {"x3", "x0", "x1", "x2"}});
    x.label = FamilyLabel::Rank2Line;
    x.curves = {{CurveKind::Line, 2}};
    x.rank2_isolated = 6;
    x.rank2_residual_points = 6;
    x.web_base = DimDegree{0, 4};
    x.web_base_points = 4;
  } else if (id == "ex-8.5-a" || id == "ex-8.5-b") {
    c.topic = "two representations of one surface with two double lines";
    if (id == "ex-8.5-a")
      c.matrix = build(kX, {{"0", "x0", "4*x1", "2*x2"},
                            {"x0", "4*x3", "2*x1-2*x3", "0"},
                            {"4*x1", "2*x1-2*x3", "-4*x1", "-x2"},
                            {"2*x2", "0", "-x2", "x3"}});
    else
      c.matrix = build(kX, {{"0", "x0-8*x3", "4*x3", "2*x2"},
                            {"x0-8*x3", "4*x1+8*x3", "-2*x1-6*x3", "-2*x2"},
                            {"4*x3", "-2*x1-6*x3", "4*x3", "x2"},
                            {"2*x2", "-2*x2", "x2", "-x1"}});
    x.label = FamilyLabel::TwoLines;
    x.curves = {{CurveKind::Line, 1}, {CurveKind::Line, 2}};
    x.isolated_nodes = 4;
    x.rank2_isolated = 2;
  } else if (id == "proof-8.3-M") {
    c.topic = "two corank-2 lines";
    c.matrix = build({"x00", "x02", "x13", "x23"},
                     {{"x00", "0", "x02", "0"}, {"0", "-x00", "0", "x13"}, {"x02", "0", "x00", "x23"},
                      {"0", "x13", "x23", "-x00"}});
    x.label = FamilyLabel::TwoLines;
    x.curves = {{CurveKind::Line, 2}, {CurveKind::Line, 2}};
    x.rank2_isolated = 4;
  } else if (id == "ex-9.1") {
    c.topic = "rank-3 double line";
    c.matrix = build(kX, {{"0", "x0+x1", "x0+x1", "x0+x2+x3"},
                          {"x0+x1", "x3", "0", "x0"},
                          {"x0+x1", "0", "x1", "x2"},
                          {"x0+x2+x3", "x0", "x2", "x2"}});
    x.label = FamilyLabel::Rank3Line;
    x.curves = {{CurveKind::Line, 1}};
    x.isolated_nodes = 4;
    x.rank3_line_rank2_length = 3;
    x.rank3_line_rank2_points_off = 3;
  } else if (id == "plucker") {
    c.topic = "Pluecker surface";
    c.matrix = build(kX, {{"0", "x0-x1+x2", "x0-x1+x3", "x0"},
                          {"x0-x1+x2", "0", "x3", "x1"},
                          {"x0-x1+x3", "x3", "0", "x2"},
                          {"x0", "x1", "x2", "0"}});
    x.label = FamilyLabel::Rank2Line;
    x.curves = {{CurveKind::Line, 2}};
    x.isolated_nodes = 8;
    x.rank2_isolated = 6;
  } else if (id == "ex-conic") {
    c.topic = "double conic";
    c.matrix = build(kX, {{"0", "x0", "x1", "x0+x2"},
                          {"x0", "0", "x1+x2+x3", "x3"},
                          {"x1", "x1+x2+x3", "0", "x0"},
                          {"x0+x2", "x3", "x0", "0"}});
    x.label = FamilyLabel::DoubleConic;
    x.curves = {{CurveKind::Conic, 2}};
    x.isolated_nodes = 4;
    x.rank2_isolated = 4;
  } else if (id == "ex-triple") {
    c.topic = "triple point";
    c.matrix = build(kX, {{"x0", "x1", "x2", "0"}, {"x1", "x3", "0", "x2"}, {"x2", "0", "x3", "x1"}, {"0", "x2", "x1", "x3"}});
    x.label = FamilyLabel::TriplePoint;
    x.isolated_nodes = 6;
    x.special_point = ExpectedPoint{PointLabel::TriplePoint, 3, 3, false};
  } else if (id == "ex-tacnode") {
    c.topic = "tacnode";
    c.matrix = build(kX, {{"x0+x1", "x2", "x3", "x1"}, {"x2", "-x0+x1", "x2", "x2"}, {"x3", "x2", "x1", "0"}, {"x1", "x2", "0", "x1"}});
    x.label = FamilyLabel::Tacnode;
    x.isolated_nodes = 6;
    x.special_point = ExpectedPoint{PointLabel::TacnodeCandidate, 2, 2, true};
  } else if (id == "steiner") {
    c.topic = "Steiner surface";
    c.matrix = build(kX, {{"0", "x0", "x1", "x0"},
                          {"x0", "0", "-2*x2", "4*x0+2*x2"},
                          {"x1", "-2*x2", "0", "2*x1"},
                          {"x0", "4*x0+2*x2", "2*x1", "6*x0+2*x1+2*x2-x3"}});
    x.label = FamilyLabel::OtherOrDegenerate;
    x.determinant = "4*(x0*x1*x2*x3 + x0^2*x1^2 + x0^2*x2^2 + x1^2*x2^2)";
    x.curves = {{CurveKind::Line, 1}, {CurveKind::Line, 1}, {CurveKind::Line, 1}};
    x.isolated_nodes = 0;
    x.rank3_line_rank2_points_off = 1;
    x.rank3_line_surface_length_off = 2;
    x.special_point = ExpectedPoint{PointLabel::TriplePoint, 3, 3, false};
  } else if (id == "ex-conic-line") {
    c.topic = "double conic and double line";
    c.matrix = build(kX, {{"0", "x0", "x1", "x0"},
                          {"x0", "0", "2*x2-x3", "x2"},
                          {"x1", "2*x2-x3", "0", "x0"},
                          {"x0", "x2", "x0", "x3"}});
    x.label = FamilyLabel::OtherOrDegenerate;
    x.curves = {{CurveKind::Line, 1}, {CurveKind::Conic, 2}};
    x.rank2_residual_points = 1;
    x.web_base = DimDegree{0, 4};
    x.web_base_points = 3;
  } else {
    throw DomainError("unknown catalog id '" + id + "'");
  }
  return c;
}

}  // namespace qsym
