#include <gtest/gtest.h>

#include "properties.hpp"
#include "qsym/classify.hpp"
#include "qsym/construct.hpp"
#include "qsym/error.hpp"
#include "qsym/fflab.hpp"

using namespace qsym;
namespace props = qsym::testing;

namespace {

MultiPoly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }
Vec pt(std::vector<long> v, const Field& f = Field::rational()) { return ints_to_vec(f, v); }

bool same_report(const SingularPointReport& a, const SingularPointReport& b) {
  return a.multiplicity == b.multiplicity && a.corank == b.corank && a.tangent_cone_rank == b.tangent_cone_rank &&
         a.tangent_cone_square == b.tangent_cone_square && a.label == b.label;
}

// Substitute a parametrization of the span of a and b.
MultiPoly on_line(const MultiPoly& f, const Vec& a, const Vec& b) {
  RingPtr st = make_ring(f.field(), std::vector<std::string>{"s", "t"});
  std::vector<MultiPoly> par;
  for (std::size_t i = 0; i < a.size(); ++i)
    par.push_back(MultiPoly::variable(st, 0) * a[i] + MultiPoly::variable(st, 1) * b[i]);
  return substitute(f, par);
}

}  // namespace

TEST(PointReport, TacnodeOfExampleTacnode) {
  CatalogEntry e = paper_catalog("ex-tacnode");
  SingularPointReport r = point_report(determinant(e.matrix), &e.matrix, pt({1, 0, 0, 0}));
  EXPECT_EQ(r.multiplicity, 2);
  EXPECT_EQ(r.tangent_cone_rank, 1);
  EXPECT_TRUE(r.tangent_cone_square);
  ASSERT_TRUE(r.corank.has_value());
  EXPECT_EQ(*r.corank, 2u);
  EXPECT_EQ(r.label, PointLabel::TacnodeCandidate);
}

TEST(PointReport, TriplePointOfExampleTriple) {
  CatalogEntry e = paper_catalog("ex-triple");
  SingularPointReport r = point_report(determinant(e.matrix), &e.matrix, pt({1, 0, 0, 0}));
  EXPECT_EQ(r.multiplicity, 3);
  EXPECT_EQ(r.label, PointLabel::TriplePoint);
  EXPECT_EQ(*r.corank, 3u);
}

TEST(PointReport, FermatQuarticSmoothPoints) {
  Field f = Field::prime(13);
  RingPtr r = make_ring(f, 4);
  MultiPoly F = P("x0^4 + x1^4 + x2^4 + x3^4", r);
  int seen = 0;
  for (std::uint64_t i = 0; i < projective_point_count(13, 4) && seen < 40; ++i) {
    Vec p = projective_point(f, 4, i);
    if (!evaluate(F, p).is_zero()) continue;
    ++seen;
    SingularPointReport rep = point_report(F, nullptr, p);
    EXPECT_EQ(rep.multiplicity, 1);
    EXPECT_EQ(rep.label, PointLabel::Smooth);
    EXPECT_FALSE(rep.corank.has_value());
  }
  EXPECT_GT(seen, 0);
}

TEST(PointReport, NodeHasFullRankTangentCone) {
  CatalogEntry e = paper_catalog("ex-2.2");
  SingularPointReport r = point_report(determinant(e.matrix), &e.matrix, pt({1, 0, 0, 0}));
  EXPECT_EQ(r.multiplicity, 2);
  EXPECT_EQ(r.tangent_cone_rank, 3);
  EXPECT_EQ(r.label, PointLabel::Node);
}

TEST(PointReport, OffSurfaceRejected) {
  CatalogEntry e = paper_catalog("ex-2.2");
  EXPECT_THROW(point_report(determinant(e.matrix), &e.matrix, pt({1, 1, 1, 7})), DomainError);
}

TEST(PointReport, InvariantUnderCoordinatesCongruenceAndScaling) {
  std::mt19937_64 rng(51);
  struct Case {
    const char* id;
    std::vector<long> p;
  };
  std::vector<Case> cases{{"ex-tacnode", {1, 0, 0, 0}}, {"ex-triple", {1, 0, 0, 0}}, {"ex-2.2", {1, 0, 0, 0}},
                          {"plucker", {0, 1, 1, 1}}, {"steiner", {0, 0, 0, 1}}, {"ex-triple", {0, 1, 1, 0}}};
  Field q = Field::rational();
  for (const auto& c : cases) {
    CatalogEntry e = paper_catalog(c.id);
    MultiPoly F = determinant(e.matrix);
    Vec p = pt(c.p);
    SingularPointReport base = point_report(F, &e.matrix, p);
    for (int k = 0; k < 5; ++k) {
      CoordChange s = CoordChange::random(q, 4, rng, 3);
      PencilMatrix ms = e.matrix.substitute(s);
      Vec ps = s.inverse().matrix() * p;
      EXPECT_TRUE(same_report(base, point_report(determinant(ms), &ms, ps))) << c.id;
      Matrix t = CoordChange::random(q, 4, rng, 3).matrix();
      PencilMatrix mt = e.matrix.congruence(t);
      EXPECT_TRUE(same_report(base, point_report(determinant(mt), &mt, p))) << c.id;
      Scalar lam = Scalar::from_int(q, 2 + k);
      Vec lp;
      for (const auto& x : p) lp.push_back(lam * x);
      EXPECT_TRUE(same_report(base, point_report(F * Scalar::from_int(q, -3 - k), &e.matrix, lp))) << c.id;
    }
  }
}

TEST(SingularCurves, PluckerDoubleLineIsInTheRankTwoLocus) {
  CatalogEntry e = paper_catalog("plucker");
  MultiPoly F = determinant(e.matrix);
  CurveSearch s = find_singular_curves(F, &e.matrix, {});
  ASSERT_EQ(s.curves.size(), 1u);
  const SingularCurve& c = s.curves[0];
  EXPECT_EQ(c.kind, CurveKind::Line);
  EXPECT_EQ(c.generic_corank, 2u);
  IdealHandle expect(F.ring(), {P("x0 - x1", F.ring()), P("x2", F.ring())});
  EXPECT_TRUE(same_ideal(IdealHandle(F.ring(), c.equations), expect));
  IdealHandle r2 = rank_locus_ideal(e.matrix, 2);
  for (const auto& g : r2.generators()) EXPECT_TRUE(radical_membership(g, expect));
}

TEST(SingularCurves, SmoothConicOfExampleConic) {
  CatalogEntry e = paper_catalog("ex-conic");
  MultiPoly F = determinant(e.matrix);
  CurveSearch s = find_singular_curves(F, &e.matrix, {});
  ASSERT_EQ(s.curves.size(), 1u);
  EXPECT_EQ(s.curves[0].kind, CurveKind::Conic);
  EXPECT_EQ(s.curves[0].generic_corank, 2u);
  EXPECT_EQ(s.unexplained_degree, 0);
}

TEST(SingularCurves, GenericNodalMemberHasNone) {
  GeneratedMember g = gen_family(FamilyLabel::NodalIrrational, 2);
  CurveSearch s = find_singular_curves(determinant(g.matrix), &g.matrix, {});
  EXPECT_TRUE(s.curves.empty());
  EXPECT_TRUE(s.modular_findings.empty());
}

TEST(SingularCurves, LinesParametrizeIntoTheSingularLocus) {
  for (const auto& id : {"plucker", "ex-9.1", "steiner", "proof-8.3-M", "ex-conic-line", "ex-2.2"}) {
    CatalogEntry e = paper_catalog(id);
    MultiPoly F = determinant(e.matrix);
    CurveSearch s = find_singular_curves(F, &e.matrix, {});
    EXPECT_FALSE(s.curves.empty()) << id;
    for (const auto& c : s.curves) {
      if (c.kind != CurveKind::Line || !c.span) continue;
      auto [a, b] = *c.span;
      EXPECT_TRUE(on_line(F, a, b).is_zero()) << id;
      for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(on_line(partial_derivative(F, k), a, b).is_zero()) << id;
      for (const auto& eq : c.equations) EXPECT_TRUE(evaluate(eq, a).is_zero() && evaluate(eq, b).is_zero());
    }
  }
}

TEST(Classify, ExampleNineOneIsRankThreeLine) {
  Classification c = classify_family(paper_catalog("ex-9.1").matrix);
  EXPECT_EQ(c.label, FamilyLabel::Rank3Line);
  EXPECT_EQ(c.evidence.isolated_nodes, 4);
  ASSERT_EQ(c.evidence.curves.size(), 1u);
  EXPECT_EQ(c.evidence.curves[0].generic_corank, 1u);
  ASSERT_EQ(c.evidence.line_rank_data.size(), 1u);
  EXPECT_EQ(c.evidence.line_rank_data[0].rank2_length, 3);
}

TEST(Classify, ExampleTwoTwoIsRankTwoLine) {
  Classification c = classify_family(paper_catalog("ex-2.2").matrix);
  EXPECT_EQ(c.label, FamilyLabel::Rank2Line);
  EXPECT_EQ(c.evidence.rank2_isolated, 6);
  EXPECT_EQ(c.evidence.isolated_nodes, 6);
  EXPECT_EQ(decide_family(c.evidence), c.label);
}

TEST(Classify, ConicPlusLineIsOther) {
  Classification c = classify_family(paper_catalog("ex-conic-line").matrix);
  EXPECT_EQ(c.label, FamilyLabel::OtherOrDegenerate);
  bool line = false, conic = false;
  for (const auto& k : c.evidence.curves) {
    line = line || k.kind == CurveKind::Line;
    conic = conic || k.kind == CurveKind::Conic;
  }
  EXPECT_TRUE(line);
  EXPECT_TRUE(conic);
}

TEST(Classify, ReducibleInputIsOther) {
  RingPtr r = make_ring(Field::rational(), 4);
  PencilMatrix m = PencilMatrix::from_strings(r, {{"x0", "x1", "0", "0"}, {"x1", "x2", "0", "0"}, {"0", "0", "x0", "x3"}, {"0", "0", "x3", "x1"}});
  Classification c = classify_family(m);
  EXPECT_EQ(c.label, FamilyLabel::OtherOrDegenerate);
  EXPECT_FALSE(c.evidence.irreducible);
}

TEST(Classify, LabelSurvivesCoordinateChangeAndCongruence) {
  std::mt19937_64 rng(52);
  CatalogEntry e = paper_catalog("ex-triple");
  Classification base = classify_family(e.matrix);
  CoordChange s = CoordChange::random(Field::rational(), 4, rng, 2);
  Matrix t = CoordChange::random(Field::rational(), 4, rng, 2).matrix();
  Classification moved = classify_family(e.matrix.substitute(s).congruence(t));
  EXPECT_EQ(moved.label, base.label);
  EXPECT_EQ(moved.evidence.isolated_nodes, base.evidence.isolated_nodes);
  EXPECT_EQ(moved.evidence.rank2_isolated, base.evidence.rank2_isolated);
}

TEST(Ramification, ExampleTwoTwoNode) {
  CatalogEntry e = paper_catalog("ex-2.2");
  RamificationSplit s = ramification_split(e.matrix, pt({1, 0, 0, 0}));
  EXPECT_EQ(s.r1.total_degree(), 3);
  EXPECT_EQ(s.r2.total_degree(), 3);
  EXPECT_EQ(s.r1 * s.r2, s.f3 * s.f3 - s.f2 * s.f4 * Scalar::from_int(Field::rational(), 4));
  EXPECT_EQ(s.ramification.total_degree(), 6);
  for (const auto& g : {s.r1, s.r2, s.f2, s.f3, s.f4}) EXPECT_EQ(g.degree_in(0), 0);
}

TEST(Ramification, PluckerRationalNodes) {
  CatalogEntry e = paper_catalog("plucker");
  for (const auto& p : {pt({1, 0, 0, 0}), pt({0, 1, 0, 1})}) {
    RamificationSplit s = ramification_split(e.matrix, p);
    // recompute the x0 split of the normalized determinant term by term
    MultiPoly f = determinant(s.normalization.matrix);
    RingPtr r = f.ring();
    std::vector<MultiPoly> parts(3, MultiPoly(r));
    for (const auto& [m, c] : f.terms()) {
      ASSERT_LE(m[0], 2u);
      Monomial rest = m;
      rest.set(0, 0);
      parts[2 - m[0]] += MultiPoly::monomial(r, rest, c);
    }
    MultiPoly direct = parts[1] * parts[1] - parts[0] * parts[2] * Scalar::from_int(Field::rational(), 4);
    EXPECT_EQ(s.ramification, direct);
    EXPECT_EQ(s.r1 * s.r2, direct);
  }
}

TEST(Ramification, CorankOneRejected) {
  CatalogEntry e = paper_catalog("plucker");
  EXPECT_THROW(ramification_split(e.matrix, pt({0, 1, 1, 1})), DomainError);
}

TEST(ZConic, ExampleTwoTwoNode) {
  CatalogEntry e = paper_catalog("ex-2.2");
  NodeNormalization n = normalize_rank2_node(e.matrix, pt({1, 0, 0, 0}));
  ZConicResult z = z_conic_test(n.matrix);
  EXPECT_EQ(z.length, 6);
  EXPECT_FALSE(z.on_conic);
}

TEST(ZConic, ReducibleDoubleQuadricIsDegenerate) {
  // det = (x0 x2 - x1^2)^2; over GF(5) the form y0^2 + y2^2 at e0 splits
  Field f = Field::prime(5);
  RingPtr r = make_ring(f, 4);
  PencilMatrix m = PencilMatrix::from_strings(r, {{"x0", "x1", "0", "0"}, {"x1", "x2", "0", "0"}, {"0", "0", "x0", "x1"}, {"0", "0", "x1", "x2"}});
  Vec e0 = pt({1, 0, 0, 0}, f);
  ASSERT_EQ(corank_at(m, e0), 2u);
  NodeNormalization n = normalize_rank2_node(m, e0);
  try {
    z_conic_test(n.matrix);
    ADD_FAILURE() << "no error";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate"), std::string::npos) << e.what();
  }
  EXPECT_THROW(z_conic_test(m), DomainError);
}

TEST(Dimensions, Formulas) {
  EXPECT_EQ(grassmannian_dim(3, 9), 24);
  EXPECT_EQ(grassmannian_dim(3, 5), 8);
  EXPECT_EQ(schubert_dim(1, 5, 3, 8), 18);
  EXPECT_EQ(schubert_dim(0, 2, 3, 7), 14);
  EXPECT_EQ(schubert_dim(2, 3, 3, 7), 7);
  EXPECT_EQ(schubert_dim(3, 8, 3, 8), grassmannian_dim(3, 8));
  EXPECT_THROW(grassmannian_dim(4, 3), DomainError);
  EXPECT_THROW(schubert_dim(2, 1, 3, 8), DomainError);
  EXPECT_THROW(schubert_dim(-1, 5, 3, 8), DomainError);
}
