#include <gtest/gtest.h>

#include "properties.hpp"
#include "qsym/classify.hpp"
#include "qsym/construct.hpp"
#include "qsym/error.hpp"
#include "qsym/fflab.hpp"
#include "qsym/zerodim.hpp"

using namespace qsym;
namespace props = qsym::testing;

namespace {

MultiPoly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }
Vec pt(std::vector<long> v, const Field& f = Field::rational()) { return ints_to_vec(f, v); }

PencilMatrix diagonal_pencil(const Field& f) {
  RingPtr r = make_ring(f, 4);
  return PencilMatrix::from_strings(r, {{"x0", "0", "0", "0"}, {"0", "x1", "0", "0"}, {"0", "0", "x2", "0"}, {"0", "0", "0", "x3"}});
}

}  // namespace

TEST(Determinant, QuadricsThroughLine) {
  CatalogEntry e = paper_catalog("quadrics-through-line");
  EXPECT_EQ(determinant(e.matrix), P("(x02*x13 - x03*x12)^2", e.matrix.ring()));
}

TEST(Determinant, QuadricsThroughConic) {
  CatalogEntry e = paper_catalog("quadrics-through-conic");
  EXPECT_EQ(determinant(e.matrix), P("(x00*x22 - x01^2 - x02^2 - x03^2)*x22^2", e.matrix.ring()));
}

TEST(Determinant, QuadricsThroughTwistedCubic) {
  CatalogEntry e = paper_catalog("quadrics-through-twisted-cubic");
  MultiPoly f = determinant(e.matrix);
  EXPECT_EQ(f, P("(x02*x13 - x03^2)^2", e.matrix.ring()));
  auto s = poly_sqrt(f);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->root * s->root, f * s->scale);
}

TEST(Determinant, Steiner) {
  CatalogEntry e = paper_catalog("steiner");
  EXPECT_EQ(determinant(e.matrix), P("4*(x0*x1*x2*x3 + x0^2*x1^2 + x0^2*x2^2 + x1^2*x2^2)", e.matrix.ring()));
}

TEST(Determinant, AgreesWithPointwiseDeterminant) {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 100; ++c) {
    Field f = c % 2 ? Field::prime(101) : Field::rational();
    RingPtr r = make_ring(f, 4);
    PencilMatrix m = props::random_pencil(r, 2 + c % 4, rng, 5);
    MultiPoly d = determinant(m);
    EXPECT_TRUE(d.is_zero() || (d.is_homogeneous() && d.total_degree() == static_cast<int>(m.size())));
    Vec p = props::random_vec(f, 4, rng, 6);
    EXPECT_EQ(evaluate(d, p), m.evaluate(p).det());
  }
}

TEST(RankLocus, ExampleTwoTwoLinePlusSixPoints) {
  CatalogEntry e = paper_catalog("ex-2.2");
  IdealHandle r2 = rank_locus_ideal(e.matrix, 2);
  EXPECT_EQ(hilbert_dim_degree(saturate_irrelevant(r2)).dim, 1);
  IdealHandle line(e.matrix.ring(), {P("x0 - x1 - 2*x2", e.matrix.ring()), P("x0 + 3*x1 - 2*x3", e.matrix.ring())});
  for (const auto& g : r2.generators()) EXPECT_TRUE(radical_membership(g, line));
  EXPECT_EQ(hilbert_dim_degree(saturate_irrelevant(saturate(r2, line))), (DimDegree{0, 6}));
}

TEST(RankLocus, OutOfRangeRejected) {
  CatalogEntry e = paper_catalog("ex-2.2");
  EXPECT_THROW(rank_locus_ideal(e.matrix, 0), DomainError);
  EXPECT_THROW(rank_locus_ideal(e.matrix, 4), DomainError);
}

TEST(RankLocus, TopRankIsThePrincipalDeterminant) {
  CatalogEntry e = paper_catalog("quadrics-through-twisted-cubic");
  IdealHandle i = rank_locus_ideal(e.matrix, 3);
  ASSERT_EQ(i.generators().size(), 1u);
  EXPECT_EQ(i.generators()[0], P("(x02*x13 - x03^2)^2", e.matrix.ring()));
}

TEST(RankLocus, NestedAsRadicals) {
  std::mt19937_64 rng(8);
  std::vector<PencilMatrix> ms;
  for (const auto& id : {"ex-2.2", "plucker", "ex-triple", "steiner", "ex-9.1"}) ms.push_back(paper_catalog(id).matrix);
  for (int i = 0; i < 3; ++i) ms.push_back(props::random_pencil(make_ring(Field::prime(101), 4), 4, rng, 0));
  for (const auto& m : ms) {
    for (std::size_t k = 2; k < 4; ++k) {
      IdealHandle bigger = rank_locus_ideal(m, k);
      IdealHandle smaller = rank_locus_ideal(m, k - 1);
      for (const auto& g : bigger.generators()) EXPECT_TRUE(radical_membership(g, smaller)) << format_pencil(m);
    }
  }
}

TEST(Jacobian, Examples) {
  RingPtr r = make_ring(Field::rational(), 4);
  EXPECT_TRUE(same_ideal(jacobian_ideal(P("x0^2", r)), IdealHandle(r, {P("x0", r)})));
  MultiPoly f = determinant(paper_catalog("plucker").matrix);
  IdealHandle line(f.ring(), {P("x0 - x1", f.ring()), P("x2", f.ring())});
  IdealHandle j = jacobian_ideal(f);
  EXPECT_EQ(hilbert_dim_degree(j).dim, 1);
  for (const auto& g : j.generators()) EXPECT_TRUE(radical_membership(g, line));
  EXPECT_EQ(hilbert_dim_degree(saturate_irrelevant(saturate(j, line))), (DimDegree{0, 8}));
}

TEST(Corank, Examples) {
  EXPECT_EQ(corank_at(paper_catalog("ex-2.2").matrix, pt({1, 0, 0, 0})), 2u);
  EXPECT_EQ(corank_at(paper_catalog("ex-triple").matrix, pt({1, 0, 0, 0})), 3u);
  PencilMatrix s = paper_catalog("steiner").matrix;
  Vec triple = pt({0, 0, 0, 1});
  EXPECT_EQ(evaluate(determinant(s), triple), Scalar());
  EXPECT_EQ(s.evaluate(triple).rank(), 1u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(evaluate(partial_derivative(determinant(s), k), triple).is_zero());
  EXPECT_THROW(corank_at(s, pt({1, 0, 0, 0}, Field::prime(7))), FieldMismatch);
}

TEST(Corank, ExampleTwoTwoQuadricAtE0Factors) {
  PencilMatrix m = paper_catalog("ex-2.2").matrix;
  RingPtr y = web_ring(m);
  Matrix a = m.evaluate(pt({1, 0, 0, 0}));
  MultiPoly q(y);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      q += MultiPoly::monomial(y, Monomial::var(i) * Monomial::var(j), a(i, j));
  MultiPoly target = P("y1*(y0 + y2 + y3)", y);
  EXPECT_TRUE(q == target || q == target * Scalar::from_int(Field::rational(), 2) ||
              q == target * Scalar::from_int(Field::rational(), -2) || q == -target);
}

TEST(Corank, PositiveExactlyOnTheSurface) {
  std::mt19937_64 rng(12);
  for (int c = 0; c < 300; ++c) {
    Field f = Field::prime(c % 2 ? 7 : 11);
    PencilMatrix m = props::random_pencil(make_ring(f, 4), 4, rng, 0);
    MultiPoly d = determinant(m);
    std::uint64_t n = projective_point_count(f.size(), 4);
    Vec p = projective_point(f, 4, rng() % n);
    EXPECT_EQ(corank_at(m, p) >= 1, evaluate(d, p).is_zero());
  }
}

TEST(WebBase, Examples) {
  CatalogEntry e = paper_catalog("ex-2.2");
  IdealHandle base = saturate_irrelevant(web_base_locus_ideal(e.matrix));
  EXPECT_EQ(hilbert_dim_degree(base), (DimDegree{0, 4}));
  ZeroDimScheme z(base);
  EXPECT_EQ(z.point_count(), 4);
  EXPECT_EQ(z.rational_points().size(), 4u);
  std::vector<Vec> listed{pt({1, 0, 0, 0}), pt({0, 1, 0, 0}), pt({0, 0, 1, 0}), pt({-1, 1, 1, 0})};
  IdealHandle web = web_base_locus_ideal(e.matrix);
  for (const auto& p : listed)
    for (const auto& q : web.generators()) EXPECT_TRUE(evaluate(q, p).is_zero());
  Matrix span = Matrix::from_rows(listed);
  EXPECT_EQ(span.rank(), 3u);

  IdealHandle tac = saturate_irrelevant(web_base_locus_ideal(paper_catalog("ex-tacnode").matrix));
  EXPECT_EQ(hilbert_dim_degree(tac), (DimDegree{0, 2}));

  IdealHandle cl = saturate_irrelevant(web_base_locus_ideal(paper_catalog("ex-conic-line").matrix));
  EXPECT_EQ(hilbert_dim_degree(cl), (DimDegree{0, 4}));
  EXPECT_EQ(ZeroDimScheme(cl).point_count(), 3);
}

TEST(WebBase, SingularPointOfACorankOneQuadricIsABasePoint) {
  std::vector<std::pair<std::string, Vec>> cases;
  for (const auto& id : {"plucker", "ex-9.1", "ex-triple", "ex-conic-line", "steiner"}) {
    CatalogEntry e = paper_catalog(id);
    MultiPoly f = determinant(e.matrix);
    for (const auto& p : harvest_singular_points(f, Field::prime(11))) {
      PencilMatrix m11 = e.matrix.to_field(Field::prime(11));
      if (corank_at(m11, p) != 1) continue;
      std::vector<Vec> ker = m11.evaluate(p).kernel();
      ASSERT_EQ(ker.size(), 1u);
      IdealHandle web = web_base_locus_ideal(m11);
      for (const auto& q : web.generators())
        EXPECT_TRUE(evaluate(q, ker[0]).is_zero()) << id << " at " << vec_to_string(p);
      cases.emplace_back(id, p);
    }
  }
  EXPECT_GT(cases.size(), 10u);
}

TEST(PolySqrt, Examples) {
  CatalogEntry e = paper_catalog("quadrics-through-line");
  auto s = poly_sqrt(determinant(e.matrix));
  ASSERT_TRUE(s.has_value());
  MultiPoly g = P("x02*x13 - x03*x12", e.matrix.ring());
  EXPECT_TRUE(s->root == g || s->root == -g);
  EXPECT_EQ(s->root * s->root, determinant(e.matrix) * s->scale);

  RingPtr r = make_ring(Field::rational(), 4);
  EXPECT_FALSE(poly_sqrt(P("x0^2 + x1^2", r)).has_value());
  EXPECT_THROW(poly_sqrt(P("x0^3", r)), DomainError);

  auto c = poly_sqrt(P("-3*(x1 - 2*x2)^2", r));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->root * c->root, P("-3*(x1 - 2*x2)^2", r) * c->scale);
}

TEST(PolySqrt, TacnodeTangentConeIsADoublePlane) {
  MultiPoly f = determinant(paper_catalog("ex-tacnode").matrix);
  LocalExpansion le = local_expansion(f, pt({1, 0, 0, 0}));
  ASSERT_EQ(le.multiplicity(), 2);
  MultiPoly cone = le.parts[2];
  ASSERT_EQ(cone.total_degree(), 2);
  auto s = poly_sqrt(cone);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->root.total_degree(), 1);
}

TEST(PolySqrt, RandomSquaresRecovered) {
  std::mt19937_64 rng(14);
  for (int c = 0; c < 200; ++c) {
    Field f = c % 2 ? Field::prime(101) : Field::rational();
    RingPtr r = make_ring(f, 4);
    MultiPoly g = props::random_form(r, rng, 1 + c % 3, 4, 7);
    auto s = poly_sqrt(g * g);
    ASSERT_TRUE(s.has_value()) << g;
    EXPECT_EQ(s->root * s->root, g * g * s->scale);
  }
}

TEST(Normalize, ExampleTwoTwoAtE0) {
  CatalogEntry e = paper_catalog("ex-2.2");
  Vec p = pt({1, 0, 0, 0});
  NodeNormalization n = normalize_rank2_node(e.matrix, p);
  Matrix a0 = n.matrix.coefficient(0);
  Scalar half = Scalar::from_mpq(Field::rational(), mpq_class(1, 2));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(a0(i, j), (i + j == 1) ? half : Scalar()) << i << "," << j;
  EXPECT_EQ(normalize_point(n.x_change.matrix().col(0)), p);
  Scalar dt = n.y_change.det();
  EXPECT_EQ(determinant(n.matrix), apply_coord_change(determinant(e.matrix), n.x_change) * (dt * dt));
}

TEST(Normalize, SumOfSquaresNeedsSquareRootOfMinusOne) {
  auto pencil = [](const Field& f) {
    RingPtr r = make_ring(f, 4);
    return PencilMatrix::from_strings(r, {{"x0", "x2", "x3", "x1"}, {"x2", "x0", "x1", "x3"}, {"x3", "x1", "x1+x2", "x2"}, {"x1", "x3", "x2", "x3"}});
  };
  // A(e0) = diag(1, 1, 0, 0): the form y0^2 + y1^2
  PencilMatrix q = pencil(Field::rational());
  ASSERT_EQ(corank_at(q, pt({1, 0, 0, 0})), 2u);
  EXPECT_THROW(normalize_rank2_node(q, pt({1, 0, 0, 0})), NormalizationError);
  Field g5 = Field::prime(5);
  PencilMatrix q5 = pencil(g5);
  NodeNormalization n = normalize_rank2_node(q5, pt({1, 0, 0, 0}, g5));
  Scalar half = Scalar::from_int(g5, 2).inverse();
  Matrix a0 = n.matrix.coefficient(0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(a0(i, j), (i + j == 1) ? half : Scalar::zero(g5));
}

TEST(Normalize, CorankMismatchRejected) {
  CatalogEntry e = paper_catalog("ex-9.1");
  EXPECT_THROW(normalize_rank2_node(e.matrix, pt({1, 2, 3, 4})), DomainError);
}

TEST(AnalyzePencil, RankThreeLineOfExampleNineOne) {
  CatalogEntry e = paper_catalog("ex-9.1");
  // the line x0 + x1 = x0 + x2 + x3 = 0
  Vec a = pt({1, -1, -1, 0}), b = pt({0, 0, 1, -1});
  PencilReport r = analyze_pencil(e.matrix, a, b);
  EXPECT_EQ(r.generic_rank, 3u);
  EXPECT_EQ(r.type, PencilType::CommonVertex);
  EXPECT_EQ(r.rank_drop_length, 3);
  EXPECT_EQ(r.discriminant_length, -1);
  ASSERT_TRUE(r.common_vertex.has_value());
  EXPECT_TRUE(e.matrix.evaluate(a) * *r.common_vertex == Vec(4, Scalar()));
  EXPECT_TRUE(e.matrix.evaluate(b) * *r.common_vertex == Vec(4, Scalar()));
}

TEST(AnalyzePencil, RankTwoLineOfExampleTwoTwo) {
  CatalogEntry e = paper_catalog("ex-2.2");
  // x0 - x1 - 2 x2 = x0 + 3 x1 - 2 x3 = 0
  Vec a = pt({2, 0, 1, 1}), b = pt({0, 2, -1, 3});
  for (const auto& p : {a, b}) ASSERT_EQ(corank_at(e.matrix, p), 2u);
  PencilReport r = analyze_pencil(e.matrix, a, b);
  EXPECT_EQ(r.generic_rank, 2u);
  EXPECT_EQ(r.type, PencilType::None);
  ASSERT_TRUE(r.common_plane.has_value());
  EXPECT_EQ(r.common_plane->total_degree(), 1);
  ASSERT_TRUE(r.residual_base.has_value());
  EXPECT_EQ(r.residual_base->dim, 1);
  EXPECT_EQ(r.residual_base->degree, 1);
}

TEST(AnalyzePencil, GenericLineMeetsDiscriminantInFourPoints) {
  std::mt19937_64 rng(19);
  for (int c = 0; c < 20; ++c) {
    Field f = Field::rational();
    PencilMatrix m = props::random_pencil(make_ring(f, 4), 4, rng, 5);
    Vec a = props::random_vec(f, 4, rng, 5), b = props::random_vec(f, 4, rng, 5);
    PencilReport r = analyze_pencil(m, a, b);
    EXPECT_EQ(r.generic_rank, 4u);
    EXPECT_EQ(r.discriminant_length, 4);
    EXPECT_EQ(r.discriminant.total_degree(), 4);
    EXPECT_FALSE(r.degenerate);
  }
}

TEST(AnalyzePencil, DistinctPointsRequired) {
  CatalogEntry e = paper_catalog("ex-2.2");
  EXPECT_THROW(analyze_pencil(e.matrix, pt({1, 2, 3, 4}), pt({2, 4, 6, 8})), DomainError);
}

TEST(PencilFile, FormatParseRoundTrip) {
  for (const auto& id : catalog_ids()) {
    PencilMatrix m = paper_catalog(id).matrix;
    EXPECT_EQ(parse_pencil(format_pencil(m)), m) << id;
  }
  PencilMatrix d = parse_pencil("ring: GF(7)\nvars: x0 x1 x2 x3\nsize: 4\na 0 0 : x0\na 1 1 : x1\na 2 2 : x2\na 3 3 : x3\n");
  EXPECT_EQ(d, diagonal_pencil(Field::prime(7)));
  EXPECT_THROW(parse_pencil("ring: Q\nvars: x0 x1\nsize: 2\na 0 0 : x0^2\n"), Error);
  EXPECT_THROW(parse_pencil("ring: Q\nvars: x0 x1\nsize: 2\na 0 5 : x0\n"), Error);
}

TEST(Properties, CongruenceInvariance) {
  auto r = props::congruence_invariance(1000, 106);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}
