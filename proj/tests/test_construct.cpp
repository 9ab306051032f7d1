#include <gtest/gtest.h>

#include "qsym/classify.hpp"
#include "qsym/construct.hpp"
#include "qsym/error.hpp"
#include "qsym/zerodim.hpp"

using namespace qsym;

namespace {

Vec pt(std::vector<long> v, const Field& f = Field::rational()) { return ints_to_vec(f, v); }

const FamilyLabel kFamilies[] = {FamilyLabel::Rank2Line, FamilyLabel::Rank3Line, FamilyLabel::DoubleConic,
                                 FamilyLabel::TriplePoint, FamilyLabel::Tacnode};

}  // namespace

TEST(Generators, Deterministic) {
  for (FamilyLabel l : kFamilies) {
    EXPECT_EQ(family_candidate(l, 5, Field::rational(), 10), family_candidate(l, 5, Field::rational(), 10));
    EXPECT_EQ(family_candidate(l, 5, Field::prime(101), 7), family_candidate(l, 5, Field::prime(101), 7));
    EXPECT_FALSE(family_candidate(l, 5, Field::rational(), 10) == family_candidate(l, 6, Field::rational(), 10));
  }
  GeneratedMember a = gen_family(FamilyLabel::TriplePoint, 3), b = gen_family(FamilyLabel::TriplePoint, 3);
  EXPECT_EQ(a.matrix, b.matrix);
  EXPECT_EQ(a.used_seed, b.used_seed);
}

TEST(Generators, EntriesWithinHeight) {
  for (FamilyLabel l : kFamilies) {
    PencilMatrix m = family_candidate(l, 11, Field::rational(), 5);
    EXPECT_EQ(m.size(), 4u);
    EXPECT_EQ(m.nvars(), 4u);
    for (const auto& a : m.coefficients()) EXPECT_TRUE(a.is_symmetric());
    EXPECT_EQ(determinant(m).total_degree(), 4);
  }
}

TEST(Generators, BadArgumentsRejected) {
  EXPECT_THROW(family_candidate(FamilyLabel::Rank2Line, 1, Field::rational(), 4), DomainError);
  EXPECT_THROW(gen_family(FamilyLabel::OtherOrDegenerate, 1), DomainError);
  EXPECT_THROW(gen_family(FamilyLabel::TwoLines, 1), DomainError);
}

TEST(Generators, RankTwoLineSeedOne) {
  GeneratedMember g = gen_family(FamilyLabel::Rank2Line, 1, Field::rational(), 10);
  EXPECT_EQ(g.classification.label, FamilyLabel::Rank2Line);
  EXPECT_EQ(g.classification.evidence.rank2_isolated, 6);
  IdealHandle base = saturate_irrelevant(web_base_locus_ideal(g.matrix));
  EXPECT_EQ(hilbert_dim_degree(base), (DimDegree{0, 4}));
  ZeroDimScheme z(base);
  EXPECT_EQ(z.point_count(), 4);
  std::vector<Vec> pts = z.rational_points();
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(Matrix::from_rows(pts).rank(), 3u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (std::size_t k = j + 1; k < 4; ++k)
        EXPECT_EQ(Matrix::from_rows({pts[i], pts[j], pts[k]}).rank(), 3u);
}

TEST(Generators, RankThreeLineSeedOne) {
  GeneratedMember g = gen_family(FamilyLabel::Rank3Line, 1, Field::rational(), 10);
  EXPECT_EQ(g.classification.label, FamilyLabel::Rank3Line);
  EXPECT_EQ(g.classification.evidence.isolated_nodes, 4);
  ASSERT_EQ(g.classification.evidence.line_rank_data.size(), 1u);
  EXPECT_EQ(g.classification.evidence.line_rank_data[0].rank2_length, 3);
}

TEST(Generators, DoubleConicSeedOne) {
  GeneratedMember g = gen_family(FamilyLabel::DoubleConic, 1, Field::rational(), 10);
  EXPECT_EQ(g.classification.label, FamilyLabel::DoubleConic);
  EXPECT_EQ(g.classification.evidence.isolated_nodes, 4);
}

TEST(Generators, TriplePointSeedOne) {
  GeneratedMember g = gen_family(FamilyLabel::TriplePoint, 1, Field::rational(), 10);
  EXPECT_EQ(g.classification.label, FamilyLabel::TriplePoint);
  EXPECT_EQ(g.classification.evidence.isolated_nodes, 6);
}

TEST(Generators, TacnodeSeedOne) {
  GeneratedMember g = gen_family(FamilyLabel::Tacnode, 1, Field::rational(), 10);
  EXPECT_EQ(g.classification.label, FamilyLabel::Tacnode);
  EXPECT_EQ(g.classification.evidence.isolated_nodes, 6);
  IdealHandle base = saturate_irrelevant(web_base_locus_ideal(g.matrix));
  EXPECT_EQ(hilbert_dim_degree(base), (DimDegree{0, 2}));
}

TEST(Generators, OverAPrimeField) {
  GeneratedMember g = gen_family(FamilyLabel::TriplePoint, 2, Field::prime(101), 10);
  EXPECT_EQ(g.matrix.field(), Field::prime(101));
  EXPECT_EQ(g.classification.label, FamilyLabel::TriplePoint);
}

TEST(Catalog, EveryIdLoadsAndUnknownIsRejected) {
  auto ids = catalog_ids();
  EXPECT_EQ(ids.size(), 14u);
  for (const auto& id : ids) {
    CatalogEntry e = paper_catalog(id);
    EXPECT_EQ(e.id, id);
    EXPECT_FALSE(determinant(e.matrix).is_zero()) << id;
    if (e.expect.determinant) EXPECT_EQ(determinant(e.matrix), parse_poly(*e.expect.determinant, e.matrix.ring())) << id;
  }
  EXPECT_THROW(paper_catalog("no-such-entry"), DomainError);
}

TEST(Catalog, TwoRepresentationsOfOneSurface) {
  CatalogEntry a = paper_catalog("ex-8.5-a"), b = paper_catalog("ex-8.5-b");
  EXPECT_EQ(determinant(a.matrix), determinant(b.matrix));
  Vec p = pt({1, 1, 1, 1});
  EXPECT_NE(charpoly(a.matrix.evaluate(p)), charpoly(b.matrix.evaluate(p)));
  Classification ca = classify_family(a.matrix), cb = classify_family(b.matrix);
  auto corank2_lines = [](const Classification& c) {
    std::vector<IdealHandle> out;
    for (const auto& k : c.evidence.curves)
      if (k.kind == CurveKind::Line && k.generic_corank >= 2) out.emplace_back(k.equations.front().ring(), k.equations);
    return out;
  };
  auto la = corank2_lines(ca), lb = corank2_lines(cb);
  ASSERT_EQ(la.size(), 1u);
  ASSERT_EQ(lb.size(), 1u);
  EXPECT_FALSE(same_ideal(la[0], lb[0]));
  IdealHandle ra = rank_locus_ideal(a.matrix, 2), rb = rank_locus_ideal(b.matrix, 2);
  for (const auto& g : ra.generators()) EXPECT_TRUE(radical_membership(g, la[0]));
  for (const auto& g : rb.generators()) EXPECT_TRUE(radical_membership(g, lb[0]));
  bool a_on_lb = true;
  for (const auto& g : ra.generators()) a_on_lb = a_on_lb && radical_membership(g, lb[0]);
  EXPECT_FALSE(a_on_lb);
}

TEST(Catalog, TwoIntersectingCorankTwoLines) {
  Classification c = classify_family(paper_catalog("proof-8.3-M").matrix);
  EXPECT_EQ(c.label, FamilyLabel::TwoLines);
  ASSERT_EQ(c.evidence.curves.size(), 2u);
  for (const auto& k : c.evidence.curves) EXPECT_EQ(k.generic_corank, 2u);
  EXPECT_EQ(c.evidence.rank2_isolated, 4);
}

TEST(Catalog, SteinerSurface) {
  CatalogEntry e = paper_catalog("steiner");
  Classification c = classify_family(e.matrix);
  std::size_t lines = 0;
  for (const auto& k : c.evidence.curves) lines += k.kind == CurveKind::Line;
  EXPECT_EQ(lines, 3u);
  bool triple = false;
  for (const auto& p : c.evidence.curve_points)
    if (p.label == PointLabel::TriplePoint) {
      triple = true;
      EXPECT_EQ(e.matrix.evaluate(p.point).rank(), 1u);
    }
  EXPECT_TRUE(triple);
  ASSERT_EQ(c.evidence.line_rank_data.size(), 3u);
  for (const auto& d : c.evidence.line_rank_data) {
    EXPECT_EQ(d.rank2_points_off_special, 1);
    EXPECT_EQ(d.surface_rank2_length_off_special, 2);
  }
}
