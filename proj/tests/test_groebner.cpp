#include <gtest/gtest.h>

#include <algorithm>

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

IdealHandle ideal(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<MultiPoly> g;
  for (const auto& s : gens) g.push_back(P(s, r));
  return IdealHandle(r, g);
}

IdealHandle twisted_cubic(const Field& f) {
  return ideal(make_ring(f, 4), {"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"});
}

bool is_zero_ideal(const IdealHandle& i) {
  for (const auto& g : i.generators())
    if (!g.is_zero()) return false;
  return true;
}

// The S-polynomial of f and g, written out without the library's reducer.
MultiPoly s_poly(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& o) {
  Monomial lf = leading_monomial(f, o), lg = leading_monomial(g, o), l = lf.lcm(lg);
  Scalar cf = f.coefficient(lf), cg = g.coefficient(lg);
  return f.mul_monomial(l / lf, cf.inverse()) - g.mul_monomial(l / lg, cg.inverse());
}

// Plain multivariate division by a list, largest term first.
MultiPoly divide_by(MultiPoly f, const std::vector<MultiPoly>& divisors, const MonomialOrder& o) {
  MultiPoly rem(f.ring());
  while (!f.is_zero()) {
    Monomial lt = leading_monomial(f, o);
    Scalar c = f.coefficient(lt);
    bool done = false;
    for (const auto& d : divisors) {
      Monomial ld = leading_monomial(d, o);
      if (ld.divides(lt)) {
        f -= d.mul_monomial(lt / ld, c / d.coefficient(ld));
        done = true;
        break;
      }
    }
    if (!done) {
      MultiPoly t = MultiPoly::monomial(f.ring(), lt, c);
      rem += t;
      f -= t;
    }
  }
  return rem;
}

}  // namespace

TEST(GroebnerBasis, PrincipalAndUnit) {
  RingPtr r = make_ring(Field::rational(), 2);
  auto b = ideal(r, {"x0"}).basis();
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], P("x0", r));
  auto u = ideal(r, {"x0", "1 + x0"}).basis();
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0], MultiPoly::constant(r, 1));
  EXPECT_TRUE(is_unit_ideal(ideal(r, {"x0", "1 + x0"})));
}

TEST(GroebnerBasis, TwistedCubicGeneratorsAlreadyABasis) {
  IdealHandle tc = twisted_cubic(Field::rational());
  auto b = tc.basis();
  ASSERT_EQ(b.size(), 3u);
  for (const auto& g : tc.generators()) {
    bool found = false;
    for (const auto& h : b) found = found || h == g || h == -g;
    EXPECT_TRUE(found) << g;
  }
  MonomialOrder o = MonomialOrder::degrevlex();
  const auto& g = tc.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      EXPECT_TRUE(divide_by(s_poly(g[i], g[j], o), g, o).is_zero()) << i << "," << j;
}

TEST(GroebnerBasis, IndependentOfGeneratorOrder) {
  RingPtr r = make_ring(Field::prime(101), 3);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    std::vector<MultiPoly> g;
    for (int k = 0; k < 3; ++k) g.push_back(props::random_poly(r, rng, 2, 3, 0));
    std::vector<MultiPoly> h(g.rbegin(), g.rend());
    h[0] *= Scalar::from_int(r->field, 17);
    EXPECT_EQ(IdealHandle(r, g).basis(), IdealHandle(r, h).basis());
  }
}

TEST(GroebnerBasis, BudgetExhaustionIsAnError) {
  IdealHandle j = jacobian_ideal(determinant(paper_catalog("ex-2.2").matrix));
  {
    BudgetScope scope(1000);
    EXPECT_THROW(j.basis(), ResourceError);
  }
  std::uint64_t used = 0;
  {
    BudgetScope scope(default_budget());
    EXPECT_EQ(j.basis().size(), 13u);
    used = budget_used();
  }
  EXPECT_GT(used, 1000u);
}

TEST(NormalForm, Examples) {
  RingPtr r = make_ring(Field::rational(), 4);
  EXPECT_TRUE(normal_form(P("x0^2", r), ideal(r, {"x0"})).is_zero());
  IdealHandle tc = twisted_cubic(Field::rational());
  MultiPoly nf = normal_form(P("x1^2", tc.ring()), tc);
  EXPECT_EQ(nf, P("x0*x2", tc.ring()));
  EXPECT_EQ(nf, divide_by(P("x1^2", tc.ring()), tc.generators(), MonomialOrder::degrevlex()));
  EXPECT_TRUE(normal_form(P("x3^5 - 7*x1", r), ideal(r, {"1"})).is_zero());
}

TEST(NormalForm, MultiplicativeModuloTheIdeal) {
  std::mt19937_64 rng(21);
  for (int c = 0; c < 200; ++c) {
    Field f = c % 2 ? Field::prime(101) : Field::rational();
    RingPtr r = make_ring(f, 4);
    IdealHandle i(r, {props::random_form(r, rng, 2, 3, 4), props::random_form(r, rng, 2, 3, 4),
                      props::random_form(r, rng, 2, 3, 4)});
    MultiPoly a = props::random_poly(r, rng, 3, 4, 5), b = props::random_poly(r, rng, 3, 4, 5);
    EXPECT_EQ(normal_form(a * b, i), normal_form(normal_form(a, i) * normal_form(b, i), i));
  }
}

TEST(Eliminate, Examples) {
  RingPtr r = make_ring(Field::rational(), std::vector<std::string>{"t", "x0", "x1"});
  IdealHandle e1 = eliminate(ideal(r, {"t*x0 - 1"}), 1);
  EXPECT_EQ(e1.ring()->vars, (std::vector<std::string>{"x0", "x1"}));
  EXPECT_TRUE(is_zero_ideal(e1));
  IdealHandle e2 = eliminate(ideal(r, {"t*x0 - 1", "x0*x1"}), 1);
  EXPECT_TRUE(same_ideal(e2, ideal(e2.ring(), {"x1"})));
  IdealHandle orig = ideal(r, {"t*x0 - x1^2", "x0*x1"});
  EXPECT_TRUE(same_ideal(eliminate(orig, 0), orig));
}

TEST(Saturate, Examples) {
  RingPtr r = make_ring(Field::rational(), 4);
  EXPECT_TRUE(same_ideal(saturate(ideal(r, {"x0^2*x1"}), P("x0", r)), ideal(r, {"x1"})));
  IdealHandle i = ideal(r, {"x0*x1 - x2^2", "x3^3"});
  EXPECT_TRUE(same_ideal(saturate(i, MultiPoly::constant(r, 5)), i));
  EXPECT_TRUE(same_ideal(saturate(ideal(r, {"x0^2*x1", "x0*x2^3"}), P("x0", r)),
                         saturate_by_elimination(ideal(r, {"x0^2*x1", "x0*x2^3"}), P("x0", r))));
}

TEST(Saturate, PluckerJacobianOffTheDoubleLine) {
  CatalogEntry e = paper_catalog("plucker");
  MultiPoly f = determinant(e.matrix);
  RingPtr r = f.ring();
  // parametrize the line x0 = x1, x2 = 0 by (s, s, 0, t)
  RingPtr st = make_ring(Field::rational(), std::vector<std::string>{"s", "t"});
  std::vector<MultiPoly> par{P("s", st), P("s", st), MultiPoly(st), P("t", st)};
  EXPECT_TRUE(substitute(f, par).is_zero());
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(substitute(partial_derivative(f, k), par).is_zero());
  IdealHandle line = ideal(r, {"x0 - x1", "x2"});
  DimDegree whole = hilbert_dim_degree(jacobian_ideal(f));
  EXPECT_EQ(whole.dim, 1);
  DimDegree rest = hilbert_dim_degree(saturate_irrelevant(saturate(jacobian_ideal(f), line)));
  EXPECT_EQ(rest, (DimDegree{0, 8}));
}

TEST(Saturate, IrrelevantOfSmoothQuadricJacobian) {
  RingPtr r = make_ring(Field::rational(), 4);
  MultiPoly q = P("x0^2 + x1^2 + x2^2 + x3^2", r);
  EXPECT_TRUE(is_unit_ideal(saturate_irrelevant(jacobian_ideal(q))));
}

TEST(HilbertDimDegree, TwistedCubic) {
  EXPECT_EQ(hilbert_dim_degree(twisted_cubic(Field::rational())), (DimDegree{1, 3}));
  for (std::uint32_t q : {5u, 7u, 11u}) {
    Field f = Field::prime(q);
    IdealHandle tc = twisted_cubic(f);
    EXPECT_EQ(hilbert_dim_degree(tc), (DimDegree{1, 3}));
    std::uint64_t n = projective_point_count(q, 4), on = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      Vec p = projective_point(f, 4, i);
      bool all = true;
      for (const auto& g : tc.generators()) all = all && evaluate(g, p).is_zero();
      on += all;
    }
    EXPECT_EQ(on, q + 1u) << q;
  }
}

TEST(HilbertDimDegree, UnitAndIrrelevantConventions) {
  RingPtr r = make_ring(Field::rational(), 3);
  EXPECT_EQ(hilbert_dim_degree(ideal(r, {"1"})), (DimDegree{-1, 0}));
  EXPECT_EQ(hilbert_dim_degree(ideal(r, {"x0", "x1", "x2^2"})).dim, -1);
  EXPECT_EQ(hilbert_dim_degree(ideal(r, {"x0^2"})), (DimDegree{1, 2}));
  EXPECT_EQ(hilbert_dim_degree(ideal(r, {"x0*x1 - x2^2"})), (DimDegree{1, 2}));
}

TEST(HilbertDimDegree, GenericSymmetricRankLoci) {
  PencilMatrix g = generic_symmetric_pencil(Field::prime(101), 4);
  EXPECT_EQ(hilbert_dim_degree(rank_locus_ideal(g, 2)), (DimDegree{6, 10}));
  EXPECT_EQ(hilbert_dim_degree(rank_locus_ideal(g, 1)), (DimDegree{3, 8}));
}

TEST(HilbertDimDegree, ReducedPointSetsMatchPointCounts) {
  std::mt19937_64 rng(77);
  Field f = Field::prime(101);
  RingPtr r = make_ring(f, 4);
  for (int c = 0; c < 20; ++c) {
    std::size_t n = 1 + rng() % 6;
    std::vector<Vec> pts;
    while (pts.size() < n) {
      Vec p = normalize_point(props::random_vec(f, 4, rng, 0));
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    IdealHandle i = span_ideal(r, {pts[0]});
    for (std::size_t k = 1; k < n; ++k) i = ideal_intersection(i, span_ideal(r, {pts[k]}));
    EXPECT_EQ(hilbert_dim_degree(i), (DimDegree{0, static_cast<long>(n)}));
    ZeroDimScheme z(i);
    EXPECT_EQ(z.point_count(), static_cast<long>(n));
    EXPECT_TRUE(z.is_reduced());
    std::vector<Vec> got = z.rational_points();
    std::sort(got.begin(), got.end(), [](const Vec& a, const Vec& b) { return vec_to_string(a) < vec_to_string(b); });
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return vec_to_string(a) < vec_to_string(b); });
    EXPECT_EQ(got, pts);
  }
}

TEST(RadicalMembership, Examples) {
  RingPtr r = make_ring(Field::rational(), 4);
  EXPECT_TRUE(radical_membership(P("x0", r), ideal(r, {"x0^2"})));
  EXPECT_FALSE(ideal_contains(ideal(r, {"x0^2"}), P("x0", r)));
  EXPECT_FALSE(radical_membership(P("x1", r), ideal(r, {"x0"})));
  MultiPoly f = determinant(paper_catalog("ex-2.2").matrix);
  EXPECT_TRUE(radical_membership(f, IdealHandle(f.ring(), {f})));
  EXPECT_TRUE(radical_membership(f, ideal_add(jacobian_ideal(f), {f})));
}

TEST(Properties, BuchbergerRecheck) {
  auto r = props::buchberger_recheck(1000, 104);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Properties, SaturationIdempotence) {
  auto r = props::saturation_idempotence(1000, 105);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(MonomialOrder, BlockEliminatesLeadingVariables) {
  MonomialOrder o = MonomialOrder::elimination(1);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    std::vector<unsigned> a(3), b(3);
    for (auto& e : a) e = rng() % 5;
    for (auto& e : b) e = rng() % 5;
    Monomial ma(a), mb(b);
    if (a[0] > 0 && b[0] == 0) EXPECT_EQ(compare(o, ma, mb, 3), 1);
    Monomial w = Monomial::var(rng() % 3, 1 + rng() % 3);
    for (const auto& ord : {o, MonomialOrder::lex(), MonomialOrder::degrevlex()}) {
      EXPECT_EQ(compare(ord, ma, mb, 3), compare(ord, ma * w, mb * w, 3));
      EXPECT_GE(compare(ord, ma, Monomial(), 3), 0);
    }
  }
}
