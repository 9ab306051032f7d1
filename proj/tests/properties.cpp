#include "properties.hpp"

#include <sstream>

#include "qsym/error.hpp"

namespace qsym::testing {

namespace {

Scalar nonzero(const Field& f, std::mt19937_64& rng, long height) {
  for (;;) {
    Scalar s = random_scalar(f, rng, height);
    if (!s.is_zero()) return s;
  }
}

Monomial random_monomial(std::size_t n, std::mt19937_64& rng, int deg) {
  std::vector<unsigned> e(n, 0);
  for (int k = 0; k < deg; ++k) ++e[rng() % n];
  return Monomial(e);
}

void fail(PropertyResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

}  // namespace

MultiPoly random_poly(const RingPtr& ring, std::mt19937_64& rng, int max_deg, int terms, long height) {
  std::vector<Term> t;
  for (int i = 0; i < terms; ++i)
    t.emplace_back(random_monomial(ring->nvars(), rng, static_cast<int>(rng() % (max_deg + 1))),
                   random_scalar(ring->field, rng, height));
  return MultiPoly(ring, t);
}

MultiPoly random_form(const RingPtr& ring, std::mt19937_64& rng, int deg, int terms, long height) {
  for (;;) {
    std::vector<Term> t;
    for (int i = 0; i < terms; ++i)
      t.emplace_back(random_monomial(ring->nvars(), rng, deg), random_scalar(ring->field, rng, height));
    MultiPoly f(ring, t);
    if (!f.is_zero()) return f;
  }
}

PencilMatrix random_pencil(const RingPtr& ring, std::size_t d, std::mt19937_64& rng, long height) {
  std::vector<Matrix> a;
  for (std::size_t k = 0; k < ring->nvars(); ++k) {
    Matrix m(ring->field, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) m(i, j) = m(j, i) = random_scalar(ring->field, rng, height);
    a.push_back(m);
  }
  return PencilMatrix(ring, a);
}

Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng, long height) {
  for (;;) {
    Vec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(f, rng, height));
    if (!is_zero_vec(v)) return v;
  }
}

PropertyResult ring_axioms(int cases, std::uint64_t seed) {
  PropertyResult r{"ring axioms"};
  std::mt19937_64 rng(seed);
  const Field fields[] = {Field::rational(), Field::prime(101), Field::prime_square(7)};
  for (int c = 0; c < cases; ++c, ++r.cases) {
    const Field& f = fields[c % 3];
    RingPtr ring = make_ring(f, 3);
    MultiPoly a = random_poly(ring, rng, 3, 5, 9), b = random_poly(ring, rng, 3, 5, 9),
              d = random_poly(ring, rng, 3, 5, 9);
    MultiPoly zero(ring), one = MultiPoly::constant(ring, 1);
    bool ok = (a + b) + d == a + (b + d) && (a * b) * d == a * (b * d) && a * (b + d) == a * b + a * d &&
              a + b == b + a && a * b == b * a && a + zero == a && a * one == a && a - a == zero &&
              a * zero == zero;
    if (!ok) fail(r, f.to_string() + ": a = " + a.to_string() + ", b = " + b.to_string() + ", c = " + d.to_string());
  }
  return r;
}

PropertyResult euler_identity(int cases, std::uint64_t seed) {
  PropertyResult r{"Euler identity"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c, ++r.cases) {
    Field f = c % 2 ? Field::prime(101) : Field::rational();
    RingPtr ring = make_ring(f, 4);
    int deg = 1 + static_cast<int>(rng() % 5);
    MultiPoly g = random_form(ring, rng, deg, 6, 20);
    MultiPoly lhs(ring);
    for (std::size_t i = 0; i < 4; ++i) lhs += MultiPoly::variable(ring, i) * partial_derivative(g, i);
    if (lhs != g * Scalar::from_int(f, deg)) fail(r, g.to_string());
  }
  return r;
}

PropertyResult congruence_invariance(int cases, std::uint64_t seed) {
  PropertyResult r{"congruence invariance"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c, ++r.cases) {
    Field f = c % 2 ? Field::prime(7) : Field::rational();
    RingPtr ring = make_ring(f, 4);
    PencilMatrix m = random_pencil(ring, 4, rng, 3);
    Matrix t = CoordChange::random(f, 4, rng, 3).matrix();
    PencilMatrix mt = m.congruence(t);
    Scalar dt = t.det();
    bool ok = determinant(mt) == determinant(m) * (dt * dt);
    for (int k = 0; k < 3 && ok; ++k) {
      Vec p = random_vec(f, 4, rng, 4);
      ok = corank_at(m, p) == corank_at(mt, p);
    }
    if (!ok) fail(r, format_pencil(m) + "T = " + t.to_string());
  }
  return r;
}

PropertyResult buchberger_recheck(int cases, std::uint64_t seed) {
  PropertyResult r{"Buchberger recheck"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c, ++r.cases) {
    bool rational = c % 4 == 0;
    Field f = rational ? Field::rational() : Field::prime(101);
    RingPtr ring = make_ring(f, 3 + static_cast<std::size_t>(rng() % 2));
    OrderKind kinds[] = {OrderKind::DegRevLex, OrderKind::Lex, OrderKind::Block};
    MonomialOrder order{kinds[c % 3], 1};
    int max_deg = order.kind == OrderKind::Lex ? 2 : 3;
    std::vector<MultiPoly> gens;
    int n = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i)
      gens.push_back(rational ? random_form(ring, rng, 1 + static_cast<int>(rng() % 2), 3, 3)
                              : random_poly(ring, rng, max_deg, 3, 0));
    IdealHandle ideal(ring, gens);
    const auto& basis = ideal.basis(order);
    bool ok = verify_groebner(basis, order);
    for (const auto& g : gens) ok = ok && normal_form(g, ideal, order).is_zero();
    if (!ok) {
      std::ostringstream os;
      for (const auto& g : gens) os << g << "; ";
      fail(r, os.str() + order.to_string());
    }
  }
  return r;
}

PropertyResult saturation_idempotence(int cases, std::uint64_t seed) {
  PropertyResult r{"saturation idempotence"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c, ++r.cases) {
    Field f = c % 3 == 0 ? Field::rational() : Field::prime(101);
    RingPtr ring = make_ring(f, 4);
    MultiPoly h = c % 2 ? MultiPoly::variable(ring, rng() % 4) : random_form(ring, rng, 1, 3, 3);
    std::vector<MultiPoly> gens{h * h * random_form(ring, rng, 1, 2, 3), h * random_form(ring, rng, 2, 3, 3),
                                random_form(ring, rng, 2, 3, 3)};
    IdealHandle ideal(ring, gens);
    IdealHandle s = saturate(ideal, h);
    IdealHandle s2 = saturate(s, h);
    IdealHandle irr = saturate_irrelevant(ideal);
    bool ok = ideal_subset(ideal, s) && same_ideal(s, s2) && same_ideal(irr, saturate_irrelevant(irr)) &&
              ideal_subset(ideal, irr);
    if (!ok) fail(r, gens[0].to_string() + "; " + gens[1].to_string() + "; " + gens[2].to_string() + " by " + h.to_string());
  }
  return r;
}

PropertyResult projective_scaling(int cases, std::uint64_t seed) {
  PropertyResult r{"projective scaling"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c, ++r.cases) {
    Field f = c % 2 ? Field::prime(11) : Field::rational();
    RingPtr ring = make_ring(f, 4);
    int deg = 1 + static_cast<int>(rng() % 4);
    MultiPoly g = random_form(ring, rng, deg, 5, 10);
    PencilMatrix m = random_pencil(ring, 4, rng, 2);
    Vec p = random_vec(f, 4, rng, 5);
    Scalar l = nonzero(f, rng, 7);
    Vec lp;
    for (const auto& s : p) lp.push_back(l * s);
    bool ok = evaluate(g, lp) == l.pow(deg) * evaluate(g, p) && corank_at(m, lp) == corank_at(m, p) &&
              normalize_point(lp) == normalize_point(p);
    if (!ok) fail(r, g.to_string() + " at " + vec_to_string(p));
  }
  return r;
}

std::vector<PropertyResult> all_properties(int cases, std::uint64_t seed) {
  return {ring_axioms(cases, seed),           euler_identity(cases, seed + 1),
          congruence_invariance(cases, seed + 2), buchberger_recheck(cases, seed + 3),
          saturation_idempotence(cases, seed + 4), projective_scaling(cases, seed + 5)};
}

}  // namespace qsym::testing
