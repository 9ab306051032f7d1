#include "qsym/groebner.hpp"

#include <deque>
#include <mutex>
#include <random>

#include "groebner_engine.hpp"
#include "qsym/error.hpp"
#include "qsym/linalg.hpp"

namespace qsym {

namespace detail {

namespace {
constexpr std::uint64_t kDefaultBudget = 2'000'000'000ull;
}

Budget& thread_budget() {
  thread_local Budget b{kDefaultBudget, 0};
  return b;
}

}  // namespace detail

using detail::EMono;
using detail::Engine;
using detail::EPoly;
using detail::OrderSpec;

BudgetScope::BudgetScope(std::uint64_t units) {
  auto& b = detail::thread_budget();
  saved_limit_ = b.limit;
  saved_used_ = b.used;
  b.limit = units;
  b.used = 0;
}

BudgetScope::~BudgetScope() {
  auto& b = detail::thread_budget();
  b.limit = saved_limit_;
  b.used = saved_used_ + b.used;
}

std::uint64_t default_budget() { return detail::kDefaultBudget; }
std::uint64_t budget_used() { return detail::thread_budget().used; }

std::string MonomialOrder::to_string() const {
  switch (kind) {
    case OrderKind::DegRevLex: return "degrevlex";
    case OrderKind::Lex: return "lex";
    case OrderKind::Block: return "block(" + std::to_string(block) + ")";
  }
  return "?";
}

int compare(const MonomialOrder& order, const Monomial& a, const Monomial& b, std::size_t nvars) {
  if (order.kind == OrderKind::DegRevLex) return compare_degrevlex(a, b, nvars);
  OrderSpec s = OrderSpec::make(order, nvars);
  return detail::cmp(detail::make_mono(a, s), detail::make_mono(b, s), s.cmask);
}

Monomial leading_monomial(const MultiPoly& f, const MonomialOrder& order) {
  if (f.is_zero()) throw DomainError("leading monomial of zero");
  if (order.kind == OrderKind::DegRevLex) return f.leading_term().first;
  const Monomial* best = &f.terms().front().first;
  for (const auto& t : f.terms())
    if (compare(order, t.first, *best, f.nvars()) > 0) best = &t.first;
  return *best;
}

RingPtr extend_ring(const RingPtr& ring, const std::string& hint) {
  std::string name = hint;
  while (ring->index_of(name) >= 0) name += "_";
  auto vars = ring->vars;
  vars.push_back(name);
  return make_ring(ring->field, std::move(vars));
}

RingPtr drop_leading_vars(const RingPtr& ring, std::size_t k) {
  std::vector<std::string> vars(ring->vars.begin() + static_cast<long>(k), ring->vars.end());
  return make_ring(ring->field, std::move(vars));
}

namespace {

// ----- conversions ---------------------------------------------------------

template <class P>
EPoly<typename P::C> to_engine(const MultiPoly& f, const Engine<P>& eng);

template <>
EPoly<std::uint32_t> to_engine(const MultiPoly& f, const Engine<detail::ModP>& eng) {
  EPoly<std::uint32_t> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) out.push_back({detail::make_mono(m, eng.order()), c.residue()});
  eng.sort_poly(out);
  return out;
}

template <>
EPoly<mpq_class> to_engine(const MultiPoly& f, const Engine<detail::QQ>& eng) {
  EPoly<mpq_class> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) out.push_back({detail::make_mono(m, eng.order()), c.rational()});
  eng.sort_poly(out);
  return out;
}

template <>
EPoly<mpz_class> to_engine(const MultiPoly& f, const Engine<detail::ZZ>& eng) {
  mpz_class l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.rational().get_den_mpz_t());
  EPoly<mpz_class> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    mpq_class v = c.rational() * l;
    out.push_back({detail::make_mono(m, eng.order()), v.get_num()});
  }
  eng.sort_poly(out);
  eng.make_unit_lead(out);
  return out;
}

MultiPoly from_engine(const EPoly<std::uint32_t>& f, const RingPtr& ring) {
  std::vector<Term> t;
  t.reserve(f.size());
  unsigned n = static_cast<unsigned>(ring->nvars());
  for (const auto& x : f) t.emplace_back(detail::to_monomial(x.m, n), Scalar::from_residues(ring->field, x.c));
  return MultiPoly(ring, std::move(t));
}

MultiPoly from_engine(const EPoly<mpq_class>& f, const RingPtr& ring) {
  std::vector<Term> t;
  t.reserve(f.size());
  unsigned n = static_cast<unsigned>(ring->nvars());
  for (const auto& x : f) t.emplace_back(detail::to_monomial(x.m, n), Scalar::from_mpq(ring->field, x.c));
  return MultiPoly(ring, std::move(t));
}

// Monic with respect to the engine's leading term.
MultiPoly from_engine(const EPoly<mpz_class>& f, const RingPtr& ring) {
  std::vector<Term> t;
  t.reserve(f.size());
  unsigned n = static_cast<unsigned>(ring->nvars());
  const mpz_class& lc = f.front().c;
  for (const auto& x : f) {
    mpq_class v(x.c, lc);
    v.canonicalize();
    t.emplace_back(detail::to_monomial(x.m, n), Scalar::from_mpq(ring->field, v));
  }
  return MultiPoly(ring, std::move(t));
}

void require_groebner_field(const Field& f) {
  if (f.kind() == FieldKind::PrimeSquare)
    throw DomainError("Groebner computations over GF(p,2) are not supported; use GF(p) or Q");
}

template <class P>
std::vector<MultiPoly> run_engine(P pol, const RingPtr& ring, const std::vector<MultiPoly>& gens,
                                  const MonomialOrder& order) {
  Engine<P> eng(std::move(pol), OrderSpec::make(order, ring->nvars()));
  std::vector<EPoly<typename P::C>> in;
  for (const auto& g : gens) in.push_back(to_engine(g, eng));
  auto out = eng.groebner(std::move(in));
  std::vector<MultiPoly> res;
  for (const auto& f : out) res.push_back(from_engine(f, ring));
  return res;
}

std::vector<MultiPoly> compute_basis(const RingPtr& ring, const std::vector<MultiPoly>& gens,
                                     const MonomialOrder& order) {
  require_groebner_field(ring->field);
  if (order.kind == OrderKind::Block && order.block > ring->nvars())
    throw DomainError("block order eliminates more variables than the ring has");
  if (ring->field.is_rational()) return run_engine(detail::ZZ{}, ring, gens, order);
  return run_engine(detail::ModP{ring->field.characteristic()}, ring, gens, order);
}

}  // namespace

// ----- IdealHandle ---------------------------------------------------------

struct IdealHandle::Cache {
  std::mutex mu;
  std::deque<std::pair<MonomialOrder, std::vector<MultiPoly>>> entries;
};

IdealHandle::IdealHandle(RingPtr ring, std::vector<MultiPoly> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (!same_ring(g.ring(), ring_)) {
      if (g.field() != ring_->field) throw FieldMismatch("generator over a different field");
      throw RingMismatch("generator from a different ring");
    }
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) homogeneous_ = false;
    gens_.push_back(std::move(g));
  }
}

const std::vector<MultiPoly>& IdealHandle::basis(const MonomialOrder& order) const {
  if (!cache_) throw DomainError("basis of a default-constructed ideal");
  std::lock_guard<std::mutex> lock(cache_->mu);
  for (const auto& e : cache_->entries)
    if (e.first == order) return e.second;
  auto b = compute_basis(ring_, gens_, order);
  cache_->entries.emplace_back(order, std::move(b));
  return cache_->entries.back().second;
}

std::vector<MultiPoly> groebner_basis(const IdealHandle& ideal, const MonomialOrder& order) {
  return ideal.basis(order);
}

// ----- Reducer ---------------------------------------------------------------

struct Reducer::Impl {
  RingPtr ring;
  std::unique_ptr<Engine<detail::ModP>> mp;
  std::unique_ptr<Engine<detail::QQ>> qq;
  std::vector<Engine<detail::ModP>::Elem> mp_basis;
  std::vector<Engine<detail::QQ>::Elem> qq_basis;
  std::vector<const Engine<detail::ModP>::Elem*> mp_ptr;
  std::vector<const Engine<detail::QQ>::Elem*> qq_ptr;

  Impl(RingPtr r, const std::vector<MultiPoly>& basis, const MonomialOrder& order) : ring(std::move(r)) {
    require_groebner_field(ring->field);
    OrderSpec spec = OrderSpec::make(order, ring->nvars());
    if (ring->field.is_rational()) {
      qq = std::make_unique<Engine<detail::QQ>>(detail::QQ{}, spec);
      for (const auto& g : basis) {
        auto e = to_engine(g, *qq);
        qq->make_unit_lead(e);
        qq_basis.push_back({std::move(e), 0, true});
      }
      for (const auto& e : qq_basis) qq_ptr.push_back(&e);
    } else {
      mp = std::make_unique<Engine<detail::ModP>>(detail::ModP{ring->field.characteristic()}, spec);
      for (const auto& g : basis) {
        auto e = to_engine(g, *mp);
        mp->make_unit_lead(e);
        mp_basis.push_back({std::move(e), 0, true});
      }
      for (const auto& e : mp_basis) mp_ptr.push_back(&e);
    }
  }

  MultiPoly reduce(const MultiPoly& f) const {
    if (!same_ring(f.ring(), ring)) throw RingMismatch("normal form of a polynomial from another ring");
    if (qq) return from_engine(qq->reduce(to_engine(f, *qq), qq_ptr), ring);
    return from_engine(mp->reduce(to_engine(f, *mp), mp_ptr), ring);
  }
};

Reducer::Reducer(const IdealHandle& ideal, const MonomialOrder& order)
    : impl_(std::make_unique<Impl>(ideal.ring(), ideal.basis(order), order)) {}
Reducer::Reducer(RingPtr ring, const std::vector<MultiPoly>& basis, const MonomialOrder& order)
    : impl_(std::make_unique<Impl>(std::move(ring), basis, order)) {}
Reducer::~Reducer() = default;
Reducer::Reducer(Reducer&&) noexcept = default;
Reducer& Reducer::operator=(Reducer&&) noexcept = default;
MultiPoly Reducer::reduce(const MultiPoly& f) const { return impl_->reduce(f); }

MultiPoly normal_form(const MultiPoly& f, const IdealHandle& ideal, const MonomialOrder& order) {
  return Reducer(ideal, order).reduce(f);
}

bool is_unit_ideal(const IdealHandle& ideal) {
  const auto& b = ideal.basis();
  return b.size() == 1 && b[0].is_constant() && !b[0].is_zero();
}

bool ideal_contains(const IdealHandle& ideal, const MultiPoly& f) {
  if (f.is_zero()) return true;
  return normal_form(f, ideal).is_zero();
}

bool ideal_subset(const IdealHandle& small, const IdealHandle& big) {
  Reducer r(big);
  for (const auto& g : small.generators())
    if (!r.reduce(g).is_zero()) return false;
  return true;
}

bool same_ideal(const IdealHandle& a, const IdealHandle& b) {
  const auto& x = a.basis();
  const auto& y = b.basis();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return false;
  return true;
}

// ----- elimination, saturation ---------------------------------------------

namespace {

bool free_of_leading(const MultiPoly& f, std::size_t k) {
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < k; ++i)
      if (t.first[i]) return false;
  return true;
}

MultiPoly shift_down(const MultiPoly& f, std::size_t k, const RingPtr& target) {
  std::vector<Term> t;
  for (const auto& [m, c] : f.terms()) {
    Monomial n;
    for (std::size_t i = k; i < f.nvars(); ++i)
      if (m[i]) n.set(i - k, m[i]);
    t.emplace_back(n, c);
  }
  return MultiPoly(target, std::move(t));
}

// Move into the ring with a new variable in front (index 0).
MultiPoly shift_up(const MultiPoly& f, const RingPtr& target) {
  std::vector<Term> t;
  for (const auto& [m, c] : f.terms()) {
    Monomial n;
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (m[i]) n.set(i + 1, m[i]);
    t.emplace_back(n, c);
  }
  return MultiPoly(target, std::move(t));
}

RingPtr prepend_var(const RingPtr& ring, const std::string& hint) {
  std::string name = hint;
  while (ring->index_of(name) >= 0) name += "_";
  std::vector<std::string> vars{name};
  vars.insert(vars.end(), ring->vars.begin(), ring->vars.end());
  return make_ring(ring->field, std::move(vars));
}

IdealHandle unit_ideal(const RingPtr& ring) { return IdealHandle(ring, {MultiPoly::constant(ring, 1)}); }

// Linear form -> last variable. Returns P with y = P x and y_{n-1} = l(x).
Matrix last_var_change(const Vec& c) {
  std::size_t n = c.size();
  const Field& f = c[0].field();
  std::size_t j = n;
  for (std::size_t i = n; i-- > 0;)
    if (!c[i].is_zero()) {
      j = i;
      break;
    }
  Matrix p(f, n, n);
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == j) continue;
    p(r++, i) = Scalar::one(f);
  }
  for (std::size_t i = 0; i < n; ++i) p(n - 1, i) = c[i];
  return p;
}

struct BayerResult {
  std::vector<MultiPoly> generators;  // saturation, original coordinates
  std::vector<MultiPoly> basis_y;     // Groebner basis in y-coordinates
  Matrix p;                           // y = P x
};

BayerResult bayer_saturate(const IdealHandle& ideal, const MultiPoly& l) {
  const RingPtr& ring = ideal.ring();
  std::size_t n = ring->nvars();
  Vec c = linear_coefficients(l);
  Matrix p = last_var_change(c);
  bool trivial = p == Matrix::identity(ring->field, n);
  CoordChange to_y(*p.inverse());
  CoordChange back(p);
  std::vector<MultiPoly> gy;
  for (const auto& g : ideal.generators()) gy.push_back(trivial ? g : apply_coord_change(g, to_y));
  IdealHandle iy(ring, gy);
  const auto& b = iy.basis();
  BayerResult res{{}, {}, p};
  for (const auto& g : b) {
    unsigned k = 255;
    for (const auto& t : g.terms()) k = std::min(k, t.first[n - 1]);
    MultiPoly h = g;
    if (k) {
      std::vector<Term> terms;
      for (const auto& [m, s] : g.terms()) {
        Monomial q = m;
        q.set(n - 1, m[n - 1] - k);
        terms.emplace_back(q, s);
      }
      h = MultiPoly(ring, std::move(terms));
    }
    res.basis_y.push_back(h);
    res.generators.push_back(trivial ? h : apply_coord_change(h, back));
  }
  return res;
}

bool is_linear_form(const MultiPoly& f) { return !f.is_zero() && f.is_homogeneous() && f.total_degree() == 1; }

// Intersection of saturations by the given linear forms; skips the
// intersection when the first saturation lies in every other one.
IdealHandle intersect_linear_saturations(const IdealHandle& ideal, const std::vector<MultiPoly>& forms) {
  std::vector<BayerResult> parts;
  for (const auto& l : forms) parts.push_back(bayer_saturate(ideal, l));
  const RingPtr& ring = ideal.ring();
  bool all_contain_first = true;
  for (std::size_t j = 1; j < parts.size() && all_contain_first; ++j) {
    Reducer red(ring, parts[j].basis_y);
    CoordChange to_y(*parts[j].p.inverse());
    for (const auto& g : parts[0].generators)
      if (!red.reduce(apply_coord_change(g, to_y)).is_zero()) {
        all_contain_first = false;
        break;
      }
  }
  IdealHandle acc(ring, parts[0].generators);
  if (all_contain_first) return acc;
  for (std::size_t j = 1; j < parts.size(); ++j) acc = ideal_intersection(acc, IdealHandle(ring, parts[j].generators));
  return acc;
}

std::vector<MultiPoly> random_combinations(const std::vector<MultiPoly>& forms, std::size_t count,
                                           std::mt19937_64& rng) {
  const Field& f = forms[0].field();
  std::size_t m = forms.size();
  for (;;) {
    Matrix c(f, count, m);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < m; ++j) c(i, j) = random_scalar(f, rng, 7);
    if (c.rank() < std::min(count, m)) continue;
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < count; ++i) {
      MultiPoly s(forms[0].ring());
      for (std::size_t j = 0; j < m; ++j) s += forms[j] * c(i, j);
      out.push_back(s);
    }
    return out;
  }
}

}  // namespace

IdealHandle eliminate(const IdealHandle& ideal, std::size_t k) {
  RingPtr target = drop_leading_vars(ideal.ring(), k);
  if (k == 0) return IdealHandle(target, ideal.generators());
  std::vector<MultiPoly> out;
  for (const auto& g : ideal.basis(MonomialOrder::elimination(k)))
    if (free_of_leading(g, k)) out.push_back(shift_down(g, k, target));
  return IdealHandle(target, std::move(out));
}

IdealHandle saturate_by_elimination(const IdealHandle& ideal, const MultiPoly& f) {
  const RingPtr& ring = ideal.ring();
  RingPtr ext = prepend_var(ring, "t");
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(shift_up(g, ext));
  MultiPoly t = MultiPoly::variable(ext, 0);
  gens.push_back(t * shift_up(f, ext) - MultiPoly::constant(ext, 1));
  IdealHandle big(ext, std::move(gens));
  std::vector<MultiPoly> out;
  for (const auto& g : big.basis(MonomialOrder::elimination(1)))
    if (free_of_leading(g, 1)) out.push_back(shift_down(g, 1, ring));
  return IdealHandle(ring, std::move(out));
}

IdealHandle saturate(const IdealHandle& ideal, const MultiPoly& f) {
  if (!same_ring(f.ring(), ideal.ring())) throw RingMismatch("saturating by a polynomial from another ring");
  if (f.is_zero()) return unit_ideal(ideal.ring());
  if (f.is_constant()) return ideal;
  if (ideal.generators().empty()) return ideal;
  if (ideal.is_homogeneous() && is_linear_form(f)) return IdealHandle(ideal.ring(), bayer_saturate(ideal, f).generators);
  return saturate_by_elimination(ideal, f);
}

IdealHandle saturate(const IdealHandle& ideal, const IdealHandle& by) {
  const auto& ks = by.generators();
  if (ks.empty()) return unit_ideal(ideal.ring());
  for (const auto& k : ks)
    if (k.is_constant()) return ideal;
  bool all_linear = ideal.is_homogeneous();
  for (const auto& k : ks) all_linear = all_linear && is_linear_form(k);
  if (all_linear) {
    std::mt19937_64 rng(0x5a7u + ks.size());
    return intersect_linear_saturations(ideal, random_combinations(ks, ks.size(), rng));
  }
  IdealHandle acc = saturate(ideal, ks[0]);
  for (std::size_t i = 1; i < ks.size(); ++i) {
    IdealHandle s = saturate(ideal, ks[i]);
    if (ideal_subset(acc, s)) continue;
    acc = ideal_intersection(acc, s);
  }
  return acc;
}

IdealHandle saturate_irrelevant(const IdealHandle& ideal) {
  if (!ideal.is_homogeneous()) throw DomainError("saturate_irrelevant needs a homogeneous ideal");
  const RingPtr& ring = ideal.ring();
  if (ideal.generators().empty()) return ideal;
  std::vector<MultiPoly> vars;
  for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(MultiPoly::variable(ring, i));
  std::mt19937_64 rng(0x11e7u);
  return intersect_linear_saturations(ideal, random_combinations(vars, vars.size(), rng));
}

IdealHandle ideal_intersection(const IdealHandle& a, const IdealHandle& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("intersecting ideals of different rings");
  const RingPtr& ring = a.ring();
  RingPtr ext = prepend_var(ring, "t");
  MultiPoly t = MultiPoly::variable(ext, 0);
  MultiPoly one_minus_t = MultiPoly::constant(ext, 1) - t;
  std::vector<MultiPoly> gens;
  for (const auto& g : a.generators()) gens.push_back(t * shift_up(g, ext));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * shift_up(g, ext));
  IdealHandle big(ext, std::move(gens));
  std::vector<MultiPoly> out;
  for (const auto& g : big.basis(MonomialOrder::elimination(1)))
    if (free_of_leading(g, 1)) out.push_back(shift_down(g, 1, ring));
  return IdealHandle(ring, std::move(out));
}

IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b) { return ideal_add(a, b.generators()); }

IdealHandle ideal_add(const IdealHandle& a, const std::vector<MultiPoly>& extra) {
  std::vector<MultiPoly> g = a.generators();
  g.insert(g.end(), extra.begin(), extra.end());
  return IdealHandle(a.ring(), std::move(g));
}

IdealHandle ideal_quotient(const IdealHandle& ideal, const MultiPoly& f) {
  if (f.is_zero()) return unit_ideal(ideal.ring());
  IdealHandle inter = ideal_intersection(ideal, IdealHandle(ideal.ring(), {f}));
  std::vector<MultiPoly> out;
  for (const auto& g : inter.generators()) {
    auto q = divide_exact(g, f);
    if (!q) throw InternalError("intersection element not divisible by the quotient polynomial");
    out.push_back(*q);
  }
  return IdealHandle(ideal.ring(), std::move(out));
}

// ----- Hilbert series --------------------------------------------------------

namespace {

using Series = std::vector<long>;

Series series_add(const Series& a, const Series& b) {
  Series r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Series series_mul(const Series& a, const Series& b) {
  Series r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void minimize(std::vector<Monomial>& g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (const auto& m : g) {
    bool red = false;
    for (const auto& o : out)
      if (o.divides(m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  g = std::move(out);
}

std::size_t support_size(const Monomial& m) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) s += m[i] != 0;
  return s;
}

Series numerator(std::vector<Monomial> g, std::size_t n) {
  minimize(g);
  if (g.empty()) return {1};
  std::size_t nonpure = g.size();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (support_size(g[i]) > 1) {
      nonpure = i;
      break;
    }
  if (nonpure == g.size()) {
    Series r{1};
    for (const auto& m : g) {
      Series f(m.degree() + 1, 0);
      f[0] = 1;
      f[m.degree()] = -1;
      r = series_mul(r, f);
    }
    return r;
  }
  // pivot on the variable of the first mixed generator occurring most often
  std::size_t best = 0, best_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!g[nonpure][v]) continue;
    std::size_t cnt = 0;
    for (const auto& m : g) cnt += m[v] != 0;
    if (cnt > best_count) {
      best_count = cnt;
      best = v;
    }
  }
  Monomial x = Monomial::var(best);
  std::vector<Monomial> plus{x};
  std::vector<Monomial> quot;
  for (const auto& m : g) {
    if (!m[best]) plus.push_back(m);
    Monomial q = m;
    if (m[best]) q.set(best, m[best] - 1);
    quot.push_back(q);
  }
  Series a = numerator(std::move(plus), n);
  Series b = numerator(std::move(quot), n);
  b.insert(b.begin(), 0);
  return series_add(a, b);
}

void trim(Series& s) {
  while (s.size() > 1 && s.back() == 0) s.pop_back();
}

}  // namespace

std::vector<long> hilbert_numerator(const IdealHandle& ideal) {
  std::vector<Monomial> lts;
  for (const auto& g : ideal.basis()) lts.push_back(g.leading_term().first);
  Series s = numerator(std::move(lts), ideal.ring()->nvars());
  trim(s);
  return s;
}

DimDegree hilbert_dim_degree(const IdealHandle& ideal) {
  if (!ideal.is_homogeneous()) throw DomainError("hilbert_dim_degree needs a homogeneous ideal");
  if (is_unit_ideal(ideal)) return {-1, 0};
  Series s = hilbert_numerator(ideal);
  std::size_t n = ideal.ring()->nvars();
  std::size_t a = 0;
  // divide by (1 - t) while possible
  for (;;) {
    long sum = 0;
    for (long c : s) sum += c;
    if (sum != 0 || s.size() <= 1) break;
    Series q(s.size() - 1, 0);
    long acc = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      acc += s[i];
      q[i] = acc;
    }
    s = q;
    trim(s);
    ++a;
  }
  long deg = 0;
  for (long c : s) deg += c;
  int krull = static_cast<int>(n) - static_cast<int>(a);
  if (krull <= 0) return {-1, 0};
  return {krull - 1, deg};
}

long hilbert_function(const IdealHandle& ideal, unsigned d) {
  Series s = hilbert_numerator(ideal);
  std::size_t n = ideal.ring()->nvars();
  // coefficient of t^d in s(t) / (1-t)^n
  long total = 0;
  for (std::size_t i = 0; i < s.size() && i <= d; ++i) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), d - i + n - 1, n - 1);
    total += s[i] * c.get_si();
  }
  return total;
}

// ----- radical membership, verification ------------------------------------

bool radical_membership(const MultiPoly& f, const IdealHandle& ideal) {
  if (!same_ring(f.ring(), ideal.ring())) throw RingMismatch("radical membership across rings");
  if (f.is_zero()) return true;
  const RingPtr& ring = ideal.ring();
  RingPtr ext = extend_ring(ring, "t");
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(embed(g, ext));
  MultiPoly t = MultiPoly::variable(ext, ring->nvars());
  gens.push_back(MultiPoly::constant(ext, 1) - t * embed(f, ext));
  return is_unit_ideal(IdealHandle(ext, std::move(gens)));
}

namespace {

template <class P>
bool verify_with(P pol, const std::vector<MultiPoly>& basis, const MonomialOrder& order) {
  if (basis.empty()) return true;
  const RingPtr& ring = basis[0].ring();
  Engine<P> eng(std::move(pol), OrderSpec::make(order, ring->nvars()));
  std::vector<typename Engine<P>::Elem> el;
  for (const auto& g : basis) {
    auto e = to_engine(g, eng);
    eng.make_unit_lead(e);
    el.push_back({std::move(e), 0, true});
  }
  std::vector<const typename Engine<P>::Elem*> ptr;
  for (const auto& e : el) ptr.push_back(&e);
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      EMono l = detail::lcm(el[i].lm(), el[j].lm(), eng.order());
      auto s = eng.spoly(el[i], el[j], l);
      if (!eng.reduce(std::move(s), ptr).empty()) return false;
    }
  return true;
}

}  // namespace

bool verify_groebner(const std::vector<MultiPoly>& basis, const MonomialOrder& order) {
  if (basis.empty()) return true;
  const Field& f = basis[0].field();
  require_groebner_field(f);
  if (f.is_rational()) return verify_with(detail::QQ{}, basis, order);
  return verify_with(detail::ModP{f.characteristic()}, basis, order);
}

}  // namespace qsym
