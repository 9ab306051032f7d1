#include "qsym/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "qsym/error.hpp"

namespace qsym {

int Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(const Field& field, std::vector<std::string> vars) {
  if (vars.size() > kMaxVars)
    throw DomainError("at most " + std::to_string(kMaxVars) + " variables are supported");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    bool ok = !v.empty() && std::isalpha(static_cast<unsigned char>(v[0]));
    for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw DomainError("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw DomainError("duplicate variable name '" + v + "'");
  }
  return std::make_shared<const Ring>(Ring{field, std::move(vars)});
}

RingPtr make_ring(const Field& field, std::size_t n, const std::string& prefix) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(prefix + std::to_string(i));
  return make_ring(field, std::move(vars));
}

bool same_ring(const Ring& a, const Ring& b) { return a.field == b.field && a.vars == b.vars; }

RingPtr with_field(const RingPtr& r, const Field& f) {
  if (r->field == f) return r;
  return std::make_shared<const Ring>(Ring{f, r->vars});
}

// ---------------------------------------------------------------------------

Monomial::Monomial(const std::vector<unsigned>& exps) {
  e_.fill(0);
  if (exps.size() > kMaxVars) throw DomainError("too many exponents");
  for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

Monomial Monomial::var(std::size_t i, unsigned power) {
  Monomial m;
  m.set(i, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned v) {
  if (i >= kMaxVars) throw DomainError("variable index out of range");
  if (v > kMaxExponent) throw DomainError("exponent " + std::to_string(v) + " exceeds 255");
  deg_ = static_cast<std::uint16_t>(deg_ - e_[i] + v);
  e_[i] = static_cast<std::uint8_t>(v);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(e_[i]) + o.e_[i];
    if (s > kMaxExponent) throw DomainError("exponent overflow (>255) in monomial product");
    r.e_[i] = static_cast<std::uint8_t>(s);
  }
  r.deg_ = static_cast<std::uint16_t>(deg_ + o.deg_);
  return r;
}

bool Monomial::divides(const Monomial& o) const noexcept {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint8_t>(e_[i] - o.e_[i]);
  r.deg_ = static_cast<std::uint16_t>(deg_ - o.deg_);
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const noexcept {
  Monomial r;
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    d += r.e_[i];
  }
  r.deg_ = static_cast<std::uint16_t>(d);
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const noexcept {
  Monomial r;
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::min(e_[i], o.e_[i]);
    d += r.e_[i];
  }
  r.deg_ = static_cast<std::uint16_t>(d);
  return r;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : e_) h = (h ^ v) * 1099511628211ull;
  return h;
}

int compare_degrevlex(const Monomial& a, const Monomial& b, std::size_t n) noexcept {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

namespace {

struct DescDegrevlex {
  bool operator()(const Term& x, const Term& y) const noexcept {
    return compare_degrevlex(x.first, y.first, kMaxVars) > 0;
  }
};

// Sort descending and merge duplicates.
void canonicalize(std::vector<Term>& t) {
  std::sort(t.begin(), t.end(), DescDegrevlex{});
  std::size_t w = 0;
  for (std::size_t r = 0; r < t.size();) {
    Term acc = std::move(t[r]);
    std::size_t s = r + 1;
    while (s < t.size() && t[s].first == acc.first) acc.second += t[s++].second;
    r = s;
    if (!acc.second.is_zero()) t[w++] = std::move(acc);
  }
  t.resize(w);
}

}  // namespace

MultiPoly::MultiPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (const auto& [m, c] : terms_) {
    if (c.field() != ring_->field) throw FieldMismatch("coefficient field differs from ring field");
    for (std::size_t i = ring_->nvars(); i < kMaxVars; ++i)
      if (m[i]) throw DomainError("monomial uses a variable outside the ring");
  }
  canonicalize(terms_);
}

MultiPoly MultiPoly::constant(RingPtr ring, const Scalar& c) {
  return MultiPoly(ring, {{Monomial(), c}});
}

MultiPoly MultiPoly::constant(RingPtr ring, long c) {
  Scalar s = Scalar::from_int(ring->field, c);
  return constant(std::move(ring), s);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->nvars()) throw DomainError("variable index out of range");
  Scalar one = Scalar::one(ring->field);
  return MultiPoly(std::move(ring), {{Monomial::var(i), one}});
}

MultiPoly MultiPoly::monomial(RingPtr ring, const Monomial& m, const Scalar& c) {
  return MultiPoly(std::move(ring), {{m, c}});
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

int MultiPoly::total_degree() const noexcept {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.front().first.degree());
}

int MultiPoly::degree_in(std::size_t var) const noexcept {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first[var]));
  return d;
}

bool MultiPoly::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  return terms_.front().first.degree() == terms_.back().first.degree();
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

Scalar MultiPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return compare_degrevlex(t.first, x, kMaxVars) > 0;
  });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar::zero(ring_->field);
}

MultiPoly MultiPoly::homogeneous_part(unsigned d) const {
  MultiPoly r(ring_);
  for (const auto& t : terms_)
    if (t.first.degree() == d) r.terms_.push_back(t);
  return r;
}

void MultiPoly::check_ring(const MultiPoly& o) const {
  if (!ring_ || !o.ring_) throw RingMismatch("polynomial without a ring");
  if (!same_ring(ring_, o.ring_)) {
    if (ring_->field != o.ring_->field) throw FieldMismatch("polynomials over different fields");
    throw RingMismatch("polynomials over different variable lists");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : compare_degrevlex(a[i].first, b[j].first, kMaxVars);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().second = -out.back().second;
    } else {
      Scalar s = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_ring(o);
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_ring(o);
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_ring(b);
  MultiPoly r(a.ring_);
  if (a.is_zero() || b.is_zero()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.emplace_back(x.first * y.first, x.second * y.second);
  canonicalize(r.terms_);
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
  if (c.field() != ring_->field) throw FieldMismatch("scalar field differs from ring field");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(ring_, 1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Scalar& c) const {
  MultiPoly r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  a.check_ring(b);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  const Field& f = ring_->field;
  for (const auto& [m, c] : terms_) {
    bool neg = f.is_rational() && sgn(c.rational()) < 0;
    Scalar a = neg ? -c : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string body;
    bool unit = a.is_one();
    if (!unit || m.is_one()) {
      body = a.to_string();
    }
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!m[i]) continue;
      if (!body.empty()) body += "*";
      body += ring_->vars[i];
      if (m[i] > 1) body += "^" + std::to_string(m[i]);
    }
    out += body;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& f) { return os << f.to_string(); }

MultiPoly poly_product(const MultiPoly& f, const MultiPoly& g) { return f * g; }

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var) {
  if (var >= f.nvars()) throw DomainError("variable index out of range");
  std::vector<Term> out;
  for (const auto& [m, c] : f.terms()) {
    unsigned e = m[var];
    if (!e) continue;
    Monomial n = m;
    n.set(var, e - 1);
    out.emplace_back(n, c * Scalar::from_int(f.field(), static_cast<long>(e)));
  }
  return MultiPoly(f.ring(), std::move(out));
}

Scalar evaluate(const MultiPoly& f, const std::vector<Scalar>& point) {
  if (point.size() != f.nvars())
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, ring has " +
                      std::to_string(f.nvars()) + " variables");
  const Field& fld = f.field();
  for (const auto& v : point)
    if (v.field() != fld) throw FieldMismatch("point coordinates over " + v.field().to_string() +
                                              ", polynomial over " + fld.to_string());
  // Powers cache per variable.
  std::vector<std::vector<Scalar>> pw(point.size());
  Scalar acc = Scalar::zero(fld);
  for (const auto& [m, c] : f.terms()) {
    Scalar t = c;
    for (std::size_t i = 0; i < point.size(); ++i) {
      unsigned e = m[i];
      if (!e) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(Scalar::one(fld));
      while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
      t *= cache[e];
    }
    acc += t;
  }
  return acc;
}

MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& subs) {
  if (subs.size() != f.nvars()) throw DomainError("substitution arity mismatch");
  if (subs.empty()) return f;
  RingPtr target = subs[0].ring();
  for (const auto& s : subs)
    if (!same_ring(s.ring(), target)) throw RingMismatch("substitutes live in different rings");
  if (target->field != f.field()) throw FieldMismatch("substitution changes the field");
  std::vector<std::vector<MultiPoly>> pw(subs.size());
  MultiPoly acc(target);
  std::vector<Term> collected;
  for (const auto& [m, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      unsigned e = m[i];
      if (!e) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(MultiPoly::constant(target, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * subs[i]);
      t *= cache[e];
    }
    collected.insert(collected.end(), t.terms().begin(), t.terms().end());
  }
  return MultiPoly(target, std::move(collected));
}

MultiPoly change_field(const MultiPoly& f, const RingPtr& target) {
  if (target->vars != f.ring()->vars) throw RingMismatch("change_field requires identical variables");
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) out.emplace_back(m, c.to_field(target->field));
  return MultiPoly(target, std::move(out));
}

MultiPoly change_field(const MultiPoly& f, const Field& target) {
  return change_field(f, with_field(f.ring(), target));
}

MultiPoly embed(const MultiPoly& f, const RingPtr& target) {
  if (target->field != f.field()) throw FieldMismatch("embed keeps the field");
  std::vector<int> map(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    map[i] = target->index_of(f.ring()->vars[i]);
    if (map[i] < 0) throw RingMismatch("variable " + f.ring()->vars[i] + " missing in target ring");
  }
  std::vector<Term> out;
  for (const auto& [m, c] : f.terms()) {
    Monomial n;
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (m[i]) n.set(static_cast<std::size_t>(map[i]), m[i]);
    out.emplace_back(n, c);
  }
  return MultiPoly(target, std::move(out));
}

std::optional<MultiPoly> divide_exact(const MultiPoly& g, const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("division by the zero polynomial");
  const auto& [fm, fc] = f.leading_term();
  Scalar inv = fc.inverse();
  MultiPoly rem = g;
  std::vector<Term> q;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term();
    if (!fm.divides(rm)) return std::nullopt;
    Monomial m = rm / fm;
    Scalar c = rc * inv;
    rem -= f.mul_monomial(m, c);
    q.emplace_back(m, c);
  }
  return MultiPoly(g.ring(), std::move(q));
}

MultiPoly make_monic(const MultiPoly& f) {
  if (f.is_zero()) return f;
  return f * f.leading_term().second.inverse();
}

MultiPoly normalize_content(const MultiPoly& f) {
  if (f.is_zero() || !f.field().is_rational()) return make_monic(f);
  mpz_class g = 0, l = 1;
  for (const auto& t : f.terms()) {
    const mpq_class& q = t.second.rational();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  mpq_class s(l, g);
  if (sgn(f.leading_term().second.rational()) < 0) s = -s;
  return f * Scalar::from_mpq(f.field(), s);
}

}  // namespace qsym
