#include "qsym/univariate.hpp"

#include <random>

#include "qsym/error.hpp"

namespace qsym {

UPoly::UPoly(Field f, std::vector<Scalar> c) : f_(f), c_(std::move(c)) {
  for (const auto& s : c_)
    if (s.field() != f_) throw FieldMismatch("univariate coefficient field mismatch");
  trim();
}

UPoly UPoly::x(const Field& f) { return UPoly(f, {Scalar::zero(f), Scalar::one(f)}); }

UPoly UPoly::constant(const Scalar& c) { return UPoly(c.field(), {c}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar::zero(f_); }

Scalar UPoly::lead() const {
  if (c_.empty()) throw DomainError("leading coefficient of zero");
  return c_.back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(f_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UPoly(f_, std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(f_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UPoly(f_, std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (c_.empty() || o.c_.empty()) return UPoly(f_);
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::zero(f_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(f_, std::move(r));
}

UPoly UPoly::operator*(const Scalar& s) const {
  std::vector<Scalar> r = c_;
  for (auto& x : r) x *= s;
  return UPoly(f_, std::move(r));
}

bool operator==(const UPoly& a, const UPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

Scalar UPoly::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(f_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Scalar> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Scalar::from_int(f_, static_cast<long>(i)));
  return UPoly(f_, std::move(r));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * lead().inverse();
}

std::string UPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += c_[i].to_string();
    if (i) s += "*t^" + std::to_string(i);
  }
  return s;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("univariate division by zero");
  const Field& f = a.field();
  std::vector<Scalar> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(f), a};
  std::vector<Scalar> q(a.degree() - db + 1, Scalar::zero(f));
  Scalar inv = b.lead().inverse();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i].is_zero()) continue;
    Scalar c = r[i] * inv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeffs()[j];
  }
  return {UPoly(f, std::move(q)), UPoly(f, std::move(r))};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return f.monic();
  UPoly d = f.derivative();
  if (d.is_zero()) throw DomainError("squarefree part: derivative vanishes (degree not below characteristic)");
  UPoly g = gcd(f, d);
  return divmod(f, g).first.monic();
}

UPoly powmod(const UPoly& a, const mpz_class& e, const UPoly& m) {
  UPoly r = UPoly::constant(Scalar::one(a.field()));
  UPoly b = divmod(a, m).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = divmod(r * r, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = divmod(r * b, m).second;
  }
  return r;
}

namespace {

// Split a monic product of distinct linear factors over a finite field.
void split_linear(const UPoly& g, std::vector<Scalar>& out, std::mt19937_64& rng) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const Field& f = g.field();
  mpz_class q = static_cast<unsigned long>(f.size());
  mpz_class half = (q - 1) / 2;
  for (;;) {
    UPoly h(f, {random_scalar(f, rng, 0), Scalar::one(f)});
    UPoly w = powmod(h, half, g) - UPoly::constant(Scalar::one(f));
    UPoly d = gcd(g, w);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, out, rng);
      split_linear(divmod(g, d).first.monic(), out, rng);
      return;
    }
  }
}

std::vector<Scalar> roots_finite(const UPoly& f) {
  std::vector<Scalar> out;
  if (f.degree() <= 0) return out;
  const Field& fld = f.field();
  UPoly m = f.monic();
  mpz_class q = static_cast<unsigned long>(fld.size());
  UPoly xq = powmod(UPoly::x(fld), q, m);
  UPoly g = gcd(m, xq - UPoly::x(fld));
  std::mt19937_64 rng(0x5eed);
  split_linear(g, out, rng);
  return out;
}

// Primitive integer coefficients of a rational polynomial.
std::vector<mpz_class> integer_coeffs(const UPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& c : f.coeffs()) {
    mpq_class v = c.rational() * l;
    z.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  for (auto& v : z) v /= g;
  return z;
}

bool rational_reconstruct(const mpz_class& r, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

std::vector<Scalar> roots_rational(const UPoly& f0) {
  std::vector<Scalar> out;
  const Field q = Field::rational();
  UPoly f = squarefree_part(f0);
  if (f.degree() <= 0) return out;
  if (f.coeff(0).is_zero()) {
    out.push_back(Scalar::zero(q));
    f = divmod(f, UPoly::x(q)).first;
  }
  if (f.degree() <= 0) return out;
  if (f.degree() == 1) {
    out.push_back(-f.coeff(0) / f.coeff(1));
    return out;
  }
  std::vector<mpz_class> z = integer_coeffs(f);
  mpz_class a0 = abs(z.front()), an = abs(z.back());
  mpz_class need = 2 * a0 * an + 1;
  // Pick a prime of good reduction.
  std::uint32_t p = 10007;
  Field fp;
  UPoly fpoly(q);
  for (;; p += 2) {
    if (!is_prime_u32(p)) continue;
    if (mpz_fdiv_ui(z.back().get_mpz_t(), p) == 0) continue;
    fp = Field::prime(p);
    std::vector<Scalar> c;
    for (const auto& v : z) c.push_back(Scalar::from_mpz(fp, v));
    UPoly g(fp, c);
    if (gcd(g, g.derivative()).degree() == 0) {
      fpoly = g;
      break;
    }
  }
  auto eval_mod = [&](const mpz_class& x, const mpz_class& m, bool deriv) {
    mpz_class acc = 0;
    for (std::size_t i = z.size(); i-- > (deriv ? 1u : 0u);) {
      mpz_class c = deriv ? z[i] * static_cast<unsigned long>(i) : z[i];
      acc = (acc * x + c) % m;
    }
    return acc;
  };
  for (const Scalar& r : roots_finite(fpoly)) {
    mpz_class x = r.residue();
    mpz_class m = p;
    while (m < need) {
      mpz_class m2 = m * m;
      mpz_class fx = eval_mod(x, m2, false);
      mpz_class dx = eval_mod(x, m2, true);
      mpz_class inv;
      if (!mpz_invert(inv.get_mpz_t(), dx.get_mpz_t(), m2.get_mpz_t())) break;
      x = ((x - fx * inv) % m2 + m2) % m2;
      m = m2;
    }
    mpq_class cand;
    if (!rational_reconstruct(x, m, cand)) continue;
    Scalar s = Scalar::from_mpq(q, cand);
    if (f.eval(s).is_zero()) out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<Scalar> roots(const UPoly& f) {
  if (f.is_zero()) throw DomainError("roots of the zero polynomial");
  if (f.field().is_rational()) return roots_rational(f);
  return roots_finite(f);
}

bool is_irreducible_finite(const UPoly& f) {
  if (!f.field().is_finite()) throw DomainError("is_irreducible_finite needs a finite field");
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  const Field& fld = f.field();
  UPoly m = f.monic();
  mpz_class q = static_cast<unsigned long>(fld.size());
  UPoly x = UPoly::x(fld);
  UPoly cur = x;
  for (int i = 1; i <= f.degree() / 2; ++i) {
    cur = powmod(cur, q, m);
    if (gcd(m, cur - x).degree() > 0) return false;
  }
  return true;
}

UPoly to_upoly(const MultiPoly& f, std::size_t var) {
  std::vector<Scalar> c;
  for (const auto& [m, s] : f.terms()) {
    if (m.degree() != m[var]) throw DomainError("polynomial is not univariate in the requested variable");
    unsigned e = m[var];
    if (c.size() <= e) c.resize(e + 1, Scalar::zero(f.field()));
    c[e] += s;
  }
  return UPoly(f.field(), std::move(c));
}

MultiPoly from_upoly(const UPoly& u, const RingPtr& ring, std::size_t var) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < u.coeffs().size(); ++i)
    if (!u.coeffs()[i].is_zero()) t.emplace_back(Monomial::var(var, static_cast<unsigned>(i)), u.coeffs()[i]);
  return MultiPoly(ring, std::move(t));
}

}  // namespace qsym
