#include "qsym/scalar.hpp"

#include <cctype>
#include <sstream>

#include "qsym/error.hpp"

namespace qsym {

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint32_t smallest_nonresidue(std::uint32_t p) {
  for (std::uint32_t n = 2;; ++n)
    if (powmod(n, (p - 1) / 2, p) == p - 1) return n;
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u})
    if (n % q == 0) return n == q;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 7ull, 61ull}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p < 3 || p >= (1u << 31) || !is_prime_u32(p))
    throw DomainError("field characteristic must be an odd prime below 2^31, got " +
                      std::to_string(p));
  Field f;
  f.kind_ = FieldKind::Prime;
  f.p_ = p;
  f.nr_ = smallest_nonresidue(p);
  return f;
}

Field Field::prime_square(std::uint32_t p) {
  Field f = prime(p);
  f.kind_ = FieldKind::PrimeSquare;
  return f;
}

Field Field::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "Q" || s == "QQ") return rational();
  auto bad = [&] { return DomainError("unknown field '" + std::string(text) + "'"); };
  if (s.size() < 5 || s.compare(0, 3, "GF(") != 0 || s.back() != ')') throw bad();
  std::string inner = s.substr(3, s.size() - 4);
  bool square = false;
  if (auto comma = inner.find(','); comma != std::string::npos) {
    if (inner.substr(comma + 1) != "2") throw bad();
    inner = inner.substr(0, comma);
    square = true;
  }
  if (inner.empty() || inner.size() > 10) throw bad();
  for (char c : inner)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
  unsigned long long p = std::stoull(inner);
  if (p >= (1ull << 31)) throw bad();
  return square ? prime_square(static_cast<std::uint32_t>(p))
                : prime(static_cast<std::uint32_t>(p));
}

std::uint64_t Field::size() const noexcept {
  switch (kind_) {
    case FieldKind::Rational: return 0;
    case FieldKind::Prime: return p_;
    case FieldKind::PrimeSquare: return std::uint64_t(p_) * p_;
  }
  return 0;
}

Field Field::base() const {
  if (kind_ != FieldKind::PrimeSquare) return *this;
  Field f = *this;
  f.kind_ = FieldKind::Prime;
  return f;
}

std::string Field::to_string() const {
  switch (kind_) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Prime: return "GF(" + std::to_string(p_) + ")";
    case FieldKind::PrimeSquare: return "GF(" + std::to_string(p_) + ",2)";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.to_string(); }

// ---------------------------------------------------------------------------

Scalar Scalar::zero(const Field& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const Field& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const Field& f, long v) {
  Scalar s = zero(f);
  if (f.is_rational()) {
    s.q_ = v;
  } else {
    long long m = static_cast<long long>(v) % static_cast<long long>(f.characteristic());
    if (m < 0) m += f.characteristic();
    s.a_ = static_cast<std::uint32_t>(m);
  }
  return s;
}

Scalar Scalar::from_mpz(const Field& f, const mpz_class& v) {
  Scalar s = zero(f);
  if (f.is_rational()) {
    s.q_ = v;
  } else {
    s.a_ = static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), f.characteristic()));
  }
  return s;
}

Scalar Scalar::from_mpq(const Field& f, const mpq_class& v) {
  if (f.is_rational()) {
    Scalar s = zero(f);
    s.q_.get_num() = v.get_num();
    s.q_.get_den() = v.get_den();
    if (s.q_.get_den() == 0) throw DomainError("zero denominator");
    s.q_.canonicalize();
    return s;
  }
  std::uint32_t p = f.characteristic();
  std::uint32_t den = static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_den_mpz_t(), p));
  if (den == 0)
    throw BadPrime("denominator " + v.get_den().get_str() + " vanishes modulo " +
                   std::to_string(p) + "; choose another prime");
  Scalar s = zero(f);
  std::uint64_t num = mpz_fdiv_ui(v.get_num_mpz_t(), p);
  s.a_ = static_cast<std::uint32_t>(num * mod_inv(den, p) % p);
  return s;
}

Scalar Scalar::from_residues(const Field& f, std::uint64_t a, std::uint64_t b) {
  if (f.is_rational()) throw FieldMismatch("residues given for the rational field");
  if (f.kind() == FieldKind::Prime && b % f.characteristic() != 0)
    throw FieldMismatch("extension component given for GF(p)");
  Scalar s = zero(f);
  s.a_ = static_cast<std::uint32_t>(a % f.characteristic());
  s.b_ = static_cast<std::uint32_t>(b % f.characteristic());
  return s;
}

Scalar Scalar::omega(const Field& f) {
  if (f.kind() != FieldKind::PrimeSquare) throw FieldMismatch("w exists only in GF(p,2)");
  return from_residues(f, 0, 1);
}

bool Scalar::is_zero() const noexcept {
  if (field_.is_rational()) return sgn(q_) == 0;
  return a_ == 0 && b_ == 0;
}

bool Scalar::is_one() const noexcept {
  if (field_.is_rational()) return q_ == 1;
  return a_ == 1 && b_ == 0;
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) throw FieldMismatch("rational value requested from " + field_.to_string());
  return q_;
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_)
    throw FieldMismatch("scalar field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational()) {
    r.q_ = -q_;
  } else {
    std::uint32_t p = field_.characteristic();
    r.a_ = a_ ? p - a_ : 0;
    r.b_ = b_ ? p - b_ : 0;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ += o.q_;
  } else {
    std::uint32_t p = field_.characteristic();
    a_ = static_cast<std::uint32_t>((std::uint64_t(a_) + o.a_) % p);
    b_ = static_cast<std::uint32_t>((std::uint64_t(b_) + o.b_) % p);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ -= o.q_;
  } else {
    std::uint32_t p = field_.characteristic();
    a_ = static_cast<std::uint32_t>((std::uint64_t(a_) + p - o.a_) % p);
    b_ = static_cast<std::uint32_t>((std::uint64_t(b_) + p - o.b_) % p);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (field_.is_rational()) {
    q_ *= o.q_;
    return *this;
  }
  std::uint64_t p = field_.characteristic();
  if (field_.kind() == FieldKind::Prime) {
    a_ = static_cast<std::uint32_t>(std::uint64_t(a_) * o.a_ % p);
    return *this;
  }
  // (a + bw)(c + dw) = ac + bd r + (ad + bc) w
  std::uint64_t ac = std::uint64_t(a_) * o.a_ % p;
  std::uint64_t bd = std::uint64_t(b_) * o.b_ % p;
  std::uint64_t ad = std::uint64_t(a_) * o.b_ % p;
  std::uint64_t bc = std::uint64_t(b_) * o.a_ % p;
  a_ = static_cast<std::uint32_t>((ac + bd * field_.nonresidue()) % p);
  b_ = static_cast<std::uint32_t>((ad + bc) % p);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  Scalar r = *this;
  if (field_.is_rational()) {
    r.q_ = 1 / q_;
    return r;
  }
  std::uint32_t p = field_.characteristic();
  if (field_.kind() == FieldKind::Prime) {
    r.a_ = mod_inv(a_, p);
    return r;
  }
  // 1/(a + bw) = (a - bw)/(a^2 - r b^2)
  std::uint64_t n = (std::uint64_t(a_) * a_ % p +
                     p - std::uint64_t(b_) * b_ % p * field_.nonresidue() % p) % p;
  std::uint64_t ni = mod_inv(static_cast<std::uint32_t>(n), p);
  r.a_ = static_cast<std::uint32_t>(a_ * ni % p);
  r.b_ = static_cast<std::uint32_t>((p - b_) % p * ni % p);
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  if (field_.is_rational()) {
    Scalar r = *this;
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
    r.q_ = mpq_class(n, d);
    return r;
  }
  Scalar r = one(field_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::frobenius() const {
  if (field_.kind() != FieldKind::PrimeSquare) return *this;
  Scalar r = *this;
  r.b_ = b_ ? field_.characteristic() - b_ : 0;
  return r;
}

bool Scalar::is_square() const {
  if (is_zero()) return true;
  if (field_.is_rational())
    return sgn(q_) > 0 && mpz_perfect_square_p(q_.get_num_mpz_t()) &&
           mpz_perfect_square_p(q_.get_den_mpz_t());
  return pow((field_.size() - 1) / 2).is_one();
}

std::optional<Scalar> Scalar::sqrt() const {
  if (is_zero()) return *this;
  if (field_.is_rational()) {
    if (!is_square()) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q_.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q_.get_den_mpz_t());
    Scalar r = *this;
    r.q_ = mpq_class(n, d);
    return r;
  }
  if (!is_square()) return std::nullopt;
  // Tonelli-Shanks in the cyclic group of order q - 1.
  std::uint64_t q1 = field_.size() - 1;
  int s = 0;
  std::uint64_t t = q1;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  Scalar z = zero(field_);
  for (std::uint64_t k = 2;; ++k) {
    z = field_.kind() == FieldKind::Prime ? from_int(field_, static_cast<long>(k))
                                          : from_residues(field_, k, 1);
    if (!z.is_square()) break;
  }
  Scalar c = z.pow(t);
  Scalar x = pow((t + 1) / 2);
  Scalar b = pow(t);
  int m = s;
  while (!b.is_one()) {
    int i = 0;
    Scalar bb = b;
    while (!bb.is_one()) {
      bb *= bb;
      ++i;
    }
    Scalar g = c;
    for (int j = 0; j < m - i - 1; ++j) g *= g;
    x *= g;
    c = g * g;
    b *= c;
    m = i;
  }
  return x;
}

Scalar Scalar::to_field(const Field& target) const {
  if (target == field_) return *this;
  if (field_.is_rational()) return from_mpq(target, q_);
  if (field_.kind() == FieldKind::Prime && target.kind() == FieldKind::PrimeSquare &&
      target.characteristic() == field_.characteristic()) {
    Scalar r = zero(target);
    r.a_ = a_;
    return r;
  }
  if (field_.kind() == FieldKind::PrimeSquare && target.kind() == FieldKind::Prime &&
      target.characteristic() == field_.characteristic() && b_ == 0) {
    Scalar r = zero(target);
    r.a_ = a_;
    return r;
  }
  throw FieldMismatch("cannot move " + to_string() + " from " + field_.to_string() + " to " +
                      target.to_string());
}

bool Scalar::is_integer() const {
  if (!field_.is_rational()) return true;
  return q_.get_den() == 1;
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) return q_.get_str();
  if (field_.kind() == FieldKind::Prime || b_ == 0) return std::to_string(a_);
  std::string w = (b_ == 1 ? "" : std::to_string(b_) + "*") + "w";
  if (a_ == 0) return w;
  return "(" + std::to_string(a_) + "+" + w + ")";
}

std::size_t Scalar::hash() const noexcept {
  if (field_.is_rational()) {
    std::size_t h = mpz_fdiv_ui(q_.get_num_mpz_t(), 1000000007ul);
    return h * 31 + mpz_fdiv_ui(q_.get_den_mpz_t(), 1000000007ul);
  }
  return (std::size_t(a_) << 32) ^ b_ ^ (std::size_t(field_.characteristic()) * 0x9e3779b97f4a7c15ull);
}

bool operator==(const Scalar& x, const Scalar& y) {
  x.check_same(y);
  if (x.field_.is_rational()) return x.q_ == y.q_;
  return x.a_ == y.a_ && x.b_ == y.b_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar random_scalar(const Field& f, std::mt19937_64& rng, long height) {
  if (f.is_rational()) {
    std::uniform_int_distribution<long> d(-height, height);
    return Scalar::from_int(f, d(rng));
  }
  std::uniform_int_distribution<std::uint64_t> d(0, f.characteristic() - 1);
  std::uint64_t a = d(rng);
  std::uint64_t b = f.kind() == FieldKind::PrimeSquare ? d(rng) : 0;
  return Scalar::from_residues(f, a, b);
}

}  // namespace qsym
