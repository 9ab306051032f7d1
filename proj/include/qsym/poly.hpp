#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsym/scalar.hpp"

namespace qsym {

inline constexpr std::size_t kMaxVars = 16;
inline constexpr unsigned kMaxExponent = 255;

/// Field plus ordered variable names. Shared, immutable.
struct Ring {
  Field field;
  std::vector<std::string> vars;

  std::size_t nvars() const noexcept { return vars.size(); }
  /// Index of a variable name, or -1.
  int index_of(std::string_view name) const;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Validates names ([A-Za-z][A-Za-z0-9_]*, unique, at most kMaxVars).
RingPtr make_ring(const Field& field, std::vector<std::string> vars);
/// x0..x{n-1}.
RingPtr make_ring(const Field& field, std::size_t n, const std::string& prefix = "x");
bool same_ring(const Ring& a, const Ring& b);
inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || same_ring(*a, *b); }
/// Same variables over another field.
RingPtr with_field(const RingPtr& r, const Field& f);

class Monomial {
 public:
  Monomial() { e_.fill(0); }
  explicit Monomial(const std::vector<unsigned>& exps);

  static Monomial var(std::size_t i, unsigned power = 1);

  unsigned operator[](std::size_t i) const noexcept { return e_[i]; }
  void set(std::size_t i, unsigned v);
  unsigned degree() const noexcept { return deg_; }
  bool is_one() const noexcept { return deg_ == 0; }

  /// Throws DomainError past kMaxExponent.
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const noexcept;
  /// Precondition: o divides *this.
  Monomial operator/(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const noexcept;
  Monomial gcd(const Monomial& o) const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.deg_ == b.deg_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) noexcept { return !(a == b); }

  std::size_t hash() const noexcept;
  const std::array<std::uint8_t, kMaxVars>& raw() const noexcept { return e_; }

 private:
  std::array<std::uint8_t, kMaxVars> e_;
  std::uint16_t deg_ = 0;
};

/// Graded reverse lexicographic comparison on the first n variables: -1, 0, 1.
int compare_degrevlex(const Monomial& a, const Monomial& b, std::size_t n) noexcept;

using Term = std::pair<Monomial, Scalar>;

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
  /// Sorts, merges equal monomials and drops zeros.
  MultiPoly(RingPtr ring, std::vector<Term> terms);

  static MultiPoly constant(RingPtr ring, const Scalar& c);
  static MultiPoly constant(RingPtr ring, long c);
  static MultiPoly variable(RingPtr ring, std::size_t i);
  static MultiPoly monomial(RingPtr ring, const Monomial& m, const Scalar& c);

  const RingPtr& ring() const noexcept { return ring_; }
  const Field& field() const { return ring_->field; }
  std::size_t nvars() const { return ring_->nvars(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::size_t size() const noexcept { return terms_.size(); }
  /// Terms in decreasing degrevlex order.
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// -1 for the zero polynomial.
  int total_degree() const noexcept;
  int degree_in(std::size_t var) const noexcept;
  bool is_homogeneous() const noexcept;
  const Term& leading_term() const;
  Scalar coefficient(const Monomial& m) const;
  MultiPoly homogeneous_part(unsigned d) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Scalar& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
  friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }

  MultiPoly pow(unsigned e) const;
  MultiPoly mul_monomial(const Monomial& m, const Scalar& c) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_ring(const MultiPoly& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& f);

MultiPoly poly_product(const MultiPoly& f, const MultiPoly& g);
MultiPoly partial_derivative(const MultiPoly& f, std::size_t var);
Scalar evaluate(const MultiPoly& f, const std::vector<Scalar>& point);
/// f(subs[0], ..., subs[n-1]); all substitutes must share one target ring.
MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& subs);
/// Coefficients moved to another field (Q -> GF(p) may throw BadPrime).
MultiPoly change_field(const MultiPoly& f, const Field& target);
MultiPoly change_field(const MultiPoly& f, const RingPtr& target);
/// Rename into a ring containing every variable of f's ring by name.
MultiPoly embed(const MultiPoly& f, const RingPtr& target);
/// g / f when f divides g exactly, nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly& g, const MultiPoly& f);
/// Divide by the leading coefficient.
MultiPoly make_monic(const MultiPoly& f);
/// Over Q: scale to a primitive integer polynomial with positive leading
/// coefficient. Over finite fields: make_monic.
MultiPoly normalize_content(const MultiPoly& f);

/// Grammar: expr := ['+'|'-'] term (('+'|'-') term)*; term := factor (('*' factor) | ('/' uint))*;
/// factor := base ('^' uint)?; base := uint | varname | '(' expr ')'.
MultiPoly parse_poly(std::string_view text, const RingPtr& ring);

}  // namespace qsym

template <>
struct std::hash<qsym::Monomial> {
  std::size_t operator()(const qsym::Monomial& m) const noexcept { return m.hash(); }
};
