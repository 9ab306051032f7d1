#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>

namespace qsym {

enum class FieldKind : std::uint8_t { Rational, Prime, PrimeSquare };

/// Coefficient field: Q, GF(p), or GF(p^2) = GF(p)[w]/(w^2 - r) where r is the
/// smallest positive quadratic non-residue mod p.
class Field {
 public:
  Field() = default;  // Q

  static Field rational() { return Field(); }
  static Field prime(std::uint32_t p);
  static Field prime_square(std::uint32_t p);
  /// Accepts "Q", "GF(p)", "GF(p,2)" (whitespace tolerant).
  static Field parse(std::string_view text);

  FieldKind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == FieldKind::Rational; }
  bool is_finite() const noexcept { return kind_ != FieldKind::Rational; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t nonresidue() const noexcept { return nr_; }
  /// Number of elements; 0 for Q.
  std::uint64_t size() const noexcept;
  /// The prime subfield GF(p) of GF(p,2); identity otherwise.
  Field base() const;

  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const Field& a, const Field& b) noexcept { return !(a == b); }

 private:
  FieldKind kind_ = FieldKind::Rational;
  std::uint32_t p_ = 0;
  std::uint32_t nr_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Field& f);

bool is_prime_u32(std::uint32_t n);

class Scalar {
 public:
  Scalar() = default;  // 0 in Q

  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar from_int(const Field& f, long v);
  static Scalar from_mpz(const Field& f, const mpz_class& v);
  /// Throws BadPrime when the denominator vanishes mod p.
  static Scalar from_mpq(const Field& f, const mpq_class& v);
  /// a + b*w in GF(p,2); for GF(p) b must be 0.
  static Scalar from_residues(const Field& f, std::uint64_t a, std::uint64_t b = 0);
  /// The generator w of GF(p,2) over GF(p).
  static Scalar omega(const Field& f);

  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  const mpq_class& rational() const;
  std::uint32_t residue() const noexcept { return a_; }
  std::uint32_t ext_residue() const noexcept { return b_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws DomainError on zero.
  Scalar inverse() const;
  /// Non-negative exponent; 0^0 = 1.
  Scalar pow(std::uint64_t e) const;
  /// x -> x^p; identity on Q and GF(p).
  Scalar frobenius() const;
  bool is_square() const;
  /// Some square root, or none when the element is a non-square in its field.
  std::optional<Scalar> sqrt() const;

  /// Reinterpret in another field: Q -> GF(p) / GF(p,2) (may throw BadPrime),
  /// GF(p) -> GF(p,2), identity. Anything else is a FieldMismatch.
  Scalar to_field(const Field& target) const;

  /// Integer-valued? Always true over finite fields.
  bool is_integer() const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

 private:
  void check_same(const Scalar& o) const;

  Field field_;
  mpq_class q_;
  std::uint32_t a_ = 0;
  std::uint32_t b_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Uniform element of a finite field, or an integer in [-height, height] over Q.
Scalar random_scalar(const Field& f, std::mt19937_64& rng, long height);

}  // namespace qsym

template <>
struct std::hash<qsym::Scalar> {
  std::size_t operator()(const qsym::Scalar& s) const noexcept { return s.hash(); }
};
