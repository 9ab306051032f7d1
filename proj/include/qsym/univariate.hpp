#pragma once

#include <vector>

#include "qsym/poly.hpp"
#include "qsym/scalar.hpp"

namespace qsym {

/// Dense univariate polynomial, coefficients low degree first, no trailing zeros.
class UPoly {
 public:
  explicit UPoly(Field f) : f_(f) {}
  UPoly(Field f, std::vector<Scalar> c);
  static UPoly x(const Field& f);
  static UPoly constant(const Scalar& c);

  const Field& field() const noexcept { return f_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const noexcept { return c_; }
  Scalar coeff(std::size_t i) const;
  Scalar lead() const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Scalar& s) const;
  friend bool operator==(const UPoly& a, const UPoly& b);

  Scalar eval(const Scalar& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  std::string to_string() const;

 private:
  void trim();
  Field f_;
  std::vector<Scalar> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero when both inputs are zero).
UPoly gcd(UPoly a, UPoly b);
/// Monic product of the distinct irreducible factors (characteristic larger
/// than the degree is assumed for finite fields).
UPoly squarefree_part(const UPoly& f);
/// a^e mod m over a finite field.
UPoly powmod(const UPoly& a, const mpz_class& e, const UPoly& m);
/// Distinct roots lying in the coefficient field.
std::vector<Scalar> roots(const UPoly& f);
/// Irreducibility over a finite coefficient field (Ben-Or).
bool is_irreducible_finite(const UPoly& f);

/// Univariate view of a polynomial that involves only variable `var`.
UPoly to_upoly(const MultiPoly& f, std::size_t var);
MultiPoly from_upoly(const UPoly& u, const RingPtr& ring, std::size_t var);

}  // namespace qsym
