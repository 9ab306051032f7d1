#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsym/poly.hpp"
#include "qsym/scalar.hpp"

namespace qsym {

using Vec = std::vector<Scalar>;

/// Dense matrix of Scalars over one field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& f, std::size_t n);
  /// Rows must be non-empty and rectangular.
  static Matrix from_rows(const Field& f, const std::vector<std::vector<long>>& rows);
  static Matrix from_rows(const std::vector<Vec>& rows);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return c_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_symmetric() const;
  bool is_zero() const;
  std::size_t rank() const;
  Scalar det() const;
  std::optional<Matrix> inverse() const;
  /// Basis of {v : A v = 0}.
  std::vector<Vec> kernel() const;
  /// Reduced row echelon form and pivot columns.
  std::pair<Matrix, std::vector<std::size_t>> rref() const;
  Matrix to_field(const Field& f) const;

  std::string to_string() const;

 private:
  Field field_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

/// Characteristic polynomial coefficients det(t I - A), low degree first.
Vec charpoly(const Matrix& a);

/// A symmetric matrix as (D, T) with T^T A T = D diagonal and T invertible.
struct Congruence {
  Matrix diagonal;
  Matrix transform;
};
/// Symmetric Gaussian elimination; characteristic 2 is excluded by the field type.
Congruence diagonalize_symmetric(const Matrix& a);

/// Invertible linear substitution x -> T x on the ring's variables.
class CoordChange {
 public:
  /// Throws DomainError when T is singular or not square.
  explicit CoordChange(Matrix t);
  static CoordChange identity(const Field& f, std::size_t n);
  /// Uniformly random invertible matrix with entries of the given height.
  static CoordChange random(const Field& f, std::size_t n, std::mt19937_64& rng, long height = 5);
  const Matrix& matrix() const noexcept { return t_; }
  CoordChange inverse() const;
  /// (this then o): f -> f(T_this T_o x).
  CoordChange compose(const CoordChange& o) const;

 private:
  Matrix t_;
};

/// f(T x).
MultiPoly apply_coord_change(const MultiPoly& f, const CoordChange& t);

/// T with T e_0 = p (first column p, remaining columns completing a basis).
CoordChange move_point_to_e0(const Vec& p);

/// Linear form sum c_i x_i as a coefficient vector (constant term rejected).
Vec linear_coefficients(const MultiPoly& f);
MultiPoly linear_form(const RingPtr& ring, const Vec& c);

/// Canonical projective representative: first nonzero coordinate 1.
Vec normalize_point(const Vec& p);
bool is_zero_vec(const Vec& v);
Vec ints_to_vec(const Field& f, const std::vector<long>& v);
std::string vec_to_string(const Vec& v);

}  // namespace qsym
