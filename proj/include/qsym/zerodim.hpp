#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qsym/groebner.hpp"
#include "qsym/linalg.hpp"
#include "qsym/univariate.hpp"

namespace qsym {

/// Radical of a zero-dimensional affine ideal together with its quotient basis.
struct AffineRadical {
  RingPtr ring;
  std::vector<MultiPoly> basis;  // reduced degrevlex basis of the radical
  long points = 0;               // distinct points over the algebraic closure
};

/// Standard monomials of a zero-dimensional basis; throws DomainError when infinite.
std::vector<Monomial> standard_monomials(const std::vector<MultiPoly>& basis, std::size_t nvars);
/// Minimal polynomial of f in k[y]/I for a zero-dimensional basis.
UPoly minimal_polynomial(const MultiPoly& f, const std::vector<MultiPoly>& basis);
AffineRadical affine_radical(const RingPtr& ring, const std::vector<MultiPoly>& gens);
/// Points of a zero-dimensional affine ideal with coordinates in its field.
std::vector<Vec> affine_rational_points(const RingPtr& ring, const std::vector<MultiPoly>& gens);

/// A finite projective scheme V(I) in an affine chart containing all its points.
class ZeroDimScheme {
 public:
  /// I homogeneous of projective dimension <= 0.
  explicit ZeroDimScheme(const IdealHandle& ideal, std::uint64_t seed = 1);

  const IdealHandle& ideal() const noexcept { return ideal_; }
  long length() const noexcept { return length_; }
  long point_count() const noexcept { return radical_.points; }
  bool is_reduced() const noexcept { return length_ == radical_.points; }

  /// Normalized projective coordinates of the points defined over the field.
  std::vector<Vec> rational_points() const;
  /// g vanishes at every point.
  bool vanishes_on(const MultiPoly& g) const;
  /// Normal form of g on the reduced point set, in the chart ring.
  MultiPoly normal_form(const MultiPoly& g) const;
  /// Distinct points where the extra homogeneous polynomials vanish too.
  long point_count_with(const std::vector<MultiPoly>& extra) const;

  /// g(T (y, 1)) in the chart ring.
  MultiPoly to_chart(const MultiPoly& g) const;
  const RingPtr& chart_ring() const noexcept { return radical_.ring; }
  const AffineRadical& radical() const noexcept { return radical_; }
  const Matrix& chart_matrix() const noexcept { return chart_; }

 private:
  IdealHandle ideal_;
  long length_ = 0;
  Matrix chart_;
  std::vector<MultiPoly> subs_;
  AffineRadical radical_;
  std::shared_ptr<Reducer> reducer_;
};

}  // namespace qsym
