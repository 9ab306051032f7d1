#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsym/linalg.hpp"
#include "qsym/symmetroid.hpp"

namespace qsym {

/// |P^{nvars-1}(F_q)|.
std::uint64_t projective_point_count(std::uint64_t q, std::size_t nvars);
/// The index-th canonical point (first nonzero coordinate 1) in enumeration order.
Vec projective_point(const Field& f, std::size_t nvars, std::uint64_t index);
/// Element number i of a finite field (0 <= i < q).
Scalar field_element(const Field& f, std::uint64_t i);

struct CorankCensus {
  std::uint64_t q = 0;
  std::vector<std::uint64_t> counts;  // counts[c] = points of corank exactly c
  std::uint64_t total() const;
  friend bool operator==(const CorankCensus& a, const CorankCensus& b) { return a.q == b.q && a.counts == b.counts; }
};

/// Census over the point indices [begin, end).
CorankCensus corank_census_range(const PencilMatrix& m, const Field& f, std::uint64_t begin, std::uint64_t end);
/// Full census; threads > 1 splits the index range.
CorankCensus corank_census(const PencilMatrix& m, const Field& f, unsigned threads = 1);
CorankCensus merge(const CorankCensus& a, const CorankCensus& b);
/// Points over f with corank at least c, in enumeration order.
std::vector<Vec> points_with_corank_at_least(const PencilMatrix& m, const Field& f, std::size_t c);

/// Points of P^n(f) where F and all partials vanish.
std::vector<Vec> harvest_singular_points(const MultiPoly& f_poly, const Field& f);

/// One (p, q) seed per line through at least three of the points.
std::vector<std::pair<Vec, Vec>> collinear_candidates(const std::vector<Vec>& points);
/// Coplanar 5-tuples with no three collinear, at most `limit` of them.
std::vector<std::array<Vec, 5>> coplanar_conic_candidates(const std::vector<Vec>& points, std::size_t limit = 1000);

}  // namespace qsym
