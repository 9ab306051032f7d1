#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsym/groebner.hpp"
#include "qsym/linalg.hpp"
#include "qsym/poly.hpp"

namespace qsym {

/// A(x) = A_0 x_0 + ... + A_n x_n with symmetric d x d constant matrices.
class PencilMatrix {
 public:
  PencilMatrix() = default;
  /// One coefficient matrix per ring variable, all symmetric of one size.
  PencilMatrix(RingPtr ring, std::vector<Matrix> coefficients);
  /// Entries must be linear forms (or zero); the matrix must be symmetric.
  static PencilMatrix from_entries(const RingPtr& ring, const std::vector<std::vector<MultiPoly>>& entries);
  static PencilMatrix from_strings(const RingPtr& ring, const std::vector<std::vector<std::string>>& entries);

  const RingPtr& ring() const noexcept { return ring_; }
  const Field& field() const { return ring_->field; }
  std::size_t size() const noexcept { return d_; }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<Matrix>& coefficients() const noexcept { return a_; }
  const Matrix& coefficient(std::size_t k) const { return a_.at(k); }

  MultiPoly entry(std::size_t i, std::size_t j) const;
  std::vector<std::vector<MultiPoly>> entries() const;
  /// A(point).
  Matrix evaluate(const Vec& point) const;

  /// A(T x).
  PencilMatrix substitute(const CoordChange& t) const;
  /// T^T A(x) T.
  PencilMatrix congruence(const Matrix& t) const;
  PencilMatrix to_field(const Field& f) const;

  friend bool operator==(const PencilMatrix& a, const PencilMatrix& b);

 private:
  RingPtr ring_;
  std::size_t d_ = 0;
  std::vector<Matrix> a_;
};

/// Pencil file text: `ring:`, `vars:`, `size:` headers then `a i j : expr` lines.
PencilMatrix parse_pencil(std::string_view text);
std::string format_pencil(const PencilMatrix& m);

/// Determinant of the rows x cols submatrix of A(x) (equal-length index lists).
MultiPoly minor(const PencilMatrix& m, const std::vector<std::size_t>& rows,
                const std::vector<std::size_t>& cols);
MultiPoly determinant(const PencilMatrix& m);
/// All distinct nonzero k x k minors (up to the row/column symmetry).
std::vector<MultiPoly> all_minors(const PencilMatrix& m, std::size_t k);
/// Ideal of the (k+1) x (k+1) minors: the rank <= k locus.
IdealHandle rank_locus_ideal(const PencilMatrix& m, std::size_t k);
/// (F, dF/dx_0, ..., dF/dx_n).
IdealHandle jacobian_ideal(const MultiPoly& f);
/// d - rank A(point).
std::size_t corank_at(const PencilMatrix& m, const Vec& point);
/// (y^T A_0 y, ..., y^T A_n y) in variables y0..y{d-1}.
IdealHandle web_base_locus_ideal(const PencilMatrix& m);
RingPtr web_ring(const PencilMatrix& m);

/// Entries are distinct variables x<i><j>, i <= j, in a ring of d(d+1)/2 variables.
PencilMatrix generic_symmetric_pencil(const Field& f, std::size_t d);

struct SquareRoot {
  MultiPoly root;
  Scalar scale;  // root^2 = scale * F
};
/// Square root up to a scalar; nullopt when F is not a constant times a square.
std::optional<SquareRoot> poly_sqrt(const MultiPoly& f);

enum class NodeMode { Rank2, Rank3 };

struct NodeNormalization {
  PencilMatrix matrix;    // T_y^T A(T_x x) T_y
  CoordChange x_change;   // T_x, with T_x e_0 = p
  Matrix y_change;        // T_y
};
/// Rank2: the new A_0 is the quadric y0*y1 (entries (0,1), (1,0) equal 1/2).
/// Rank3: the new A_0 is diagonal with the kernel in the last position.
/// Throws NormalizationError when the splitting needs a square root outside the field.
NodeNormalization normalize_rank2_node(const PencilMatrix& m, const Vec& p, NodeMode mode = NodeMode::Rank2);

enum class PencilType { None, CommonVertex, SingleRank2 };

struct PencilReport {
  std::size_t generic_rank = 0;
  bool degenerate = false;
  MultiPoly discriminant;          // det on the line, in (s, t)
  int discriminant_length = -1;    // -1 when the line lies in the discriminant
  int rank_drop_length = -1;       // length of the rank <= generic-1 subscheme, -1 if none
  PencilType type = PencilType::None;
  std::optional<Vec> common_vertex;
  std::optional<MultiPoly> common_plane;   // in y, for lines of rank-2 points
  std::optional<DimDegree> residual_base;  // base locus with the plane removed
};
/// Restriction of M to the line through a and b.
PencilReport analyze_pencil(const PencilMatrix& m, const Vec& a, const Vec& b);

std::string to_string(PencilType t);

}  // namespace qsym
