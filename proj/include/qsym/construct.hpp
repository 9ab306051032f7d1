#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsym/classify.hpp"
#include "qsym/symmetroid.hpp"

namespace qsym {

/// One unvalidated draw. Integer choices are uniform in [-height, height].
PencilMatrix family_candidate(FamilyLabel label, std::uint64_t seed, const Field& field, long height);

/// Label plus the node counts a general member of the family has.
bool meets_family_expectation(FamilyLabel label, const Classification& c);

struct GeneratedMember {
  PencilMatrix matrix;
  Classification classification;
  unsigned retries = 0;  // rejected draws before this one
  std::uint64_t used_seed = 0;
};

/// Draws with seeds derived from `seed` until classification confirms the
/// family, at most 8 retries; throws GenericityError afterwards.
GeneratedMember gen_family(FamilyLabel label, std::uint64_t seed, const Field& field = Field::rational(),
                           long height = 10);

struct ExpectedCurve {
  CurveKind kind;
  std::size_t generic_corank;
};

struct ExpectedPoint {
  PointLabel label;
  int multiplicity;
  std::size_t corank;
  bool cone_square = false;
};

/// Anything left empty is not checked.
struct CatalogExpectation {
  std::optional<FamilyLabel> label;
  std::optional<std::string> determinant;
  std::vector<ExpectedCurve> curves;
  std::optional<long> isolated_nodes;
  std::optional<long> rank2_isolated;
  std::optional<long> rank2_residual_points;
  std::optional<long> rank3_line_rank2_length;     // each corank-1 line
  std::optional<long> rank3_line_rank2_points_off;  // ... off the points where curves meet
  std::optional<long> rank3_line_surface_length_off;
  std::optional<ExpectedPoint> special_point;   // an isolated or curve-meeting point
  std::optional<DimDegree> web_base;
  std::optional<long> web_base_points;
};

struct CatalogEntry {
  std::string id;
  std::string topic;
  PencilMatrix matrix;
  CatalogExpectation expect;
};

std::vector<std::string> catalog_ids();
/// Throws DomainError for an unknown id.
CatalogEntry paper_catalog(const std::string& id);

}  // namespace qsym
