#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsym/groebner.hpp"
#include "qsym/linalg.hpp"
#include "qsym/symmetroid.hpp"

namespace qsym {

enum class PointLabel { Smooth, Node, TacnodeCandidate, Corank2Cone, TriplePoint, Other };
std::string to_string(PointLabel l);

struct SingularPointReport {
  Vec point;
  int multiplicity = 0;
  std::optional<std::size_t> corank;
  int tangent_cone_rank = 0;
  bool tangent_cone_square = false;
  PointLabel label = PointLabel::Smooth;
};

/// F(T x) = sum_k x_0^(deg-k) F_k(x_1..x_n) with T e_0 = p.
struct LocalExpansion {
  CoordChange change;
  std::vector<MultiPoly> parts;  // parts[k] = F_k
  int multiplicity() const;
};
LocalExpansion local_expansion(const MultiPoly& f, const Vec& p);

SingularPointReport point_report(const MultiPoly& f, const PencilMatrix* m, const Vec& p);

/// Ideal of linear forms vanishing on the span of the given points.
IdealHandle span_ideal(const RingPtr& ring, const std::vector<Vec>& points);

enum class CurveKind { Line, Conic, LinePair };
std::string to_string(CurveKind k);

struct SingularCurve {
  CurveKind kind = CurveKind::Line;
  std::vector<MultiPoly> equations;       // two linear forms, or a linear form and a quadric
  std::size_t generic_corank = 0;         // decided by minor containment in the curve ideal
  std::vector<std::size_t> sampled_coranks;  // at rational points, lines only
  std::optional<std::pair<Vec, Vec>> span;   // two rational points of a line
  std::uint64_t modulus = 0;              // nonzero for findings valid only modulo this prime
};

struct CurveSearch {
  std::vector<SingularCurve> curves;
  long section_degree = 0;                // distinct points of a general plane section
  long unexplained_degree = 0;
  std::vector<SingularCurve> modular_findings;
};

/// Singular lines and conics of V(F). `m` may be null; hints are extra candidate points.
CurveSearch find_singular_curves(const MultiPoly& f, const PencilMatrix* m, const std::vector<Vec>& hints,
                                 std::uint64_t seed = 1);

enum class FamilyLabel { Rank3Line, Rank2Line, DoubleConic, TriplePoint, Tacnode, NodalIrrational, TwoLines, OtherOrDegenerate };
std::string to_string(FamilyLabel l);
std::optional<FamilyLabel> parse_family_label(const std::string& s);

struct LineRankData {
  long rank2_length = 0;         // length of the rank <= 2 subscheme of the line, -1 if the whole line
  long rank2_length_off_special = 0;
  long rank2_points_off_special = 0;
  long surface_rank2_length_off_special = 0;  // the surface's rank <= 2 scheme supported on the line
};

struct Evidence {
  std::string reason;
  bool irreducible = false;
  DimDegree singular{-1, 0};
  std::vector<SingularCurve> curves;
  long unexplained_curve_degree = 0;
  std::vector<SingularCurve> modular_findings;
  std::vector<LineRankData> line_rank_data;    // parallel to curves (lines only filled)
  std::vector<SingularPointReport> curve_points;     // rational points where curves meet
  std::vector<SingularPointReport> isolated_points;  // rational isolated singular points
  long isolated_length = 0;          // singular scheme off the curves
  long isolated_nodes = 0;           // ... with non-node rational points removed
  long isolated_node_points = 0;
  bool nodes_reduced = false;
  long rank2_isolated = 0;           // isolated nodes of corank >= 2
  long rank2_residual_length = 0;    // rank <= 2 locus off the curves of corank >= 2
  long rank2_residual_points = 0;
};

struct Classification {
  FamilyLabel label = FamilyLabel::OtherOrDegenerate;
  Evidence evidence;
};

struct ClassifyOptions {
  std::vector<Vec> hints;
  std::uint64_t seed = 1;
  bool harvest = true;
};

/// FamilyLabel as a function of the evidence alone.
FamilyLabel decide_family(const Evidence& e);
Classification classify_family(const PencilMatrix& m, const ClassifyOptions& opts = {});

/// Irreducibility certificate: a line on which F restricts to an irreducible
/// quartic modulo some prime (or over the finite base field).
bool certify_irreducible(const MultiPoly& f, std::uint64_t seed = 1, std::string* why = nullptr);

struct RamificationSplit {
  NodeNormalization normalization;
  MultiPoly f2, f3, f4;
  MultiPoly r1, r2;
  MultiPoly ramification;  // F_3^2 - 4 F_2 F_4
};
/// Throws InternalError if r1 r2 differs from the ramification sextic.
RamificationSplit ramification_split(const PencilMatrix& m, const Vec& p);

struct ZConicResult {
  IdealHandle z;
  long length = 0;
  bool on_conic = false;
};
/// For a pencil already normalized at [1:0:...:0].
ZConicResult z_conic_test(const PencilMatrix& normalized);

/// (k+1)(n-k).
long grassmannian_dim(long k, long n);
/// (l+1)(m-l) + (k-l)(n-k).
long schubert_dim(long l, long m, long k, long n);

}  // namespace qsym
