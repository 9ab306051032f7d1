#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qsym/poly.hpp"

namespace qsym {

enum class OrderKind : std::uint8_t { DegRevLex, Lex, Block };

/// Block(k): degrevlex on the first k variables, ties broken by degrevlex on
/// the rest. Eliminates the first k variables.
struct MonomialOrder {
  OrderKind kind = OrderKind::DegRevLex;
  std::size_t block = 0;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder elimination(std::size_t k) { return {OrderKind::Block, k}; }

  std::string to_string() const;
  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && (a.kind != OrderKind::Block || a.block == b.block);
  }
};

/// -1, 0, 1 for a < b, a = b, a > b.
int compare(const MonomialOrder& order, const Monomial& a, const Monomial& b, std::size_t nvars);
/// Leading monomial of a nonzero polynomial under the order.
Monomial leading_monomial(const MultiPoly& f, const MonomialOrder& order);

/// Generators plus lazily computed reduced bases. Copies share the cache; the
/// cache is guarded internally so handles may be shared between threads.
class IdealHandle {
 public:
  IdealHandle() = default;
  IdealHandle(RingPtr ring, std::vector<MultiPoly> generators);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<MultiPoly>& generators() const noexcept { return gens_; }
  bool is_homogeneous() const noexcept { return homogeneous_; }

  /// Reduced basis, monic with respect to the order, sorted by ascending
  /// leading monomial. Computed once per order.
  const std::vector<MultiPoly>& basis(const MonomialOrder& order = MonomialOrder::degrevlex()) const;

 private:
  struct Cache;
  RingPtr ring_;
  std::vector<MultiPoly> gens_;
  bool homogeneous_ = true;
  std::shared_ptr<Cache> cache_;
};

std::vector<MultiPoly> groebner_basis(const IdealHandle& ideal,
                                      const MonomialOrder& order = MonomialOrder::degrevlex());
MultiPoly normal_form(const MultiPoly& f, const IdealHandle& ideal,
                      const MonomialOrder& order = MonomialOrder::degrevlex());
bool ideal_contains(const IdealHandle& ideal, const MultiPoly& f);
bool is_unit_ideal(const IdealHandle& ideal);
bool same_ideal(const IdealHandle& a, const IdealHandle& b);
/// Every generator of `small` lies in `big`.
bool ideal_subset(const IdealHandle& small, const IdealHandle& big);

/// Repeated normal forms against one fixed basis.
class Reducer {
 public:
  Reducer(const IdealHandle& ideal, const MonomialOrder& order = MonomialOrder::degrevlex());
  /// `basis` must already be a Groebner basis for the order.
  Reducer(RingPtr ring, const std::vector<MultiPoly>& basis,
          const MonomialOrder& order = MonomialOrder::degrevlex());
  ~Reducer();
  Reducer(Reducer&&) noexcept;
  Reducer& operator=(Reducer&&) noexcept;
  MultiPoly reduce(const MultiPoly& f) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// I intersected with the subring of the last n-k variables, as an ideal of
/// that smaller ring.
IdealHandle eliminate(const IdealHandle& ideal, std::size_t k);
/// I : f^infinity.
IdealHandle saturate(const IdealHandle& ideal, const MultiPoly& f);
/// I : K^infinity, as the intersection of I : k^infinity over generators k.
IdealHandle saturate(const IdealHandle& ideal, const IdealHandle& by);
/// I : (x_0, ..., x_n)^infinity for homogeneous I.
IdealHandle saturate_irrelevant(const IdealHandle& ideal);
/// Saturation through an adjoined variable, regardless of shortcuts.
IdealHandle saturate_by_elimination(const IdealHandle& ideal, const MultiPoly& f);
IdealHandle ideal_intersection(const IdealHandle& a, const IdealHandle& b);
IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b);
IdealHandle ideal_add(const IdealHandle& a, const std::vector<MultiPoly>& extra);
/// I : f.
IdealHandle ideal_quotient(const IdealHandle& ideal, const MultiPoly& f);

struct DimDegree {
  int dim = -1;  // projective dimension, -1 for the empty scheme
  long degree = 0;
  friend bool operator==(const DimDegree& a, const DimDegree& b) {
    return a.dim == b.dim && a.degree == b.degree;
  }
};
/// Dimension and degree of the projective scheme of a homogeneous ideal.
DimDegree hilbert_dim_degree(const IdealHandle& ideal);
/// Numerator of the Hilbert series of the leading-term ideal, low degree first.
std::vector<long> hilbert_numerator(const IdealHandle& ideal);
/// Value of the Hilbert function in degree d (homogeneous ideals).
long hilbert_function(const IdealHandle& ideal, unsigned d);

bool radical_membership(const MultiPoly& f, const IdealHandle& ideal);

/// Direct Buchberger-criterion recheck: every S-polynomial reduces to 0.
bool verify_groebner(const std::vector<MultiPoly>& basis, const MonomialOrder& order);

/// Work budget for Groebner computations on this thread. Scopes nest; the
/// innermost applies. Exceeding it throws ResourceError.
class BudgetScope {
 public:
  explicit BudgetScope(std::uint64_t units);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  std::uint64_t saved_limit_;
  std::uint64_t saved_used_;
};
std::uint64_t default_budget();
/// Units consumed in the innermost scope so far.
std::uint64_t budget_used();

/// Ring with one extra variable appended (name chosen to be fresh).
RingPtr extend_ring(const RingPtr& ring, const std::string& hint = "t");
/// Drop the first k variables.
RingPtr drop_leading_vars(const RingPtr& ring, std::size_t k);

}  // namespace qsym
