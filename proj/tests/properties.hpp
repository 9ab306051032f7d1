#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsym/groebner.hpp"
#include "qsym/symmetroid.hpp"

namespace qsym::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return cases > 0 && failures == 0; }
};

MultiPoly random_poly(const RingPtr& ring, std::mt19937_64& rng, int max_deg, int terms, long height);
MultiPoly random_form(const RingPtr& ring, std::mt19937_64& rng, int deg, int terms, long height);
PencilMatrix random_pencil(const RingPtr& ring, std::size_t d, std::mt19937_64& rng, long height);
Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng, long height);

PropertyResult ring_axioms(int cases, std::uint64_t seed);
PropertyResult euler_identity(int cases, std::uint64_t seed);
PropertyResult congruence_invariance(int cases, std::uint64_t seed);
PropertyResult buchberger_recheck(int cases, std::uint64_t seed);
PropertyResult saturation_idempotence(int cases, std::uint64_t seed);
PropertyResult projective_scaling(int cases, std::uint64_t seed);

std::vector<PropertyResult> all_properties(int cases, std::uint64_t seed);

}  // namespace qsym::testing
