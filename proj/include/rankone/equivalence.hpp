#ifndef RANKONE_EQUIVALENCE_HPP
#define RANKONE_EQUIVALENCE_HPP

#include "rankone/construction.hpp"
#include "rankone/philox.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rankone {

/// Random nonempty floor union at `stage` built from 1..max_ranges ranges.
LevelSet random_level_set(const Construction& c, int stage, CounterStream& rng, int max_ranges = 4);

struct EquivalenceOptions {
  int oracle_stage = 0;       // final stage materialized by the oracle
  int set_stage = 0;          // stage of the random level sets
  std::size_t random_sets = 100;
  std::uint64_t seed = 1;
  std::int64_t budget_floors = 100'000;
};

struct EquivalenceCategory {
  std::string name;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::size_t skipped = 0;  // cases the oracle tower is too short to decide
};

struct EquivalenceReport {
  std::int64_t shift_radius = 0;  // exhaustive |a| <= h_{set_stage}
  std::vector<EquivalenceCategory> categories;
  std::vector<std::string> first_mismatches;

  bool passed() const;
};

/// Compares the interval engine against the explicit-floor oracle on
/// intersect_shifted_measure (exhaustive shifts), expr_union_measure (random terms
/// and the asymmetry displays) and sidon_witness (exhaustive m).
EquivalenceReport check_equivalence(const Construction& c, const EquivalenceOptions& options);

}  // namespace rankone

#endif
