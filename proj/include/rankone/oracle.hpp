#ifndef RANKONE_ORACLE_HPP
#define RANKONE_ORACLE_HPP

// Brute-force reference model of a rank-one construction.
//
// Every floor of the final tower is materialized and every set is a bitmap over
// floors. Nothing here uses LevelSet algebra or the stage-geometry cache; the
// oracle reads only the raw ConstructionParams.

#include "rankone/construction.hpp"

#include <cstdint>
#include <vector>

namespace rankone::oracle {

using FloorSet = std::vector<bool>;

struct ExplicitTower {
  int final_stage = 0;
  Rational width;                    // w_K
  std::vector<std::int64_t> heights;  // heights[j-1] = h_j, j = 1..K
  // ancestor[j-1][f]: stage-j level containing final floor f, or -1 if f is a
  // spacer added after stage j.
  std::vector<std::vector<std::int64_t>> ancestor;
  // parent_maps[j-1][c][l]: stage-(j+1) level of stage-j level l in column c (0-based c).
  std::vector<std::vector<std::vector<std::int64_t>>> parent_maps;
  // column_of[j-1][l']: 1-based column of stage j holding stage-(j+1) level l', 0 for spacers.
  std::vector<std::vector<int>> column_of;

  std::int64_t floors() const { return heights.back(); }
};

/// Materializes stages 1..final_stage. Throws BudgetExceeded when any tower would
/// exceed `budget_floors` floors.
ExplicitTower build_explicit(const ConstructionParams& params, int final_stage, std::int64_t budget_floors = 100'000);

/// Bitmap of a stage-j set given as half-open level ranges.
FloorSet floors_at_stage(const ExplicitTower& tower, int stage, const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges);
FloorSet floors_of(const ExplicitTower& tower, const LevelSet& set);

/// Image of a stage-j bitmap in the final tower.
FloorSet lift_to_final(const ExplicitTower& tower, int stage, const FloorSet& set);

/// X_j as a final-tower bitmap.
FloorSet tower_floors(const ExplicitTower& tower, int stage);

Rational measure(const ExplicitTower& tower, const FloorSet& final_set);

/// μ(T^a A ∩ B) for final-tower bitmaps by direct counting; negative a is counted
/// as μ(A ∩ T^{-a} B). Throws HeadroomViolation if a moved floor leaves the tower.
Rational explicit_measure(const ExplicitTower& tower, const FloorSet& a_set, const FloorSet& b_set, std::int64_t a);

/// μ(∪_terms ∩_u T^{t_u} A) by direct counting.
Rational explicit_union_measure(const ExplicitTower& tower, const FloorSet& a_set,
                                const std::vector<std::vector<std::int64_t>>& terms);

enum class SidonClass { Empty, Column, Violation };

struct SidonResult {
  SidonClass kind = SidonClass::Empty;
  std::vector<int> columns;
  Rational measure;
};

/// X_j ∩ T^{-m} X_j classified by the stage-j columns it meets.
SidonResult explicit_sidon(const ExplicitTower& tower, int j, std::int64_t m);

}  // namespace rankone::oracle

#endif
