#ifndef RANKONE_CONSTRUCTION_HPP
#define RANKONE_CONSTRUCTION_HPP

#include "rankone/level_set.hpp"
#include "rankone/numeric.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace rankone {

/// r_j = 2^j cuts, spacer vector s_j(i) = d^i * h_j for i = 1..r_j.
struct SidonPowerRule {
  BigInt d;
};

struct ExplicitStage {
  std::size_t cuts = 0;
  std::vector<BigInt> spacers;
};

/// Cut counts and spacer vectors listed stage by stage; stage j uses stages[j-1].
struct ExplicitRule {
  std::vector<ExplicitStage> stages;
};

/// The recipe of a rank-one cutting-and-stacking construction.
struct ConstructionParams {
  Rational base_width{1};
  std::variant<SidonPowerRule, ExplicitRule> rule;

  static ConstructionParams sidon_powers(BigInt d, Rational base_width = Rational(1));
  static ConstructionParams explicit_stages(std::vector<ExplicitStage> stages,
                                            Rational base_width = Rational(1));

  /// Throws InvalidArgument if any invariant (r_j >= 2, s_j(i) >= 0, |s_j| = r_j,
  /// base_width > 0, d >= 2) fails.
  void validate() const;

  bool is_sidon_powers() const { return std::holds_alternative<SidonPowerRule>(rule); }
};

struct Limits {
  int stage_cap = 12;
  std::size_t range_cap = 10'000'000;
};

/// Geometry of stage j and of its cut into columns.
struct StageGeometry {
  int j = 0;
  BigInt height;                     // h_j
  Rational width;                    // w_j
  std::size_t cuts = 0;              // r_j
  std::vector<BigInt> spacers;       // s_j(1..r_j)
  std::vector<BigInt> offsets;       // L(j,c): base level of column c inside stage j+1
  std::vector<BigInt> return_times;  // m(j,i) = h_j + s_j(i)
  BigInt next_height;                // h_{j+1}
};

/// A rank-one construction evaluated symbolically, stage by stage.
///
/// Stage geometries are computed on first use and cached; the cache is shared by
/// copies and is safe to fill from several threads.
class Construction {
 public:
  explicit Construction(ConstructionParams params, Limits limits = {});

  const ConstructionParams& params() const;
  const Limits& limits() const;

  /// Largest j whose cut (r_j, s_j) is known.
  int last_cut_stage() const;
  /// Largest j whose tower X_j exists.
  int last_tower_stage() const;

  const StageGeometry& geometry(int j) const;
  BigInt height(int j) const;
  Rational width(int j) const;

  LevelSet tower_set(int j) const;
  LevelSet level_set(int stage, std::vector<LevelRange> ranges) const;
  LevelSet empty_set(int stage) const;

  /// Image of `set` in the tower of stage `target`: level l of column c at stage j
  /// becomes level L(j,c) + l at stage j+1.
  LevelSet lift(const LevelSet& set, int target) const;

  /// Largest level `set` occupies once lifted to `target`, without materializing the lift.
  BigInt max_lifted_level(const LevelSet& set, int target) const;

  /// Smallest K >= every set's stage such that max lifted level + max_abs_shift < h_K.
  int choose_work_stage(std::span<const LevelSet* const> sets, const BigInt& max_abs_shift) const;
  int choose_work_stage(std::initializer_list<const LevelSet*> sets, const BigInt& max_abs_shift) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace rankone

#endif
