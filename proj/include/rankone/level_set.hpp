#ifndef RANKONE_LEVEL_SET_HPP
#define RANKONE_LEVEL_SET_HPP

#include "rankone/numeric.hpp"

#include <vector>

namespace rankone {

/// Half-open range of floor levels [lo, hi).
struct LevelRange {
  BigInt lo;
  BigInt hi;

  friend bool operator==(const LevelRange&, const LevelRange&) = default;
};

/// A finite union of floors of one tower stage.
///
/// Ranges are kept in canonical form: sorted, nonempty, pairwise disjoint and
/// non-adjacent. Every floor of a stage has the same width, so the measure is
/// width * (number of levels). The stage height travels with the set so that
/// translations can be checked against the top of the tower.
class LevelSet {
 public:
  LevelSet() = default;

  /// Validates 0 <= lo <= hi <= height for every range and canonicalizes
  /// (overlapping or adjacent input ranges are merged, empty ones dropped).
  static LevelSet make(int stage, BigInt height, Rational width, std::vector<LevelRange> ranges);

  /// The empty set at the given stage.
  static LevelSet empty_at(int stage, BigInt height, Rational width);

  int stage() const noexcept { return stage_; }
  const BigInt& height() const noexcept { return height_; }
  const Rational& width() const noexcept { return width_; }
  const std::vector<LevelRange>& ranges() const noexcept { return ranges_; }

  bool empty() const noexcept { return ranges_.empty(); }
  BigInt level_count() const;
  Rational measure() const;
  bool contains(const BigInt& level) const;
  /// Largest level in the set; the set must be nonempty.
  BigInt max_level() const;

  /// Same stage and same canonical ranges.
  friend bool operator==(const LevelSet& a, const LevelSet& b);

 private:
  friend LevelSet shift(const LevelSet&, const BigInt&);
  friend LevelSet combine_sets(const LevelSet&, const LevelSet&, bool (*)(bool, bool));

  int stage_ = 0;
  BigInt height_;
  Rational width_;
  std::vector<LevelRange> ranges_;
};

LevelSet set_union(const LevelSet& a, const LevelSet& b);
LevelSet intersect(const LevelSet& a, const LevelSet& b);
LevelSet difference(const LevelSet& a, const LevelSet& b);
LevelSet symmetric_difference(const LevelSet& a, const LevelSet& b);

/// Level translation by `a` (the action of T^a inside a tower). Throws
/// HeadroomViolation if any translated level leaves [0, height).
LevelSet shift(const LevelSet& set, const BigInt& a);

}  // namespace rankone

#endif
