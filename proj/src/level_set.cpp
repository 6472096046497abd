#include "rankone/level_set.hpp"

#include "rankone/errors.hpp"

#include <algorithm>

namespace rankone {

namespace {

void canonicalize(std::vector<LevelRange>& ranges) {
  std::erase_if(ranges, [](const LevelRange& r) { return r.lo >= r.hi; });
  std::sort(ranges.begin(), ranges.end(),
            [](const LevelRange& a, const LevelRange& b) { return a.lo < b.lo; });
  std::vector<LevelRange> merged;
  merged.reserve(ranges.size());
  for (auto& r : ranges) {
    if (!merged.empty() && r.lo <= merged.back().hi) {
      if (r.hi > merged.back().hi) merged.back().hi = std::move(r.hi);
    } else {
      merged.push_back(std::move(r));
    }
  }
  ranges = std::move(merged);
}

void require_same_stage(const LevelSet& a, const LevelSet& b) {
  if (a.stage() != b.stage()) {
    throw Error(ErrorKind::StageMismatch, "operands live at stages " + std::to_string(a.stage()) +
                                              " and " + std::to_string(b.stage()));
  }
}

}  // namespace

LevelSet LevelSet::make(int stage, BigInt height, Rational width, std::vector<LevelRange> ranges) {
  if (stage < 1) throw Error(ErrorKind::InvalidArgument, "stage must be >= 1");
  for (const auto& r : ranges) {
    if (r.lo < 0 || r.hi > height || r.lo > r.hi) {
      throw Error(ErrorKind::InvalidArgument, "range [" + r.lo.str() + "," + r.hi.str() +
                                                  ") outside tower of height " + height.str());
    }
  }
  canonicalize(ranges);
  LevelSet s;
  s.stage_ = stage;
  s.height_ = std::move(height);
  s.width_ = std::move(width);
  s.ranges_ = std::move(ranges);
  return s;
}

LevelSet LevelSet::empty_at(int stage, BigInt height, Rational width) {
  return make(stage, std::move(height), std::move(width), {});
}

BigInt LevelSet::level_count() const {
  BigInt n = 0;
  for (const auto& r : ranges_) n += r.hi - r.lo;
  return n;
}

Rational LevelSet::measure() const { return width_ * Rational(level_count()); }

bool LevelSet::contains(const BigInt& level) const {
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), level,
                             [](const BigInt& v, const LevelRange& r) { return v < r.lo; });
  if (it == ranges_.begin()) return false;
  --it;
  return level < it->hi;
}

BigInt LevelSet::max_level() const {
  if (ranges_.empty()) throw Error(ErrorKind::InvalidArgument, "max_level of empty set");
  return ranges_.back().hi - 1;
}

bool operator==(const LevelSet& a, const LevelSet& b) {
  return a.stage_ == b.stage_ && a.ranges_ == b.ranges_;
}

// Sweep over the merged boundaries of both operands; `keep` decides membership of
// each elementary segment from the membership flags in a and b.
LevelSet combine_sets(const LevelSet& a, const LevelSet& b, bool (*keep)(bool, bool)) {
  require_same_stage(a, b);
  const auto& ra = a.ranges_;
  const auto& rb = b.ranges_;
  std::vector<LevelRange> out;
  std::size_t i = 0, j = 0;
  bool in_a = false, in_b = false;
  BigInt cursor;
  bool have_cursor = false;
  // Each range contributes two events; walk them in order.
  while (i < 2 * ra.size() || j < 2 * rb.size()) {
    const BigInt* next_a = i < 2 * ra.size() ? (i % 2 == 0 ? &ra[i / 2].lo : &ra[i / 2].hi) : nullptr;
    const BigInt* next_b = j < 2 * rb.size() ? (j % 2 == 0 ? &rb[j / 2].lo : &rb[j / 2].hi) : nullptr;
    const BigInt& point = (next_b == nullptr || (next_a != nullptr && *next_a <= *next_b)) ? *next_a : *next_b;
    if (have_cursor && cursor < point && keep(in_a, in_b)) {
      if (!out.empty() && out.back().hi == cursor) {
        out.back().hi = point;
      } else {
        out.push_back({cursor, point});
      }
    }
    while (next_a != nullptr && *next_a == point) {
      in_a = (i % 2 == 0);
      ++i;
      next_a = i < 2 * ra.size() ? (i % 2 == 0 ? &ra[i / 2].lo : &ra[i / 2].hi) : nullptr;
    }
    while (next_b != nullptr && *next_b == point) {
      in_b = (j % 2 == 0);
      ++j;
      next_b = j < 2 * rb.size() ? (j % 2 == 0 ? &rb[j / 2].lo : &rb[j / 2].hi) : nullptr;
    }
    cursor = point;
    have_cursor = true;
  }
  LevelSet s;
  s.stage_ = a.stage_;
  s.height_ = a.height_;
  s.width_ = a.width_;
  s.ranges_ = std::move(out);
  return s;
}

LevelSet set_union(const LevelSet& a, const LevelSet& b) {
  return combine_sets(a, b, [](bool x, bool y) { return x || y; });
}

LevelSet intersect(const LevelSet& a, const LevelSet& b) {
  return combine_sets(a, b, [](bool x, bool y) { return x && y; });
}

LevelSet difference(const LevelSet& a, const LevelSet& b) {
  return combine_sets(a, b, [](bool x, bool y) { return x && !y; });
}

LevelSet symmetric_difference(const LevelSet& a, const LevelSet& b) {
  return combine_sets(a, b, [](bool x, bool y) { return x != y; });
}

LevelSet shift(const LevelSet& set, const BigInt& a) {
  if (!set.empty()) {
    if (set.ranges_.front().lo + a < 0 || set.ranges_.back().hi + a > set.height_) {
      throw Error(ErrorKind::HeadroomViolation,
                  "shift by " + a.str() + " leaves the stage-" + std::to_string(set.stage_) +
                      " tower of height " + set.height_.str());
    }
  }
  LevelSet s = set;
  for (auto& r : s.ranges_) {
    r.lo += a;
    r.hi += a;
  }
  return s;
}

}  // namespace rankone
