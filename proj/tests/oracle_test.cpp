#include "rankone/construction.hpp"
#include "rankone/errors.hpp"
#include "rankone/oracle.hpp"

#include <gtest/gtest.h>

using namespace rankone;
using namespace rankone::oracle;

TEST(Oracle, BuildsTinyTowers) {
  const auto one = build_explicit(ConstructionParams::explicit_stages({{2, {BigInt(0), BigInt(0)}}}), 2);
  EXPECT_EQ(one.floors(), 2);
  EXPECT_EQ(one.width, Rational(1, 2));

  const auto two = build_explicit(
      ConstructionParams::explicit_stages({{2, {BigInt(1), BigInt(2)}}, {2, {BigInt(0), BigInt(1)}}}), 3);
  EXPECT_EQ(two.heights, (std::vector<std::int64_t>{1, 5, 11}));
  EXPECT_EQ(two.width, Rational(1, 4));
}

TEST(Oracle, PowersTowerAtStageTwo) {
  const auto params = ConstructionParams::sidon_powers(BigInt(11));
  const auto tower = build_explicit(params, 2);
  EXPECT_EQ(tower.floors(), 134);
  EXPECT_EQ(measure(tower, tower_floors(tower, 1)), Rational(1));
  EXPECT_EQ(measure(tower, tower_floors(tower, 2)), Rational(67));
  try {
    build_explicit(params, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

// The parent maps are materialized independently; their column bases must coincide
// with the symbolic offsets L(j,c).
TEST(Oracle, ParentMapsMatchSymbolicOffsets) {
  const auto params = ConstructionParams::explicit_stages(
      {{3, {BigInt(2), BigInt(0), BigInt(1)}}, {2, {BigInt(0), BigInt(3)}}, {4, {BigInt(1), BigInt(0), BigInt(2), BigInt(5)}}});
  const auto tower = build_explicit(params, 4);
  const Construction c(params);
  for (int j = 1; j < 4; ++j) {
    const auto& g = c.geometry(j);
    const auto& maps = tower.parent_maps[static_cast<std::size_t>(j - 1)];
    ASSERT_EQ(maps.size(), g.cuts);
    for (std::size_t col = 0; col < g.cuts; ++col) {
      EXPECT_EQ(BigInt(maps[col].front()), g.offsets[col]);
      // Injective, contiguous image per column.
      for (std::size_t l = 1; l < maps[col].size(); ++l) EXPECT_EQ(maps[col][l], maps[col][l - 1] + 1);
    }
    EXPECT_EQ(BigInt(tower.heights[static_cast<std::size_t>(j)]), c.height(j + 1));
  }
}

TEST(Oracle, ExplicitMeasureBasics) {
  const auto params = ConstructionParams::explicit_stages({{2, {BigInt(1), BigInt(2)}}, {2, {BigInt(0), BigInt(1)}}});
  const auto tower = build_explicit(params, 3);
  const FloorSet all(static_cast<std::size_t>(tower.floors()), true);
  FloorSet some(all.size(), false);
  some[1] = some[4] = some[7] = true;
  EXPECT_EQ(explicit_measure(tower, some, all, 0), Rational(3, 4));
  // Sliding window over a tower shifted up is undefined at the top.
  EXPECT_THROW(explicit_measure(tower, all, all, 1), Error);
  FloorSet low(all.size(), false);
  for (int l = 0; l < 5; ++l) low[static_cast<std::size_t>(l)] = true;
  EXPECT_EQ(explicit_measure(tower, low, all, 6), tower.width * Rational(5));
  EXPECT_EQ(explicit_measure(tower, low, low, 2), tower.width * Rational(3));
  EXPECT_EQ(explicit_measure(tower, low, low, -2), tower.width * Rational(3));
}
