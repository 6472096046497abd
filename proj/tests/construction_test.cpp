#include "rankone/construction.hpp"
#include "rankone/equivalence.hpp"
#include "rankone/errors.hpp"

#include <gtest/gtest.h>

using namespace rankone;

namespace {

Construction powers(int d = 11) { return Construction(ConstructionParams::sidon_powers(BigInt(d))); }

ConstructionParams tiny_explicit() {
  return ConstructionParams::explicit_stages({{2, {BigInt(1), BigInt(2)}}, {2, {BigInt(0), BigInt(1)}}});
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Construction, PowersStageOneGeometry) {
  const auto c = powers();
  const auto& g = c.geometry(1);
  EXPECT_EQ(g.height, 1);
  EXPECT_EQ(g.cuts, 2u);
  EXPECT_EQ(g.spacers, (std::vector<BigInt>{11, 121}));
  EXPECT_EQ(g.offsets, (std::vector<BigInt>{0, 12}));
  EXPECT_EQ(g.return_times, (std::vector<BigInt>{12, 122}));
  EXPECT_EQ(g.next_height, 134);
}

TEST(Construction, PowersHeightsAndWidths) {
  const auto c = powers();
  EXPECT_EQ(c.height(2), 134);  // 2*1 + 11 + 121
  EXPECT_EQ(c.width(2), Rational(1, 2));
  EXPECT_EQ(c.height(3), 2158472);  // 134 * (4 + 11 + 121 + 1331 + 14641)
  EXPECT_EQ(c.width(3), Rational(1, 8));
  EXPECT_EQ(c.geometry(2).offsets, (std::vector<BigInt>{0, 1608, 17956, 196444}));
  // Stage 5 heights overflow 64 bits.
  EXPECT_GT(c.height(5), BigInt("18446744073709551616"));
}

TEST(Construction, PowersSpacersArePowersOfD) {
  const auto c = powers(13);
  for (int j = 1; j <= 4; ++j) {
    const auto& g = c.geometry(j);
    BigInt p = 1;
    for (std::size_t i = 0; i < g.cuts; ++i) {
      p *= 13;
      EXPECT_EQ(g.spacers[i], p * g.height);
    }
  }
}

TEST(Construction, TowerSets) {
  const auto c = powers();
  const auto x1 = c.tower_set(1);
  EXPECT_EQ(x1.ranges().size(), 1u);
  EXPECT_EQ(x1.measure(), Rational(1));
  EXPECT_EQ(c.tower_set(2).measure(), Rational(67));
  EXPECT_EQ(c.tower_set(3).measure(), Rational(269809));

  const Construction scaled(ConstructionParams::sidon_powers(BigInt(11), Rational(3, 7)));
  EXPECT_EQ(scaled.tower_set(1).measure(), Rational(3, 7));
}

TEST(Construction, LiftOfFirstTower) {
  const auto c = powers();
  const auto lifted = c.lift(c.tower_set(1), 2);
  EXPECT_EQ(lifted, c.level_set(2, {{BigInt(0), BigInt(1)}, {BigInt(12), BigInt(13)}}));
  EXPECT_EQ(lifted.measure(), Rational(1));
  EXPECT_EQ(c.lift(lifted, 2), lifted);
  EXPECT_EQ(kind_of([&] { c.lift(lifted, 1); }), ErrorKind::InvalidArgument);
}

TEST(Construction, RecursionInvariants) {
  for (const auto& c : {powers(2), powers(11), Construction(tiny_explicit())}) {
    for (int j = 1; j <= std::min(3, c.last_cut_stage()); ++j) {
      const auto& g = c.geometry(j);
      BigInt sum = 0;
      for (const auto& s : g.spacers) sum += s;
      EXPECT_EQ(g.next_height, BigInt(g.cuts) * g.height + sum);
      EXPECT_EQ(c.width(j + 1) * Rational(g.cuts), c.width(j));
      EXPECT_EQ(g.offsets.front(), 0);
      for (std::size_t k = 1; k < g.cuts; ++k) EXPECT_EQ(g.offsets[k], g.offsets[k - 1] + g.height + g.spacers[k - 1]);
      EXPECT_EQ(g.next_height, g.offsets.back() + g.height + g.spacers.back());

      // lift(X_j) is a strict subset of X_{j+1}; the rest is exactly the spacers.
      const auto lifted = c.lift(c.tower_set(j), j + 1);
      const auto next = c.tower_set(j + 1);
      EXPECT_EQ(intersect(lifted, next), lifted);
      EXPECT_EQ(difference(next, lifted).measure(), c.width(j + 1) * Rational(sum));
      if (sum > 0) {
        EXPECT_NE(lifted, next);
        EXPECT_GT(next.measure(), c.tower_set(j).measure());
      }
    }
  }
}

TEST(Construction, PowersTowerMeasuresStrictlyIncrease) {
  const auto c = powers();
  Rational prev = 0;
  for (int j = 1; j <= 6; ++j) {
    const Rational mu = c.height(j) * c.width(j);
    EXPECT_GT(mu, prev);
    prev = mu;
  }
}

TEST(Construction, PropertyLiftPreservesMeasureAndComposes) {
  const auto c = powers(3);
  CounterStream rng(99, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int stage = 1 + static_cast<int>(rng.uniform_below(std::uint64_t{3}));
    const LevelSet a = random_level_set(c, stage, rng);
    const int mid = stage + static_cast<int>(rng.uniform_below(std::uint64_t{2}));
    const int top = mid + static_cast<int>(rng.uniform_below(std::uint64_t{2}));
    const LevelSet direct = c.lift(a, top);
    EXPECT_EQ(direct.measure(), a.measure());
    EXPECT_EQ(c.lift(c.lift(a, mid), top), direct);
    EXPECT_EQ(c.max_lifted_level(a, top), direct.max_level());
  }
}

TEST(Construction, ChooseWorkStage) {
  const auto c = powers();
  const auto x1 = c.tower_set(1);
  const auto x2 = c.tower_set(2);
  EXPECT_EQ(c.choose_work_stage({&x1}, BigInt(12)), 2);
  EXPECT_EQ(c.max_lifted_level(x2, 3), 196577);
  EXPECT_EQ(c.choose_work_stage({&x2}, BigInt(373324)), 3);
  EXPECT_EQ(c.choose_work_stage({&x2}, BigInt(0)), 2);
  EXPECT_EQ(c.choose_work_stage({&x1}, BigInt(0)), 1);
  // Needs the whole of stage 3's spacer headroom and more.
  EXPECT_EQ(c.choose_work_stage({&x2}, BigInt(2158472)), 4);
}

TEST(Construction, ExplicitStagesAndErrors) {
  const Construction c(tiny_explicit());
  EXPECT_EQ(c.height(2), 5);
  EXPECT_EQ(c.height(3), 11);
  EXPECT_EQ(c.last_cut_stage(), 2);
  EXPECT_EQ(c.last_tower_stage(), 3);
  EXPECT_EQ(kind_of([&] { c.geometry(3); }), ErrorKind::StageOutOfRange);
  EXPECT_EQ(kind_of([&] { c.height(4); }), ErrorKind::StageOutOfRange);
  const auto x3 = c.tower_set(3);
  EXPECT_EQ(kind_of([&] { c.choose_work_stage({&x3}, BigInt(1)); }), ErrorKind::ResourceLimit);

  EXPECT_THROW(ConstructionParams::explicit_stages({{1, {BigInt(0)}}}), Error);
  EXPECT_THROW(ConstructionParams::explicit_stages({{2, {BigInt(0)}}}), Error);
  EXPECT_THROW(ConstructionParams::explicit_stages({{2, {BigInt(0), BigInt(-1)}}}), Error);
  EXPECT_THROW(ConstructionParams::sidon_powers(BigInt(1)), Error);
  EXPECT_THROW(ConstructionParams::sidon_powers(BigInt(11), Rational(0)), Error);
}

TEST(Construction, StageCapAndRangeCap) {
  const Construction c(ConstructionParams::sidon_powers(BigInt(11)), Limits{3, 10'000'000});
  EXPECT_EQ(kind_of([&] { c.geometry(4); }), ErrorKind::ResourceLimit);
  EXPECT_EQ(kind_of([&] { c.tower_set(4); }), ErrorKind::ResourceLimit);

  const Construction small(ConstructionParams::sidon_powers(BigInt(2)), Limits{12, 100});
  // X_1 lifted to stage 4 needs 2*4*8 = 64 ranges; stage 5 needs 1024.
  EXPECT_EQ(small.lift(small.tower_set(1), 4).ranges().size(), 64u);
  EXPECT_EQ(kind_of([&] { small.lift(small.tower_set(1), 5); }), ErrorKind::ResourceLimit);
}
