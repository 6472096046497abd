#include "rankone/oracle.hpp"

#include "rankone/errors.hpp"

#include <algorithm>
#include <set>

namespace rankone::oracle {

namespace {

struct Cut {
  std::int64_t cuts;
  std::vector<std::int64_t> spacers;
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b, std::int64_t budget) {
  if (a != 0 && b > budget / a) throw Error(ErrorKind::BudgetExceeded, "tower exceeds the floor budget");
  return a * b;
}

// Evaluates r_j and s_j straight from the parameters.
Cut cut_at(const ConstructionParams& params, int j, std::int64_t h, std::int64_t budget) {
  Cut cut;
  if (const auto* powers = std::get_if<SidonPowerRule>(&params.rule)) {
    if (j >= 62) throw Error(ErrorKind::BudgetExceeded, "tower exceeds the floor budget");
    cut.cuts = std::int64_t{1} << j;
    if (powers->d > budget) throw Error(ErrorKind::BudgetExceeded, "tower exceeds the floor budget");
    const std::int64_t d = powers->d.convert_to<std::int64_t>();
    std::int64_t power = 1;
    for (std::int64_t i = 0; i < cut.cuts; ++i) {
      power = checked_mul(power, d, budget);
      cut.spacers.push_back(checked_mul(power, h, budget));
    }
  } else {
    const auto& stages = std::get<ExplicitRule>(params.rule).stages;
    if (j > static_cast<int>(stages.size())) throw Error(ErrorKind::StageOutOfRange, "no cut given for stage " + std::to_string(j));
    const auto& st = stages[static_cast<std::size_t>(j - 1)];
    cut.cuts = static_cast<std::int64_t>(st.cuts);
    for (const auto& s : st.spacers) {
      if (s > budget) throw Error(ErrorKind::BudgetExceeded, "tower exceeds the floor budget");
      cut.spacers.push_back(s.convert_to<std::int64_t>());
    }
  }
  return cut;
}

void require_headroom(bool ok) {
  if (!ok) throw Error(ErrorKind::HeadroomViolation, "shifted floor leaves the explicit tower");
}

}  // namespace

ExplicitTower build_explicit(const ConstructionParams& params, int final_stage, std::int64_t budget_floors) {
  if (final_stage < 1) throw Error(ErrorKind::InvalidArgument, "final stage must be >= 1");
  ExplicitTower tower;
  tower.final_stage = final_stage;
  tower.width = params.base_width;
  tower.heights.push_back(1);
  // Each floor of the current top tower carries its ancestry levels at stages 1..j.
  std::vector<std::vector<std::int64_t>> floors{{0}};
  for (int j = 1; j < final_stage; ++j) {
    const std::int64_t h = tower.heights.back();
    const Cut cut = cut_at(params, j, h, budget_floors);
    std::int64_t next = checked_mul(cut.cuts, h, budget_floors);
    for (auto s : cut.spacers) next += s;
    if (next > budget_floors) throw Error(ErrorKind::BudgetExceeded, "stage " + std::to_string(j + 1) + " has " + std::to_string(next) + " floors");

    std::vector<std::vector<std::int64_t>> stacked;
    stacked.reserve(static_cast<std::size_t>(next));
    std::vector<std::vector<std::int64_t>> parent(static_cast<std::size_t>(cut.cuts));
    std::vector<int> column_of;
    for (std::int64_t c = 0; c < cut.cuts; ++c) {
      for (std::int64_t l = 0; l < h; ++l) {
        auto anc = floors[static_cast<std::size_t>(l)];
        anc.push_back(static_cast<std::int64_t>(stacked.size()));
        parent[static_cast<std::size_t>(c)].push_back(static_cast<std::int64_t>(stacked.size()));
        column_of.push_back(static_cast<int>(c + 1));
        stacked.push_back(std::move(anc));
      }
      for (std::int64_t s = 0; s < cut.spacers[static_cast<std::size_t>(c)]; ++s) {
        std::vector<std::int64_t> anc(static_cast<std::size_t>(j), -1);
        anc.push_back(static_cast<std::int64_t>(stacked.size()));
        column_of.push_back(0);
        stacked.push_back(std::move(anc));
      }
    }
    floors = std::move(stacked);
    tower.heights.push_back(next);
    tower.width /= Rational(cut.cuts);
    tower.parent_maps.push_back(std::move(parent));
    tower.column_of.push_back(std::move(column_of));
  }
  tower.ancestor.assign(static_cast<std::size_t>(final_stage), std::vector<std::int64_t>(floors.size(), -1));
  for (std::size_t f = 0; f < floors.size(); ++f) {
    for (std::size_t j = 0; j < floors[f].size(); ++j) tower.ancestor[j][f] = floors[f][j];
  }
  return tower;
}

FloorSet floors_at_stage(const ExplicitTower& tower, int stage,
                         const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges) {
  if (stage < 1 || stage > tower.final_stage) throw Error(ErrorKind::StageOutOfRange, "stage outside the explicit tower");
  const std::int64_t h = tower.heights[static_cast<std::size_t>(stage - 1)];
  FloorSet set(static_cast<std::size_t>(h), false);
  for (auto [lo, hi] : ranges) {
    if (lo < 0 || hi > h) throw Error(ErrorKind::InvalidArgument, "range outside tower");
    for (std::int64_t l = lo; l < hi; ++l) set[static_cast<std::size_t>(l)] = true;
  }
  return set;
}

FloorSet floors_of(const ExplicitTower& tower, const LevelSet& set) {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  for (const auto& r : set.ranges()) ranges.emplace_back(r.lo.convert_to<std::int64_t>(), r.hi.convert_to<std::int64_t>());
  return floors_at_stage(tower, set.stage(), ranges);
}

FloorSet lift_to_final(const ExplicitTower& tower, int stage, const FloorSet& set) {
  const auto& anc = tower.ancestor[static_cast<std::size_t>(stage - 1)];
  FloorSet out(anc.size(), false);
  for (std::size_t f = 0; f < anc.size(); ++f) {
    out[f] = anc[f] >= 0 && set[static_cast<std::size_t>(anc[f])];
  }
  return out;
}

FloorSet tower_floors(const ExplicitTower& tower, int stage) {
  const std::int64_t h = tower.heights[static_cast<std::size_t>(stage - 1)];
  return lift_to_final(tower, stage, FloorSet(static_cast<std::size_t>(h), true));
}

Rational measure(const ExplicitTower& tower, const FloorSet& final_set) {
  return tower.width * Rational(std::count(final_set.begin(), final_set.end(), true));
}

Rational explicit_measure(const ExplicitTower& tower, const FloorSet& a_set, const FloorSet& b_set, std::int64_t a) {
  const FloorSet& moved = a >= 0 ? a_set : b_set;
  const FloorSet& fixed = a >= 0 ? b_set : a_set;
  const std::int64_t step = a >= 0 ? a : -a;
  const auto n = static_cast<std::int64_t>(moved.size());
  std::int64_t count = 0;
  for (std::int64_t l = 0; l < n; ++l) {
    if (!moved[static_cast<std::size_t>(l)]) continue;
    require_headroom(l + step < n);
    if (fixed[static_cast<std::size_t>(l + step)]) ++count;
  }
  return tower.width * Rational(count);
}

Rational explicit_union_measure(const ExplicitTower& tower, const FloorSet& a_set,
                                const std::vector<std::vector<std::int64_t>> & terms) {
  std::int64_t lowest = 0;
  for (const auto& term : terms) {
    for (auto t : term) lowest = std::min(lowest, t);
  }
  const std::int64_t offset = -lowest;
  const auto n = static_cast<std::int64_t>(a_set.size());
  std::int64_t top = -1;
  for (std::int64_t l = 0; l < n; ++l) {
    if (a_set[static_cast<std::size_t>(l)]) top = l;
  }
  std::int64_t count = 0;
  for (std::int64_t l = 0; l < n; ++l) {
    bool in_union = false;
    for (const auto& term : terms) {
      bool in_term = true;
      for (auto t : term) {
        require_headroom(top < 0 || top + t + offset < n);
        const std::int64_t src = l - (t + offset);
        if (src < 0 || !a_set[static_cast<std::size_t>(src)]) {
          in_term = false;
          break;
        }
      }
      if (in_term) {
        in_union = true;
        break;
      }
    }
    if (in_union) ++count;
  }
  return tower.width * Rational(count);
}

SidonResult explicit_sidon(const ExplicitTower& tower, int j, std::int64_t m) {
  if (j + 1 > tower.final_stage) throw Error(ErrorKind::StageOutOfRange, "explicit tower too short for stage " + std::to_string(j));
  const FloorSet x = tower_floors(tower, j);
  const auto n = static_cast<std::int64_t>(x.size());
  const auto& anc_next = tower.ancestor[static_cast<std::size_t>(j)];
  const auto& cols = tower.column_of[static_cast<std::size_t>(j - 1)];
  std::set<int> columns;
  std::int64_t count = 0;
  for (std::int64_t l = 0; l < n; ++l) {
    if (!x[static_cast<std::size_t>(l)]) continue;
    require_headroom(l + m < n);
    if (!x[static_cast<std::size_t>(l + m)]) continue;
    ++count;
    columns.insert(cols[static_cast<std::size_t>(anc_next[static_cast<std::size_t>(l)])]);
  }
  SidonResult r;
  r.columns.assign(columns.begin(), columns.end());
  r.measure = tower.width * Rational(count);
  r.kind = columns.empty() ? SidonClass::Empty : columns.size() == 1 ? SidonClass::Column : SidonClass::Violation;
  return r;
}

}  // namespace rankone::oracle
