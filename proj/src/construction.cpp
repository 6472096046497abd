#include "rankone/construction.hpp"

#include "rankone/errors.hpp"

#include <algorithm>
#include <mutex>

namespace rankone {

ConstructionParams ConstructionParams::sidon_powers(BigInt d, Rational base_width) {
  ConstructionParams p;
  p.base_width = std::move(base_width);
  p.rule = SidonPowerRule{std::move(d)};
  p.validate();
  return p;
}

ConstructionParams ConstructionParams::explicit_stages(std::vector<ExplicitStage> stages,
                                                       Rational base_width) {
  ConstructionParams p;
  p.base_width = std::move(base_width);
  p.rule = ExplicitRule{std::move(stages)};
  p.validate();
  return p;
}

void ConstructionParams::validate() const {
  if (base_width <= 0) throw Error(ErrorKind::InvalidArgument, "base_width must be positive");
  if (const auto* powers = std::get_if<SidonPowerRule>(&rule)) {
    if (powers->d < 2) throw Error(ErrorKind::InvalidArgument, "d must be >= 2, got " + powers->d.str());
    return;
  }
  const auto& stages = std::get<ExplicitRule>(rule).stages;
  if (stages.empty()) throw Error(ErrorKind::InvalidArgument, "explicit rule needs at least one stage");
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto& st = stages[k];
    const std::string where = "stage " + std::to_string(k + 1);
    if (st.cuts < 2) throw Error(ErrorKind::InvalidArgument, where + ": r_j must be >= 2");
    if (st.spacers.size() != st.cuts) {
      throw Error(ErrorKind::InvalidArgument, where + ": spacer vector length must equal r_j");
    }
    for (const auto& s : st.spacers) {
      if (s < 0) throw Error(ErrorKind::InvalidArgument, where + ": spacers must be >= 0");
    }
  }
}

struct Construction::Impl {
  ConstructionParams params;
  Limits limits;
  mutable std::mutex mutex;
  mutable std::vector<std::unique_ptr<StageGeometry>> cache;  // cache[j-1]

  std::size_t explicit_count() const {
    return std::get<ExplicitRule>(params.rule).stages.size();
  }

  StageGeometry build(int j, const BigInt& height, const Rational& width) const {
    StageGeometry g;
    g.j = j;
    g.height = height;
    g.width = width;
    if (const auto* powers = std::get_if<SidonPowerRule>(&params.rule)) {
      g.cuts = std::size_t{1} << j;
      g.spacers.reserve(g.cuts);
      BigInt power = powers->d;
      for (std::size_t i = 1; i <= g.cuts; ++i) {
        g.spacers.push_back(power * height);
        power *= powers->d;
      }
    } else {
      const auto& st = std::get<ExplicitRule>(params.rule).stages[static_cast<std::size_t>(j - 1)];
      g.cuts = st.cuts;
      g.spacers = st.spacers;
    }
    g.offsets.reserve(g.cuts);
    g.return_times.reserve(g.cuts);
    BigInt base = 0;
    for (std::size_t c = 0; c < g.cuts; ++c) {
      g.offsets.push_back(base);
      g.return_times.push_back(height + g.spacers[c]);
      base += height + g.spacers[c];
    }
    g.next_height = base;
    return g;
  }
};

Construction::Construction(ConstructionParams params, Limits limits) : impl_(std::make_shared<Impl>()) {
  params.validate();
  if (limits.stage_cap < 1) throw Error(ErrorKind::InvalidArgument, "stage cap must be >= 1");
  if (params.is_sidon_powers() && limits.stage_cap > 60) {
    throw Error(ErrorKind::InvalidArgument, "stage cap above 60 is not supported for the 2^j rule");
  }
  impl_->params = std::move(params);
  impl_->limits = limits;
}

const ConstructionParams& Construction::params() const { return impl_->params; }
const Limits& Construction::limits() const { return impl_->limits; }

int Construction::last_cut_stage() const {
  if (impl_->params.is_sidon_powers()) return impl_->limits.stage_cap;
  return std::min(static_cast<int>(impl_->explicit_count()), impl_->limits.stage_cap);
}

int Construction::last_tower_stage() const {
  if (impl_->params.is_sidon_powers()) return impl_->limits.stage_cap;
  return std::min(static_cast<int>(impl_->explicit_count()) + 1, impl_->limits.stage_cap);
}

const StageGeometry& Construction::geometry(int j) const {
  if (j < 1) throw Error(ErrorKind::InvalidArgument, "stage index must be >= 1");
  if (!impl_->params.is_sidon_powers() && j > static_cast<int>(impl_->explicit_count())) {
    throw Error(ErrorKind::StageOutOfRange, "stage " + std::to_string(j) + " beyond the " +
                                                std::to_string(impl_->explicit_count()) +
                                                " explicit stages");
  }
  if (j > impl_->limits.stage_cap) {
    throw Error(ErrorKind::ResourceLimit, "stage " + std::to_string(j) + " exceeds the stage cap " +
                                              std::to_string(impl_->limits.stage_cap));
  }
  std::lock_guard lock(impl_->mutex);
  auto& cache = impl_->cache;
  while (static_cast<int>(cache.size()) < j) {
    const int next = static_cast<int>(cache.size()) + 1;
    BigInt h = cache.empty() ? BigInt(1) : cache.back()->next_height;
    Rational w = cache.empty() ? impl_->params.base_width
                               : Rational(cache.back()->width / Rational(cache.back()->cuts));
    cache.push_back(std::make_unique<StageGeometry>(impl_->build(next, h, w)));
  }
  return *cache[static_cast<std::size_t>(j - 1)];
}

BigInt Construction::height(int j) const {
  if (j < 1) throw Error(ErrorKind::InvalidArgument, "stage index must be >= 1");
  if (j > last_tower_stage()) {
    // Reuse geometry()'s diagnostics for the out-of-range stage.
    if (!impl_->params.is_sidon_powers() && j > static_cast<int>(impl_->explicit_count()) + 1) {
      throw Error(ErrorKind::StageOutOfRange, "no tower at stage " + std::to_string(j));
    }
    throw Error(ErrorKind::ResourceLimit, "stage " + std::to_string(j) + " exceeds the stage cap " +
                                              std::to_string(impl_->limits.stage_cap));
  }
  if (j == 1) return BigInt(1);
  return geometry(j - 1).next_height;
}

Rational Construction::width(int j) const {
  if (j < 1) throw Error(ErrorKind::InvalidArgument, "stage index must be >= 1");
  if (j == 1) return impl_->params.base_width;
  height(j);  // range checks
  const auto& g = geometry(j - 1);
  return g.width / Rational(g.cuts);
}

LevelSet Construction::tower_set(int j) const {
  BigInt h = height(j);
  return LevelSet::make(j, h, width(j), {{BigInt(0), h}});
}

LevelSet Construction::level_set(int stage, std::vector<LevelRange> ranges) const {
  return LevelSet::make(stage, height(stage), width(stage), std::move(ranges));
}

LevelSet Construction::empty_set(int stage) const { return level_set(stage, {}); }

LevelSet Construction::lift(const LevelSet& set, int target) const {
  if (target < set.stage()) {
    throw Error(ErrorKind::InvalidArgument, "cannot lift a stage-" + std::to_string(set.stage()) +
                                                " set down to stage " + std::to_string(target));
  }
  LevelSet current = set;
  for (int j = set.stage(); j < target; ++j) {
    const auto& g = geometry(j);
    const std::size_t count = current.ranges().size() * g.cuts;
    if (count > impl_->limits.range_cap) {
      throw Error(ErrorKind::ResourceLimit, "lifting to stage " + std::to_string(j + 1) + " needs " +
                                                std::to_string(count) + " ranges (cap " +
                                                std::to_string(impl_->limits.range_cap) + ")");
    }
    std::vector<LevelRange> ranges;
    ranges.reserve(count);
    for (const auto& offset : g.offsets) {
      for (const auto& r : current.ranges()) ranges.push_back({offset + r.lo, offset + r.hi});
    }
    current = LevelSet::make(j + 1, g.next_height, Rational(g.width / Rational(g.cuts)), std::move(ranges));
  }
  return current;
}

BigInt Construction::max_lifted_level(const LevelSet& set, int target) const {
  if (target < set.stage()) throw Error(ErrorKind::InvalidArgument, "target below set stage");
  BigInt level = set.max_level();
  for (int j = set.stage(); j < target; ++j) level += geometry(j).offsets.back();
  return level;
}

int Construction::choose_work_stage(std::span<const LevelSet* const> sets, const BigInt& max_abs_shift) const {
  if (max_abs_shift < 0) throw Error(ErrorKind::InvalidArgument, "max_abs_shift must be >= 0");
  int stage = 1;
  for (const auto* s : sets) stage = std::max(stage, s->stage());
  for (int k = stage;; ++k) {
    if (k > last_tower_stage()) {
      throw Error(ErrorKind::ResourceLimit, "no stage up to " + std::to_string(last_tower_stage()) +
                                                " leaves headroom for a shift of " + max_abs_shift.str());
    }
    BigInt top = -1;
    for (const auto* s : sets) {
      if (!s->empty()) top = std::max(top, max_lifted_level(*s, k));
    }
    if (top + max_abs_shift < height(k)) return k;
  }
}

int Construction::choose_work_stage(std::initializer_list<const LevelSet*> sets,
                                    const BigInt& max_abs_shift) const {
  return choose_work_stage(std::span<const LevelSet* const>(sets.begin(), sets.size()), max_abs_shift);
}

}  // namespace rankone
