#include "rankone/dynamics.hpp"

#include "rankone/errors.hpp"
#include "rankone/philox.hpp"

#include <algorithm>
#include <set>

namespace rankone {

ShiftFrame::ShiftFrame(const Construction& construction, std::span<const ShiftedFactor> factors, int min_stage)
    : construction_(&construction) {
  BigInt min_time = 0;
  BigInt max_time = 0;
  for (const auto& f : factors) {
    min_time = std::min(min_time, f.time);
    max_time = std::max(max_time, f.time);
  }
  offset_ = -min_time;
  max_time_ = max_time + offset_;
  std::vector<const LevelSet*> sets;
  sets.reserve(factors.size());
  for (const auto& f : factors) sets.push_back(f.set);
  stage_ = std::max(min_stage, construction.choose_work_stage(sets, max_time_));
}

LevelSet ShiftFrame::image(const LevelSet& set, const BigInt& time) const {
  auto it = lifted_.find(&set);
  if (it == lifted_.end()) it = lifted_.emplace(&set, construction_->lift(set, stage_)).first;
  return shift(it->second, time + offset_);
}

Rational intersect_shifted_measure(const Construction& c, const LevelSet& a_set, const LevelSet& b_set,
                                   const BigInt& a) {
  // μ(T^a A ∩ B) = μ(A ∩ T^{-a} B); only nonnegative shifts are materialized.
  const bool forward = a >= 0;
  const LevelSet& moved = forward ? a_set : b_set;
  const LevelSet& fixed = forward ? b_set : a_set;
  const BigInt amount = forward ? a : BigInt(-a);
  const int stage = c.choose_work_stage({&moved, &fixed}, amount);
  const LevelSet lifted_moved = c.lift(moved, stage);
  const LevelSet lifted_fixed = c.lift(fixed, stage);
  return intersect(shift(lifted_moved, amount), lifted_fixed).measure();
}

Rational intersection_measure(const Construction& c, std::span<const ShiftedFactor> factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "intersection of no sets");
  ShiftFrame frame(c, factors);
  LevelSet acc = frame.image(*factors[0].set, factors[0].time);
  for (std::size_t u = 1; u < factors.size() && !acc.empty(); ++u) {
    acc = intersect(acc, frame.image(*factors[u].set, factors[u].time));
  }
  return acc.measure();
}

namespace {

std::vector<ShiftedFactor> flatten(const LevelSet& a_set, std::span<const ShiftedTerm> terms) {
  std::vector<ShiftedFactor> factors;
  for (const auto& term : terms) {
    if (term.times.empty()) throw Error(ErrorKind::InvalidArgument, "empty shifted term");
    for (const auto& t : term.times) factors.push_back({&a_set, t});
  }
  return factors;
}

LevelSet union_of_terms(const ShiftFrame& frame, const LevelSet& a_set, std::span<const ShiftedTerm> terms) {
  LevelSet result = LevelSet::empty_at(frame.work_stage(), BigInt(0), Rational(0));
  bool first = true;
  for (const auto& term : terms) {
    LevelSet acc = frame.image(a_set, term.times[0]);
    for (std::size_t u = 1; u < term.times.size() && !acc.empty(); ++u) {
      acc = intersect(acc, frame.image(a_set, term.times[u]));
    }
    result = first ? std::move(acc) : set_union(result, acc);
    first = false;
  }
  return result;
}

}  // namespace

Rational expr_union_measure(const Construction& c, const LevelSet& a_set, std::span<const ShiftedTerm> terms) {
  if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "expression needs at least one term");
  const auto factors = flatten(a_set, terms);
  ShiftFrame frame(c, factors);
  return union_of_terms(frame, a_set, terms).measure();
}

const char* to_string(Direction d) { return d == Direction::Forward ? "forward" : "inverse"; }

std::vector<ShiftedTerm> asymmetry_terms(const Construction& c, int j, int display, Direction direction) {
  if (display != 0 && display != 1) throw Error(ErrorKind::InvalidArgument, "display must be 0 or 1");
  const auto& g = c.geometry(j);
  if (g.cuts < 3) {
    throw Error(ErrorKind::InvalidArgument,
                "stage " + std::to_string(j) + " has r_j = " + std::to_string(g.cuts) + " < 3; the sums over i = 1..r_j-2 are vacuous");
  }
  const BigInt sign = (display == 0) == (direction == Direction::Forward) ? 1 : -1;
  std::vector<ShiftedTerm> terms;
  terms.reserve(g.cuts - 2);
  for (std::size_t i = 0; i + 2 < g.cuts; ++i) {
    // display 0 forward: (0, -m_i, +m_{i+1}); display 1 forward: (0, +m_i, -m_{i+1}).
    terms.push_back({{BigInt(0), BigInt(-sign * g.return_times[i]), BigInt(sign * g.return_times[i + 1])}});
  }
  return terms;
}

DisplayReport display_stats(const Construction& c, const LevelSet& a_set, int j, Direction direction) {
  DisplayReport report;
  report.j = j;
  report.direction = direction;
  report.cuts = c.geometry(j).cuts;
  report.mu_a = a_set.measure();
  const auto terms0 = asymmetry_terms(c, j, 0, direction);
  const auto terms1 = asymmetry_terms(c, j, 1, direction);
  report.expr0 = expr_union_measure(c, a_set, terms0);

  // Display 1 and the defect share one frame that also contains A itself.
  auto factors = flatten(a_set, terms1);
  factors.push_back({&a_set, BigInt(0)});
  ShiftFrame frame(c, factors);
  const LevelSet union1 = union_of_terms(frame, a_set, terms1);
  report.expr1 = union1.measure();
  report.display1_defect = symmetric_difference(frame.image(a_set, BigInt(0)), union1).measure();
  return report;
}

const char* to_string(SidonKind k) {
  switch (k) {
    case SidonKind::Empty: return "empty";
    case SidonKind::Column: return "column";
    case SidonKind::Violation: return "violation";
  }
  return "unknown";
}

SidonWitness sidon_witness(const Construction& c, int j, const BigInt& m) {
  const auto& g = c.geometry(j);
  if (m <= g.height || m > g.next_height) {
    throw Error(ErrorKind::InvalidArgument, "m = " + m.str() + " outside (h_j, h_{j+1}] = (" + g.height.str() +
                                                ", " + g.next_height.str() + "]");
  }
  const LevelSet tower = c.tower_set(j);
  const std::vector<ShiftedFactor> factors{{&tower, BigInt(0)}, {&tower, BigInt(-m)}};
  ShiftFrame frame(c, factors, j + 1);
  // T^m (X_j ∩ T^{-m} X_j) inside the frame.
  const LevelSet hit = intersect(frame.image(tower, BigInt(0)), frame.image(tower, BigInt(-m)));

  SidonWitness w;
  w.work_stage = frame.work_stage();
  w.measure = hit.measure();
  if (hit.empty()) return w;
  for (std::size_t col = 0; col < g.cuts; ++col) {
    const LevelSet column = c.level_set(j + 1, {{g.offsets[col], g.offsets[col] + g.height}});
    if (!intersect(shift(c.lift(column, frame.work_stage()), m), hit).empty()) w.columns.push_back(col + 1);
  }
  w.kind = w.columns.size() == 1 ? SidonKind::Column : SidonKind::Violation;
  return w;
}

SidonReport sidon_check(const Construction& c, int j, const SidonCheckOptions& options) {
  const auto& g = c.geometry(j);
  SidonReport report;
  report.j = j;
  std::set<BigInt> ms;
  if (g.next_height - g.height <= options.exhaustive_budget) {
    report.exhaustive = true;
    for (BigInt m = g.height + 1; m <= g.next_height; ++m) ms.insert(m);
  } else {
    // Keep the δ-window within budget when h_j itself is large.
    BigInt radius = options.exhaustive_budget / (2 * BigInt(g.cuts));
    radius = std::min(radius, g.height);
    report.window_radius = radius;
    for (const auto& rt : g.return_times) {
      for (BigInt delta = -radius; delta <= radius; ++delta) {
        BigInt m = rt + delta;
        if (m > g.height && m <= g.next_height) ms.insert(m);
      }
    }
    CounterStream rng(options.seed, static_cast<std::uint64_t>(j));
    const BigInt span = g.next_height - g.height;
    for (std::size_t k = 0; k < options.random_samples; ++k) {
      ms.insert(g.height + 1 + rng.uniform_below(span));
    }
    report.random_tested = options.random_samples;
  }
  report.tested = ms.size();
  for (const auto& m : ms) {
    SidonWitness w = sidon_witness(c, j, m);
    if (w.kind == SidonKind::Empty) continue;
    if (w.kind == SidonKind::Violation) ++report.violations;
    report.hits.push_back({m, std::move(w)});
  }
  return report;
}

std::vector<MixingPoint> mixing_curve(const Construction& c, const LevelSet& a_set, const LevelSet& b_set,
                                      std::span<const BigInt> ns) {
  if (ns.empty()) throw Error(ErrorKind::InvalidArgument, "mixing curve needs at least one n");
  std::vector<MixingPoint> out;
  out.reserve(ns.size());
  for (const auto& n : ns) out.push_back({n, intersect_shifted_measure(c, a_set, b_set, n)});
  return out;
}

std::vector<Rational> spectral_condition_report(const Construction& c, int max_stage) {
  if (max_stage < 1) throw Error(ErrorKind::InvalidArgument, "J must be >= 1");
  std::vector<Rational> sums;
  Rational acc = 0;
  for (int j = 1; j <= max_stage; ++j) {
    acc += Rational(1, c.geometry(j).cuts);
    sums.push_back(acc);
  }
  return sums;
}

}  // namespace rankone
