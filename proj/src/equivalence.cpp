#include "rankone/equivalence.hpp"

#include "rankone/dynamics.hpp"
#include "rankone/errors.hpp"
#include "rankone/oracle.hpp"

#include <algorithm>

namespace rankone {

LevelSet random_level_set(const Construction& c, int stage, CounterStream& rng, int max_ranges) {
  const BigInt h = c.height(stage);
  const std::uint64_t n = h.convert_to<std::uint64_t>();
  const auto count = 1 + rng.uniform_below(static_cast<std::uint64_t>(max_ranges));
  std::vector<LevelRange> ranges;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t lo = rng.uniform_below(n);
    const std::uint64_t len = 1 + rng.uniform_below(std::max<std::uint64_t>(1, (n - lo + 1) / 2));
    ranges.push_back({BigInt(lo), BigInt(std::min(n, lo + len))});
  }
  return c.level_set(stage, std::move(ranges));
}

bool EquivalenceReport::passed() const {
  return std::all_of(categories.begin(), categories.end(), [](const auto& cat) { return cat.mismatches == 0; });
}

namespace {

constexpr std::size_t kMaxRecorded = 10;

void record(EquivalenceReport& report, EquivalenceCategory& cat, bool agree, const std::string& what) {
  ++cat.cases;
  if (agree) return;
  ++cat.mismatches;
  if (report.first_mismatches.size() < kMaxRecorded) report.first_mismatches.push_back(cat.name + ": " + what);
}

bool oracle_too_short(const Error& e) {
  return e.kind() == ErrorKind::HeadroomViolation || e.kind() == ErrorKind::StageOutOfRange;
}

}  // namespace

EquivalenceReport check_equivalence(const Construction& c, const EquivalenceOptions& options) {
  if (options.set_stage < 1 || options.set_stage > options.oracle_stage) {
    throw Error(ErrorKind::InvalidArgument, "set stage must lie in [1, oracle stage]");
  }
  const oracle::ExplicitTower tower = oracle::build_explicit(c.params(), options.oracle_stage, options.budget_floors);
  CounterStream rng(options.seed, 0);

  EquivalenceReport report;
  report.shift_radius = tower.heights[static_cast<std::size_t>(options.set_stage - 1)];
  EquivalenceCategory shifts{"intersect_shifted_measure"};
  EquivalenceCategory unions{"expr_union_measure"};
  EquivalenceCategory sidon{"sidon_witness"};

  std::vector<LevelSet> sets;
  for (std::size_t k = 0; k < 2 * options.random_sets; ++k) sets.push_back(random_level_set(c, options.set_stage, rng));

  for (std::size_t k = 0; k < options.random_sets; ++k) {
    const LevelSet& a = sets[2 * k];
    const LevelSet& b = sets[2 * k + 1];
    const auto fa = oracle::lift_to_final(tower, a.stage(), oracle::floors_of(tower, a));
    const auto fb = oracle::lift_to_final(tower, b.stage(), oracle::floors_of(tower, b));
    for (std::int64_t shift = -report.shift_radius; shift <= report.shift_radius; ++shift) {
      Rational expected;
      try {
        expected = oracle::explicit_measure(tower, fa, fb, shift);
      } catch (const Error& e) {
        if (!oracle_too_short(e)) throw;
        ++shifts.skipped;
        continue;
      }
      const Rational got = intersect_shifted_measure(c, a, b, BigInt(shift));
      record(report, shifts, got == expected,
             "set pair " + std::to_string(k) + ", a=" + std::to_string(shift) + ": engine " + to_string(got) +
                 ", oracle " + to_string(expected));
    }

    // Random union-of-intersections expressions over A.
    std::vector<std::vector<std::int64_t>> raw_terms;
    std::vector<ShiftedTerm> terms;
    const auto term_count = 1 + rng.uniform_below(3);
    for (std::uint64_t t = 0; t < term_count; ++t) {
      const auto width = 1 + rng.uniform_below(3);
      std::vector<std::int64_t> times;
      ShiftedTerm term;
      for (std::uint64_t u = 0; u < width; ++u) {
        const auto span = static_cast<std::uint64_t>(2 * report.shift_radius + 1);
        const std::int64_t time = static_cast<std::int64_t>(rng.uniform_below(span)) - report.shift_radius;
        times.push_back(time);
        term.times.push_back(BigInt(time));
      }
      raw_terms.push_back(times);
      terms.push_back(term);
    }
    try {
      const Rational expected = oracle::explicit_union_measure(tower, fa, raw_terms);
      const Rational got = expr_union_measure(c, a, terms);
      record(report, unions, got == expected,
             "set " + std::to_string(k) + ": engine " + to_string(got) + ", oracle " + to_string(expected));
    } catch (const Error& e) {
      if (!oracle_too_short(e)) throw;
      ++unions.skipped;
    }
  }

  // Asymmetry displays on every tower X_j and on the random sets, where the oracle can decide them.
  for (int j = 1; j < options.oracle_stage && j <= c.last_cut_stage(); ++j) {
    const auto& g = c.geometry(j);
    if (g.cuts < 3) continue;
    for (int display = 0; display < 2; ++display) {
      for (Direction dir : {Direction::Forward, Direction::Inverse}) {
        const auto terms = asymmetry_terms(c, j, display, dir);
        std::vector<std::vector<std::int64_t>> raw;
        for (const auto& t : terms) {
          std::vector<std::int64_t> times;
          for (const auto& x : t.times) times.push_back(x.convert_to<std::int64_t>());
          raw.push_back(times);
        }
        std::vector<const LevelSet*> bases;
        const LevelSet tower_j = c.tower_set(j);
        bases.push_back(&tower_j);
        for (std::size_t k = 0; k < std::min<std::size_t>(sets.size(), 10); ++k) bases.push_back(&sets[k]);
        for (const LevelSet* base : bases) {
          try {
            const auto fa = oracle::lift_to_final(tower, base->stage(), oracle::floors_of(tower, *base));
            const Rational expected = oracle::explicit_union_measure(tower, fa, raw);
            const Rational got = expr_union_measure(c, *base, terms);
            record(report, unions, got == expected,
                   "display " + std::to_string(display) + " j=" + std::to_string(j) + " " + to_string(dir) + ": engine " +
                       to_string(got) + ", oracle " + to_string(expected));
          } catch (const Error& e) {
            if (!oracle_too_short(e)) throw;
            ++unions.skipped;
          }
        }
      }
    }
  }

  for (int j = 1; j + 1 <= options.oracle_stage && j <= c.last_cut_stage(); ++j) {
    const auto& g = c.geometry(j);
    const std::int64_t lo = g.height.convert_to<std::int64_t>() + 1;
    const std::int64_t hi = g.next_height.convert_to<std::int64_t>();
    for (std::int64_t m = lo; m <= hi; ++m) {
      oracle::SidonResult expected;
      try {
        expected = oracle::explicit_sidon(tower, j, m);
      } catch (const Error& e) {
        if (!oracle_too_short(e)) throw;
        ++sidon.skipped;
        continue;
      }
      const SidonWitness got = sidon_witness(c, j, BigInt(m));
      bool agree = got.measure == expected.measure && got.columns.size() == expected.columns.size() &&
                   static_cast<int>(got.kind) == static_cast<int>(expected.kind);
      for (std::size_t i = 0; agree && i < got.columns.size(); ++i) {
        agree = static_cast<int>(got.columns[i]) == expected.columns[i];
      }
      record(report, sidon, agree, "j=" + std::to_string(j) + ", m=" + std::to_string(m));
    }
  }

  report.categories = {shifts, unions, sidon};
  return report;
}

}  // namespace rankone
