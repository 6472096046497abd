#include "rankone/poisson.hpp"

#include "rankone/dynamics.hpp"
#include "rankone/errors.hpp"
#include "rankone/philox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace rankone {

Real ExactPoissonValue::to_real() const {
  return Real(rankone::to_real(coeff) * exp(Real(-rankone::to_real(rate))));
}

std::string ExactPoissonValue::render(unsigned digits) const { return render_decimal(to_real(), digits); }

namespace {

void check_count(unsigned k, const PoissonCaps& caps) {
  if (k > caps.max_count) {
    throw Error(ErrorKind::CountCap, "count " + std::to_string(k) + " exceeds the cap " + std::to_string(caps.max_count));
  }
}

Rational factorial(unsigned k) {
  BigInt f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

Rational power(const Rational& base, unsigned k) {
  Rational p = 1;
  for (unsigned i = 0; i < k; ++i) p *= base;
  return p;
}

}  // namespace

ExactPoissonValue cylinder_measure(const Construction& c, const CylinderSpec& spec, const PoissonCaps& caps) {
  int stage = 1;
  for (const auto& part : spec.parts) {
    check_count(part.count, caps);
    stage = std::max(stage, part.set.stage());
  }
  std::vector<LevelSet> lifted;
  lifted.reserve(spec.parts.size());
  for (const auto& part : spec.parts) lifted.push_back(c.lift(part.set, stage));
  for (std::size_t a = 0; a < lifted.size(); ++a) {
    for (std::size_t b = a + 1; b < lifted.size(); ++b) {
      if (!intersect(lifted[a], lifted[b]).empty()) {
        throw Error(ErrorKind::Overlap, "cylinder parts " + std::to_string(a) + " and " + std::to_string(b) + " intersect");
      }
    }
  }
  ExactPoissonValue value;
  for (const auto& part : spec.parts) {
    const Rational mu = part.set.measure();
    value = value * ExactPoissonValue{power(mu, part.count) / factorial(part.count), mu};
  }
  return value;
}

AtomMeasures atom_measures(const Construction& c, const JointSpec& spec, const PoissonCaps& caps) {
  const std::size_t n = spec.factors.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "joint spec needs at least one factor");
  if (n > caps.max_factors) {
    throw Error(ErrorKind::CountCap, std::to_string(n) + " factors exceed the cap " + std::to_string(caps.max_factors));
  }
  for (const auto& f : spec.factors) check_count(f.count, caps);

  const std::size_t full = std::size_t{1} << n;
  std::vector<Rational> meet(full);  // meet[I] = μ(∩_{u in I} T^{shift_u} A_u)
  for (std::size_t mask = 1; mask < full; ++mask) {
    std::vector<ShiftedFactor> factors;
    for (std::size_t u = 0; u < n; ++u) {
      if (mask & (std::size_t{1} << u)) factors.push_back({&spec.factors[u].set, spec.factors[u].shift});
    }
    meet[mask] = intersection_measure(c, factors);
  }
  AtomMeasures out;
  out.atoms.assign(full, Rational(0));
  for (std::size_t p = 1; p < full; ++p) {
    Rational acc = 0;
    for (std::size_t sup = p; sup < full; sup = (sup + 1) | p) {
      const int extra = std::popcount(sup) - std::popcount(p);
      acc += (extra % 2 == 0) ? meet[sup] : Rational(-meet[sup]);
    }
    if (acc < 0) {
      throw Error(ErrorKind::NegativeAtomMeasure, "atom " + std::to_string(p) + " has measure " + to_string(acc));
    }
    out.atoms[p] = acc;
  }
  return out;
}

JointDistribution joint_count_distribution(const Construction& c, const JointSpec& spec, const PoissonCaps& caps) {
  JointDistribution dist;
  dist.atoms = atom_measures(c, spec, caps);
  const std::size_t n = spec.factors.size();
  std::vector<unsigned> caps_vec;
  for (const auto& f : spec.factors) caps_vec.push_back(f.count);

  Rational rate = 0;
  std::map<std::vector<unsigned>, Rational> states{{std::vector<unsigned>(n, 0), Rational(1)}};
  for (std::size_t p = 1; p < dist.atoms.atoms.size(); ++p) {
    const Rational& mu = dist.atoms.atoms[p];
    if (mu == 0) continue;
    rate += mu;
    std::map<std::vector<unsigned>, Rational> next;
    for (const auto& [counts, coeff] : states) {
      std::vector<unsigned> v = counts;
      Rational term = coeff;  // coeff * mu^N / N!
      for (unsigned N = 0;; ++N) {
        next[v] += term;
        bool fits = true;
        for (std::size_t u = 0; u < n; ++u) {
          if (p & (std::size_t{1} << u)) {
            if (v[u] + 1 > caps_vec[u]) fits = false;
          }
        }
        if (!fits) break;
        for (std::size_t u = 0; u < n; ++u) {
          if (p & (std::size_t{1} << u)) ++v[u];
        }
        term = term * mu / Rational(N + 1);
      }
    }
    states = std::move(next);
  }
  for (auto& [counts, coeff] : states) dist.table.emplace(counts, ExactPoissonValue{coeff, rate});

  // Count vectors unreachable through positive-measure atoms have probability 0.
  std::vector<unsigned> v(n, 0);
  for (;;) {
    dist.table.try_emplace(v, ExactPoissonValue{Rational(0), rate});
    std::size_t u = 0;
    while (u < n && v[u] == caps_vec[u]) v[u++] = 0;
    if (u == n) break;
    ++v[u];
  }
  return dist;
}

ExactPoissonValue joint_probability(const Construction& c, const JointSpec& spec, const PoissonCaps& caps) {
  const auto dist = joint_count_distribution(c, spec, caps);
  std::vector<unsigned> key;
  for (const auto& f : spec.factors) key.push_back(f.count);
  return dist.table.at(key);
}

MixingGap mixing_gap(const Construction& c, const CylinderSpec& first, const CylinderSpec& second, const BigInt& n,
                     const PoissonCaps& caps) {
  JointSpec spec;
  for (const auto& part : first.parts) spec.factors.push_back({part.set, n, part.count});
  for (const auto& part : second.parts) spec.factors.push_back({part.set, BigInt(0), part.count});
  MixingGap out;
  out.joint = joint_probability(c, spec, caps);
  out.product = cylinder_measure(c, first, caps) * cylinder_measure(c, second, caps);
  out.gap = abs(out.joint.to_real() - out.product.to_real());
  return out;
}

std::vector<std::uint64_t> poisson_inversion_table(const Rational& rate) {
  if (rate < 0) throw Error(ErrorKind::InvalidArgument, "negative Poisson rate");
  constexpr std::size_t kMaxEntries = 1'000'000;
  const Real two64 = ldexp(Real(1), 64);
  const Real lambda = to_real(rate);
  Real p = exp(Real(-lambda));
  Real cdf = p;
  std::vector<std::uint64_t> table;
  for (std::size_t k = 0;; ++k) {
    const Real scaled = floor(Real(cdf * two64));
    if (scaled >= two64 - 1) {
      table.push_back(std::numeric_limits<std::uint64_t>::max());
      return table;
    }
    table.push_back(scaled.convert_to<std::uint64_t>());
    if (table.size() >= kMaxEntries) {
      throw Error(ErrorKind::ResourceLimit, "Poisson inversion table too large for rate " + to_string(rate));
    }
    p = p * lambda / Real(k + 1);
    cdf += p;
  }
}

namespace {

// Precomputed sampling state for one window.
class WindowSampler {
 public:
  explicit WindowSampler(const LevelSet& window) : window_(window) {
    if (window.measure() <= 0) throw Error(ErrorKind::InvalidArgument, "sampling window must have positive measure");
    table_ = poisson_inversion_table(window.measure());
    BigInt acc = 0;
    for (const auto& r : window.ranges()) {
      starts_.push_back(acc);
      acc += r.hi - r.lo;
    }
    total_ = acc;
  }

  std::vector<BigInt> draw(CounterStream& rng) const {
    const std::uint64_t x = rng.next_u64();
    auto it = std::upper_bound(table_.begin(), table_.end(), x);
    const std::size_t count = it == table_.end() ? table_.size() - 1 : static_cast<std::size_t>(it - table_.begin());
    std::vector<BigInt> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const BigInt idx = rng.uniform_below(total_);
      auto pos = std::upper_bound(starts_.begin(), starts_.end(), idx) - 1;
      const auto& range = window_.ranges()[static_cast<std::size_t>(pos - starts_.begin())];
      points.push_back(range.lo + (idx - *pos));
    }
    std::sort(points.begin(), points.end());
    return points;
  }

 private:
  const LevelSet& window_;
  std::vector<std::uint64_t> table_;
  std::vector<BigInt> starts_;
  BigInt total_;
};

std::size_t count_points(const std::vector<BigInt>& sorted_points, const LevelSet& set) {
  std::size_t n = 0;
  for (const auto& r : set.ranges()) {
    auto lo = std::lower_bound(sorted_points.begin(), sorted_points.end(), r.lo);
    auto hi = std::lower_bound(lo, sorted_points.end(), r.hi);
    n += static_cast<std::size_t>(hi - lo);
  }
  return n;
}

}  // namespace

Configuration sample_configuration(const LevelSet& window, std::uint64_t seed, std::uint64_t stream) {
  WindowSampler sampler(window);
  CounterStream rng(seed, stream);
  Configuration config;
  config.stage = window.stage();
  config.window = window;
  config.points = sampler.draw(rng);
  config.seed = seed;
  config.stream = stream;
  return config;
}

Configuration evolve_configuration(const Configuration& config, const BigInt& n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "evolution time must be >= 0");
  Configuration out = config;
  out.window = shift(config.window, n);
  for (auto& p : out.points) {
    p += n;
    if (p >= config.window.height()) {
      throw Error(ErrorKind::HeadroomViolation, "point leaves the stage-" + std::to_string(config.stage) + " tower");
    }
  }
  return out;
}

std::size_t count_in(const Configuration& config, const LevelSet& set) {
  if (set.stage() != config.stage) {
    throw Error(ErrorKind::StageMismatch, "configuration and set live at different stages");
  }
  return count_points(config.points, set);
}

MonteCarloResult monte_carlo_joint(const Construction& c, const JointSpec& spec, std::uint64_t samples,
                                   std::uint64_t seed, unsigned workers, const PoissonCaps& caps) {
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "monte carlo needs at least one sample");
  if (spec.factors.empty()) throw Error(ErrorKind::InvalidArgument, "joint spec needs at least one factor");
  if (spec.factors.size() > caps.max_factors) throw Error(ErrorKind::CountCap, "too many joint factors");
  for (const auto& f : spec.factors) check_count(f.count, caps);

  std::vector<ShiftedFactor> factors;
  for (const auto& f : spec.factors) factors.push_back({&f.set, f.shift});
  ShiftFrame frame(c, factors);
  std::vector<LevelSet> images;
  for (const auto& f : spec.factors) images.push_back(frame.image(f.set, f.shift));
  LevelSet window = images.front();
  for (std::size_t u = 1; u < images.size(); ++u) window = set_union(window, images[u]);

  MonteCarloResult result;
  result.samples = samples;
  result.work_stage = frame.work_stage();
  if (window.empty()) {
    // No points can land anywhere: the event holds iff every count is zero.
    const bool all_zero = std::all_of(spec.factors.begin(), spec.factors.end(), [](const auto& f) { return f.count == 0; });
    result.successes = all_zero ? samples : 0;
  } else {
    const WindowSampler sampler(window);
    workers = std::max(1u, workers);
    std::vector<std::uint64_t> partial(workers, 0);
    auto run = [&](unsigned w) {
      const std::uint64_t begin = samples * w / workers;
      const std::uint64_t end = samples * (w + 1) / workers;
      std::uint64_t hits = 0;
      for (std::uint64_t i = begin; i < end; ++i) {
        CounterStream rng(seed, i);
        const auto points = sampler.draw(rng);
        bool ok = true;
        for (std::size_t u = 0; u < images.size() && ok; ++u) {
          ok = count_points(points, images[u]) == spec.factors[u].count;
        }
        if (ok) ++hits;
      }
      partial[w] = hits;
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
      for (auto& t : threads) t.join();
    }
    for (auto h : partial) result.successes += h;
  }
  const double p = static_cast<double>(result.successes) / static_cast<double>(samples);
  result.estimate = p;
  result.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return result;
}

}  // namespace rankone
