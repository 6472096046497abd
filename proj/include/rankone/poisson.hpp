#ifndef RANKONE_POISSON_HPP
#define RANKONE_POISSON_HPP

#include "rankone/construction.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace rankone {

/// The real number coeff * e^{-rate}, held exactly.
struct ExactPoissonValue {
  Rational coeff{1};
  Rational rate{0};

  Real to_real() const;
  std::string render(unsigned digits) const;

  friend ExactPoissonValue operator*(const ExactPoissonValue& a, const ExactPoissonValue& b) {
    return {a.coeff * b.coeff, a.rate + b.rate};
  }
  friend bool operator==(const ExactPoissonValue&, const ExactPoissonValue&) = default;
};

struct PoissonCaps {
  unsigned max_count = 8;
  std::size_t max_factors = 4;
};

struct CylinderPart {
  LevelSet set;
  unsigned count = 0;
};

/// ∩_i C(A_i, k_i): exactly k_i points in A_i.
struct CylinderSpec {
  std::vector<CylinderPart> parts;
};

/// μ_∘ of a cylinder with pairwise disjoint parts: ∏ μ(A_i)^{k_i}/k_i! e^{-μ(A_i)}.
/// Throws Overlap if two parts intersect, CountCap if a count exceeds the cap.
ExactPoissonValue cylinder_measure(const Construction& c, const CylinderSpec& spec, const PoissonCaps& caps = {});

struct JointFactor {
  LevelSet set;
  BigInt shift;
  unsigned count = 0;
};

/// ∩_u {exactly k_u points in T^{shift_u} A_u}.
struct JointSpec {
  std::vector<JointFactor> factors;
};

/// Atom refinement of the shifted factor sets; atoms[mask] is the measure of the
/// points lying in exactly the factors whose bits are set in mask (mask != 0).
struct AtomMeasures {
  std::vector<Rational> atoms;
};

/// Throws NegativeAtomMeasure if inclusion-exclusion ever yields a negative atom.
AtomMeasures atom_measures(const Construction& c, const JointSpec& spec, const PoissonCaps& caps = {});

/// Joint law of the factor counts, for every count vector bounded componentwise by
/// the factors' counts. Each probability is exact: every term of the atom-composition
/// sum carries the same rate μ(∪ factors), so the sum is a single coeff * e^{-rate}.
struct JointDistribution {
  std::map<std::vector<unsigned>, ExactPoissonValue> table;
  AtomMeasures atoms;
};

JointDistribution joint_count_distribution(const Construction& c, const JointSpec& spec,
                                           const PoissonCaps& caps = {});

/// Probability of the factors' own count vector.
ExactPoissonValue joint_probability(const Construction& c, const JointSpec& spec, const PoissonCaps& caps = {});

struct MixingGap {
  ExactPoissonValue joint;    // μ_∘(P(T)^n C ∩ C')
  ExactPoissonValue product;  // μ_∘(C) μ_∘(C')
  Real gap;                   // |joint - product|
};

MixingGap mixing_gap(const Construction& c, const CylinderSpec& first, const CylinderSpec& second, const BigInt& n,
                     const PoissonCaps& caps = {});

/// A Poisson configuration at floor granularity: each point is a floor of the work stage.
struct Configuration {
  int stage = 0;
  LevelSet window;
  std::vector<BigInt> points;  // sorted levels, repeats allowed
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Draws N ~ Poisson(μ(window)) and N floors uniformly over the window's levels.
/// Deterministic in (seed, stream).
Configuration sample_configuration(const LevelSet& window, std::uint64_t seed, std::uint64_t stream = 0);

/// P(T)^n: every point moves up n levels. Throws HeadroomViolation when a point
/// would leave the tower.
Configuration evolve_configuration(const Configuration& config, const BigInt& n);

/// Number of points of `config` inside `set` (same stage).
std::size_t count_in(const Configuration& config, const LevelSet& set);

struct MonteCarloResult {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t samples = 0;
  int work_stage = 0;
};

/// Frequency of the joint event over `samples` configurations drawn on the union
/// window of the shifted factors. Sample i uses stream i, so the result does not
/// depend on `workers`.
MonteCarloResult monte_carlo_joint(const Construction& c, const JointSpec& spec, std::uint64_t samples,
                                   std::uint64_t seed, unsigned workers = 1, const PoissonCaps& caps = {});

/// Thresholds t_k = floor(P(N <= k) * 2^64) for N ~ Poisson(rate), computed at the
/// working precision; the last entry saturates at 2^64 - 1. Inversion of a uniform
/// 64-bit draw x returns the first k with x < t_k.
std::vector<std::uint64_t> poisson_inversion_table(const Rational& rate);

}  // namespace rankone

#endif
