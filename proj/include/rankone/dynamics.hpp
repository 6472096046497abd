#ifndef RANKONE_DYNAMICS_HPP
#define RANKONE_DYNAMICS_HPP

#include "rankone/construction.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rankone {

/// The set T^{t_1}A ∩ ... ∩ T^{t_k}A for a base set A supplied separately.
struct ShiftedTerm {
  std::vector<BigInt> times;
};

/// T^time applied to `set`.
struct ShiftedFactor {
  const LevelSet* set = nullptr;
  BigInt time;
};

/// A common frame for evaluating expressions built from shifted sets.
///
/// All times are translated by one offset c >= 0 so that every translated time is
/// nonnegative, and a work stage K is chosen with enough headroom. Inside the frame
/// T^{t+c} of a lifted set is an exact level translation. Measures of unions,
/// intersections and differences of frame images equal the measures of the
/// untranslated expression, since T^c preserves measure.
class ShiftFrame {
 public:
  ShiftFrame(const Construction& construction, std::span<const ShiftedFactor> factors, int min_stage = 1);

  int work_stage() const noexcept { return stage_; }
  const BigInt& offset() const noexcept { return offset_; }

  /// T^{time + offset} of `set`, materialized at the work stage. Lifts are cached by
  /// address, so `set` must outlive the frame.
  LevelSet image(const LevelSet& set, const BigInt& time) const;

 private:
  const Construction* construction_;
  int stage_ = 1;
  BigInt offset_;
  BigInt max_time_;
  mutable std::map<const LevelSet*, LevelSet> lifted_;
};

/// μ(T^a A ∩ B), exactly.
Rational intersect_shifted_measure(const Construction& c, const LevelSet& a_set, const LevelSet& b_set,
                                   const BigInt& a);

/// μ(∩_u T^{t_u} S_u) for arbitrary base sets.
Rational intersection_measure(const Construction& c, std::span<const ShiftedFactor> factors);

/// μ(∪_terms ∩_u T^{t_u} A).
Rational expr_union_measure(const Construction& c, const LevelSet& a_set, std::span<const ShiftedTerm> terms);

enum class Direction { Forward, Inverse };

const char* to_string(Direction d);

/// Terms of the two asymmetry displays at stage j, i = 1..r_j-2:
///   display 0: A ∩ T^{-m(j,i)}A ∩ T^{m(j,i+1)}A
///   display 1: A ∩ T^{m(j,i)}A ∩ T^{-m(j,i+1)}A
/// The inverse direction negates every time.
std::vector<ShiftedTerm> asymmetry_terms(const Construction& c, int j, int display, Direction direction);

struct DisplayReport {
  int j = 0;
  Direction direction = Direction::Forward;
  Rational expr0;
  Rational expr1;
  Rational mu_a;
  std::size_t cuts = 0;
  /// μ(A Δ union of display-1 terms).
  Rational display1_defect;
};

/// Throws InvalidArgument when r_j < 3.
DisplayReport display_stats(const Construction& c, const LevelSet& a_set, int j, Direction direction);

enum class SidonKind { Empty, Column, Violation };

const char* to_string(SidonKind k);

struct SidonWitness {
  SidonKind kind = SidonKind::Empty;
  std::vector<std::size_t> columns;  // 1-based columns of stage j met by X_j ∩ T^{-m}X_j
  Rational measure;                  // μ(X_j ∩ T^{-m}X_j)
  int work_stage = 0;
};

/// Classifies X_j ∩ T^{-m}X_j by the stage-j columns it meets. Requires h_j < m <= h_{j+1}.
SidonWitness sidon_witness(const Construction& c, int j, const BigInt& m);

struct SidonCheckOptions {
  BigInt exhaustive_budget{1'000'000};
  std::size_t random_samples = 256;
  std::uint64_t seed = 0;
};

struct SidonHit {
  BigInt m;
  SidonWitness witness;
};

struct SidonReport {
  int j = 0;
  bool exhaustive = false;
  std::size_t tested = 0;
  std::size_t random_tested = 0;
  BigInt window_radius;          // δ range of the structured sample (h_j)
  std::vector<SidonHit> hits;    // every nonempty witness, ascending in m
  std::size_t violations = 0;
};

/// Exhaustive over h_j < m <= h_{j+1} when that range fits the budget; otherwise the
/// structured sample m(j,i) + δ, |δ| <= h_j, plus uniform random m.
SidonReport sidon_check(const Construction& c, int j, const SidonCheckOptions& options);

struct MixingPoint {
  BigInt n;
  Rational value;
};

/// μ(T^n A ∩ B) for each n, in input order.
std::vector<MixingPoint> mixing_curve(const Construction& c, const LevelSet& a_set, const LevelSet& b_set,
                                      std::span<const BigInt> ns);

/// Partial sums Σ_{j<=J} 1/r_j for J = 1..max_stage.
std::vector<Rational> spectral_condition_report(const Construction& c, int max_stage);

}  // namespace rankone

#endif
