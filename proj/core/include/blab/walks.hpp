#pragma once

// Random walks on the free group and on small finite groups: exact
// distance-chain distributions, Monte Carlo torsion probabilities, total
// variation decay, and partial-limit analysis of real sequences.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blab/census.hpp"
#include "blab/presentation.hpp"
#include "blab/word.hpp"

namespace blab {

/// Finitely supported step law on the letters of a free group; letter 0 is
/// the identity step.
struct StepDistribution {
  std::vector<Letter> support;
  std::vector<double> weights;

  // Weight 1/(2m+1) on the identity and on every signed generator.
  static StepDistribution lazy_uniform(const Alphabet& alphabet);

  bool lazy() const;
  bool symmetric() const;
  // Every generator or its inverse appears in the support.
  bool generates(const Alphabet& alphabet) const;
  // Positive weights summing to 1 within 1e-12, letters in the alphabet.
  void validate(const Alphabet& alphabet) const;
};

// ---------------------------------------------------------------------------
// Exact distribution of |X_r| for the lazy uniform walk on F_m

struct DistanceDistribution {
  int m = 0;
  int r = 0;
  // counts[d] / denominator = Pr(|X_r| = d); denominator = (2m+1)^r.
  std::vector<BigInt> counts;
  BigInt denominator;

  double probability(int d) const;
  double return_probability() const { return probability(0); }
  std::vector<double> probabilities() const;
};

DistanceDistribution exact_distance_distribution(int m, int r);

// Pr(X_j = e) for j = 0..r_max, each exact before conversion.
std::vector<double> return_probabilities(int m, int r_max);

struct KestenReport {
  int m = 0;
  int r_max = 0;
  double rho_hat = 0;        // (1 + 2 sqrt(2m-1)) / (2m+1)
  double root_at_r_max = 0;  // Pr(X_{r_max} = e)^(1/r_max)
  bool holds = false;        // Pr(X_r = e) <= rho_hat^r for 2 <= r <= r_max
  int first_violation = 0;   // 0 when none
};

double lazy_spectral_radius(int m);
KestenReport kesten_decay_check(int m, int r_max);

struct ExponentInequality {
  double value = 0;  // rho^(1+6 gamma) (2m+1)^(7 gamma)
  bool holds = false;
};
ExponentInequality rho_gamma_inequality(double rho, double gamma, int m);

// ---------------------------------------------------------------------------
// Monte Carlo

struct WalkOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  // Endpoints longer than the regime cap go to the indeterminate bucket
  // instead of refusing the run.
  bool allow_indeterminate = false;
};

struct WalkReport {
  std::int64_t steps = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;           // endpoints g with g^n = 1
  std::uint64_t indeterminate = 0;  // endpoints beyond the regime cap
  double estimate = 0;              // hits / determinate samples
  double standard_error = 0;
  std::int64_t law_exponent = 0;
  std::string presentation_id;
  bool degenerate_step = false;     // support does not generate
};

WalkReport sample_walk_torsion(const Presentation& p,
                               const StepDistribution& step, std::int64_t r,
                               const WalkOptions& options);

struct PairWalkReport {
  WalkReport joint;   // both coordinates satisfy the law
  WalkReport first;   // independent estimator of the first coordinate
  WalkReport second;  // independent estimator of the second coordinate
  std::int64_t first_steps = 0;
  std::int64_t second_steps = 0;
  double product = 0;
  double combined_se = 0;
  bool identity_within_3se = false;
};

// Z = (X_{first_steps}, X'_{second_steps}) with independent coordinates.
PairWalkReport pair_walk_torsion(const Presentation& p,
                                 const StepDistribution& step,
                                 std::int64_t first_steps,
                                 std::int64_t second_steps,
                                 const WalkOptions& options);

// Coordinates of 4K^2 r and r steps.
PairWalkReport product_walk_torsion(const Presentation& p, std::int64_t K,
                                    const StepDistribution& step,
                                    std::int64_t r, const WalkOptions& options);

// Both coordinates of r steps.
PairWalkReport square_walk_torsion(const Presentation& p,
                                   const StepDistribution& step,
                                   std::int64_t r, const WalkOptions& options);

// ---------------------------------------------------------------------------
// Finite groups and total variation

/// A finite group by multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  static FiniteGroup cyclic(int k);
  // Symmetries of a k-gon, order 2k. Element i + k f is rho^i sigma^f.
  static FiniteGroup dihedral(int k);
  // Validates the group axioms; `generators` must generate.
  static FiniteGroup from_table(std::string name,
                                std::vector<std::vector<int>> table,
                                std::vector<int> generators);

  int order() const { return static_cast<int>(table_.size()); }
  int multiply(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverses_[a]; }
  const std::string& name() const { return name_; }

  // Lazy uniform law on {e} and a symmetric generating set.
  std::vector<std::uint64_t> lazy_uniform_weights() const;

 private:
  FiniteGroup(std::string name, std::vector<std::vector<int>> table,
              std::vector<int> generators);
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  std::vector<int> generators_;
};

using LabeledDistribution = std::map<std::string, double>;

// Half the L1 distance; labels missing on one side count as 0.
double tv_distance(const LabeledDistribution& mu, const LabeledDistribution& nu);

struct TvDecayReport {
  std::string group;
  int r_max = 0;
  // tv[r] = d_TV(mu^{*(r+1)}, mu^{*r}) for r = 0..r_max, mu^{*0} = delta_e.
  std::vector<double> tv;
  // Smallest r0 such that tv is non-increasing on [r0, r_max], decided on
  // exact rationals.
  int nonincreasing_from = 0;
  // Smallest K with tv[r] <= 2K / r^(1/3) for all 1 <= r <= r_max.
  double envelope_K = 0;

  // First r with tv[r] < threshold, if any.
  std::optional<int> first_below(double threshold) const;
};

// Integer weights on the group elements; the law is weights / sum. Throws
// InvalidArgument when the identity has weight 0.
TvDecayReport tv_decay_curve(const FiniteGroup& g,
                             const std::vector<std::uint64_t>& weights,
                             int r_max);

// ---------------------------------------------------------------------------
// Partial limits

struct LimitPointReport {
  std::size_t tail_start = 0;
  double epsilon = 0;
  double min_value = 0;
  double max_value = 0;
  std::vector<long long> occupied_cells;  // floor(value / epsilon)
  double max_gap = 0;        // largest gap between consecutive tail values
  double max_late_step = 0;  // largest |a_{n+1} - a_n| in the tail
  bool connected = false;    // max_gap <= 2 epsilon + max_late_step
};

LimitPointReport limit_point_analysis(const std::vector<double>& seq,
                                      double epsilon,
                                      std::size_t tail_start = 0);

// Pr(|X_j| is a torsion radius of the schedule) for the lazy uniform walk on
// F_m, j = 0..j_max.
std::vector<double> schedule_surrogate_profile(int m, const RadiusSchedule& s,
                                               int j_max);

// ---------------------------------------------------------------------------
// Exhaustive formal-word census

struct FormalWordReport {
  int r = 0;
  int R = 0;
  std::uint64_t total = 0;           // (2m+1)^R
  std::uint64_t finite_order = 0;    // trivial or torsion endpoints
  std::uint64_t infinite_order = 0;  // free-surrogate endpoints
  double rho = 0;
  double gamma = 0;
  double c = 0;
  long double bound = 0;       // 16 c R^5 (rho(2m+1))^((1+6g)R) (2m+1)^(gR)
  long double small_bound = 0; // (2m+1)^R / R
  bool finite_holds = false;
  bool infinite_holds = false;
  bool radius_hypothesis = false;      // R > 2r / gamma
  bool no_period_gap = false;          // no period of length in [r+1, R]
  bool no_simple_gap = false;          // every class of length in [r+1, R]
                                       // is a period
  bool gap_vacuous = false;            // R < r+1
  ExponentInequality exponent_inequality;
};

FormalWordReport formal_word_bound_check(const Presentation& p, int r, int R,
                                         double rho, double gamma, double c,
                                         const CensusOptions& options = {});

}  // namespace blab
