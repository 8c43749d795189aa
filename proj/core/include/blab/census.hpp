#pragma once

// Exact word censuses (aperiodic words, theta-words, Y-alphabet words) and
// the counting bounds they are compared against.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "blab/budget.hpp"
#include "blab/word.hpp"

namespace blab {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kDefaultTheta = 0.03;
inline constexpr double kDefaultBalance = 0.499;

// Slack used when comparing products like theta*r with integers, so that
// 0.4 * 10 counts as 4.
inline constexpr double kRatioSlack = 1e-9;

/// Enumeration limits shared by every census.
struct CensusOptions {
  std::uint64_t node_budget = default_node_budget();
  unsigned jobs = 1;
};

// ---------------------------------------------------------------------------
// t-aperiodic words

bool is_t_aperiodic(std::span<const Letter> w, int t);

// Reduced t-aperiodic words of length r over m generators. b(0) = 1.
std::uint64_t count_aperiodic_exact(int m, int r, int t,
                                    const CensusOptions& options = {});

// Smallest t >= 2 with l^t > base and base*l/(l^t - base) < slack_target.
// For X-words base = 2m and slack_target = 2m-1-l. Returns 0 if no t <= 64
// works.
int aperiodicity_threshold(double base, double l, double slack_target);
double aperiodicity_kappa(double base, double l, int t);

struct AperiodicBoundRow {
  int r = 0;
  std::uint64_t exact = 0;
  long double bound = 0;  // l^r
  bool holds = false;
};

struct AperiodicBoundCheck {
  int m = 0;
  double l = 0;
  int t = 0;
  double kappa = 0;
  bool hypotheses_ok = false;  // 0 < l < 2m-1 and a valid t exists
  std::vector<AperiodicBoundRow> rows;  // r = 0..r_max
  bool holds() const;
};

AperiodicBoundCheck aperiodic_lower_bound_check(int m, int r_max, double l,
                                                const CensusOptions& options = {});

// ---------------------------------------------------------------------------
// theta-words

// Greedy left-to-right packing of disjoint x x / X X occurrences.
std::size_t count_disjoint_squares(std::span<const Letter> w) noexcept;
bool is_theta_word(std::span<const Letter> w, double theta);

// Number of reduced theta-words of length r over m generators.
std::uint64_t count_theta_words(int m, int r, double theta,
                                const CensusOptions& options = {});

struct ThetaBound {
  int m = 0;
  int r = 0;
  double theta = 0;
  int k = 0;                  // floor(r - theta r)
  BigInt combinatorial;       // C(k, r-k) 2m (2m-1)^(k-1)
  BigInt dominating;          // 2^r 2m (2m-1)^(k-1)
  long double headline = 0;   // (2m-1)^((1 - theta/2) r)
  bool headline_hypotheses_ok = false;  // m > 2^(3/theta)
  // 2^r 2m (2m-1)^((1-theta) r - 1) < (2m-1)^((1-theta/2) r) at this r.
  bool headline_inequality_at_r = false;
};

ThetaBound theta_upper_bound(int m, int r, double theta);

// ---------------------------------------------------------------------------
// Y-alphabet: y_{2j-1} = x_j, y_{2j} = x_j^2, signed like X-letters.

// Pair index j of a Y-letter (1-based).
inline int y_pair(Letter y) noexcept { return ((y < 0 ? -y : y) + 1) / 2; }

// No two adjacent letters share a pair {2j-1, 2j}.
bool is_pair_free(std::span<const Letter> y_word) noexcept;

// Substitutes the X-form letter by letter; the result is not reduced.
Word x_form(std::span<const Letter> y_word);

std::string format_y_word(std::span<const Letter> y_word);
Word parse_y_word(std::string_view text, int m);

std::uint64_t count_pairfree_aperiodic_y(int m, int r, int t,
                                         const CensusOptions& options = {});

struct PairfreeBoundCheck {
  int m = 0;
  double l = 0;
  int t = 0;
  double kappa = 0;
  bool hypotheses_ok = false;  // m >= 3, 0 < l < 4m-4, valid t
  std::vector<AperiodicBoundRow> rows;
  bool holds() const;
};

PairfreeBoundCheck pairfree_lower_bound_check(int m, int r_max, double l,
                                              const CensusOptions& options = {});

// ---------------------------------------------------------------------------
// Binomial tails and unbalanced words

// Sum of C(r, j) for 0 <= j <= floor(lambda r).
BigInt binomial_tail(int r, double lambda);
// tail(r, lambda) <= c d^r. Throws InvalidArgument unless 0 < lambda < 1/2.
bool tail_bound_check(int r, double lambda, double c, double d);

struct UnbalancedCount {
  int m = 0;
  int r = 0;
  double threshold = kDefaultBalance;
  BigInt even_side;   // pair-free words with #even letters <= threshold r
  BigInt odd_side;    // pair-free words with #odd letters <= threshold r
  BigInt either;      // union of the two
  BigInt dominating;  // (2m)^r * sum_{k <= threshold r} C(r, k)
  BigInt total;       // all pair-free words of length r
};

UnbalancedCount count_unbalanced(int m, int r,
                                 double threshold = kDefaultBalance);

}  // namespace blab
