#pragma once

// Burnside-type presentations in the low-rank regime: periods are chosen
// rank by rank, one representative per free conjugacy-and-inversion class,
// and group questions about short words are answered in the free group.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blab/census.hpp"
#include "blab/word.hpp"

namespace blab {

struct ParameterCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// theta, 1/m, beta, gamma, epsilon, zeta, 1/n with the recorded side
/// conditions. Values are stored, never forced into consistency.
struct ParameterSystem {
  double theta = kDefaultTheta;
  int m = 2;
  double beta = 0.01;
  double gamma = 0.005;
  double epsilon = 0.002;
  double zeta = 0.001;
  int n = 61;

  double beta_bar() const { return 1.0 - beta; }
  double gamma_bar() const { return 1.0 - gamma; }

  // theta > 1/m > beta > gamma > epsilon > zeta > 1/n
  bool chain_holds() const;
  // Chain plus the side conditions; `t` enters epsilon n > t.
  std::vector<ParameterCheck> evaluate(int t = 2) const;
  void validate() const;  // n odd, n >= 1, all reals in (0, 1)
};

struct Period {
  Word word;
  Word key;  // conj_class_key(word)
  std::int64_t exponent = 0;
  bool theta_word = false;

  std::size_t rank() const { return word.size(); }
};

enum class Variant {
  kMaximal,
  kAvoidSubgroup,
  kThetaFiltered,
  kCoprimeSplit,
  kScheduleGated,
};

const char* to_string(Variant v);
Variant parse_variant(const std::string& name);

/// r_0 = 0 < r_1 < r_2 < ...; r_{i+1} = 2K r_i when i+1 is even and
/// 8K^3 r_i when i+1 is odd. j is a free radius iff r_i <= j < r_{i+1} for
/// an even i.
struct RadiusSchedule {
  std::int64_t K = 0;
  std::int64_t r1 = 0;
  std::vector<std::int64_t> radii;  // r_0, r_1, ... up to the first > horizon

  bool is_free(std::int64_t j) const;
  // i with r_i <= j < r_{i+1}.
  std::size_t interval(std::int64_t j) const;
};

RadiusSchedule schedule(std::int64_t K, std::int64_t r1, std::int64_t horizon);

enum class PeriodFilter { kAll, kTheta, kNotTheta, kAvoidSubalphabet };

struct FilterSpec {
  PeriodFilter kind = PeriodFilter::kAll;
  double theta = kDefaultTheta;
  std::vector<Letter> sub;  // for kAvoidSubalphabet
};

// One representative per class of cyclically reduced primitive words of
// length `rank` passing the filter, in increasing key order. Exponents are
// left at 0 for the caller to assign.
std::vector<Period> enumerate_periods(const Alphabet& alphabet, int rank,
                                      const FilterSpec& filter,
                                      const CensusOptions& options = {});

struct BuildOptions {
  Variant variant = Variant::kMaximal;
  int max_rank = 3;
  double theta = kDefaultTheta;
  std::int64_t n1 = 0;  // coprime-split exponents; 0 means params.n
  std::int64_t n2 = 0;
  std::int64_t schedule_K = 0;
  std::int64_t schedule_r1 = 0;
  CensusOptions census;
};

class Presentation {
 public:
  Presentation(Alphabet alphabet, ParameterSystem params, Variant variant);

  const Alphabet& alphabet() const { return alphabet_; }
  const ParameterSystem& params() const { return params_; }
  Variant variant() const { return variant_; }
  int max_rank() const { return max_rank_; }
  double theta() const { return theta_; }
  std::int64_t n1() const { return n1_; }
  std::int64_t n2() const { return n2_; }
  const std::optional<RadiusSchedule>& radius_schedule() const {
    return schedule_;
  }

  // Periods of rank i (empty when none).
  const std::vector<Period>& periods(int rank) const;
  std::size_t period_count() const;
  // All periods, rank ascending then in stored order.
  std::vector<const Period*> all_periods() const;

  // Longest word length for which free-group answers are used: floor(n/6)
  // with n the smallest exponent, unbounded without periods.
  std::size_t regime_cap() const;

  // Looks up the period whose class key equals `key`.
  const Period* find_by_key(const Word& key) const;

  void add_period(Period p);
  bool remove_period(const Word& key);
  void set_max_rank(int r) { max_rank_ = r; }
  void set_theta(double t) { theta_ = t; }
  void set_exponents(std::int64_t n1, std::int64_t n2) {
    n1_ = n1;
    n2_ = n2;
  }
  void set_schedule(RadiusSchedule s) { schedule_ = std::move(s); }

  // Stable identifier: FNV-1a of the serialized JSON, hex.
  std::string id() const;

 private:
  Alphabet alphabet_;
  ParameterSystem params_;
  Variant variant_;
  int max_rank_ = 0;
  double theta_ = kDefaultTheta;
  std::int64_t n1_ = 0;
  std::int64_t n2_ = 0;
  std::optional<RadiusSchedule> schedule_;
  std::map<int, std::vector<Period>> ranks_;
  std::map<Word, std::pair<int, std::size_t>, WordLess> index_;
};

Presentation build_presentation(const Alphabet& alphabet,
                                const ParameterSystem& params,
                                const BuildOptions& options);

// Rank, primitivity and class-distinctness conditions on the period lists,
// plus exponent parity; returns one message per violation.
std::vector<std::string> check_conditions(const Presentation& p);

inline constexpr const char* kPresentationFormat = "burnside-lab/presentation";
inline constexpr int kPresentationVersion = 1;

nlohmann::json to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

struct PresentationDiff {
  std::vector<std::string> only_left;   // formatted period words
  std::vector<std::string> only_right;
  std::vector<std::string> exponent_changes;
  std::vector<std::string> header_changes;
  bool identical() const {
    return only_left.empty() && only_right.empty() &&
           exponent_changes.empty() && header_changes.empty();
  }
};
PresentationDiff diff(const Presentation& left, const Presentation& right);

// ---------------------------------------------------------------------------
// Torsion classification

enum class VerdictKind { kTrivial, kTorsion, kFreeSurrogate };
const char* to_string(VerdictKind k);

struct TorsionVerdict {
  VerdictKind kind = VerdictKind::kTrivial;
  std::uint64_t order = 1;  // 0 for free-surrogate (infinite order)
  const Period* period = nullptr;
  std::int64_t power = 0;  // w ~ period^power
  Word root;
  std::size_t regime_cap = 0;

  bool finite() const { return kind != VerdictKind::kFreeSurrogate; }
};

// Throws RegimeViolation when |reduce(w)| exceeds the presentation's cap.
TorsionVerdict classify_torsion(std::span<const Letter> w,
                                const Presentation& p);

// ---------------------------------------------------------------------------
// Ball censuses

struct BoundComparison {
  std::string name;
  long double lhs = 0;
  long double rhs = 0;
  bool holds = false;
  bool hypotheses_ok = false;
};

struct BallReport {
  int r = 0;
  std::size_t regime_cap = 0;
  std::int64_t n = 0;
  std::vector<std::uint64_t> sphere_sizes;   // j = 0..r
  std::vector<std::uint64_t> sphere_torsion; // nontrivial finite order
  std::uint64_t ball_size = 0;
  std::uint64_t torsion = 0;                 // nontrivial finite order
  std::uint64_t law_holders = 0;             // g^n = 1, identity included
  // Ball elements classified to each period, keyed by period class key.
  std::map<Word, std::uint64_t, WordLess> per_period;
  std::vector<BoundComparison> comparisons;

  double torsion_density() const;
  double law_density() const;
};

BallReport ball_census(const Presentation& p, int r,
                       const CensusOptions& options = {});

struct DropRecord {
  Word period;
  int rank = 0;
  double density_before = 0;
  double density_after = 0;
  bool dropped = false;  // false: skipped because it would overshoot
};

struct TuneResult {
  Presentation presentation;
  std::vector<DropRecord> log;
  double initial_density = 0;
  double final_density = 0;
  double target = 0;
  double granularity = 0;  // largest single-period density share
  double tolerance = 0;
  bool reachable = true;
};

TuneResult tune_density(const Presentation& p, int r, double target,
                        double tolerance, const CensusOptions& options = {});

}  // namespace blab
