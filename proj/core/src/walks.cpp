#include "blab/walks.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "blab/errors.hpp"
#include "blab/rng.hpp"

namespace blab {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw InvalidArgument(message);
  }
}

double ratio(const BigInt& num, const BigInt& den) {
  return static_cast<double>(Float50(num) / Float50(den));
}

// Trajectories are grouped into this many chunks regardless of the worker
// count; chunk sums are merged in order.
constexpr std::size_t kChunks = 64;

std::int64_t law_exponent(const Presentation& p) {
  std::int64_t l = 0;
  for (const Period* q : p.all_periods()) {
    l = l == 0 ? q->exponent : std::lcm(l, q->exponent);
  }
  return l == 0 ? p.params().n : l;
}

class StepSampler {
 public:
  explicit StepSampler(const StepDistribution& step)
      : support_(step.support),
        uniform_(std::adjacent_find(step.weights.begin(), step.weights.end(),
                                    std::not_equal_to<>()) ==
                 step.weights.end()),
        dist_(step.weights.begin(), step.weights.end()) {}

  Letter operator()(Rng& rng) {
    if (uniform_) {
      return support_[uniform_below(rng, static_cast<std::uint32_t>(support_.size()))];
    }
    return support_[dist_(rng)];
  }

 private:
  std::vector<Letter> support_;
  bool uniform_;
  boost::random::discrete_distribution<std::size_t, double> dist_;
};

void walk(Word& w, std::int64_t steps, StepSampler& sampler, Rng& rng) {
  for (std::int64_t s = 0; s < steps; ++s) {
    const Letter l = sampler(rng);
    if (l == 0) {
      continue;
    }
    if (!w.empty() && w.back() == -l) {
      w.pop_back();
    } else {
      w.push_back(l);
    }
  }
}

enum class Outcome { kHit, kMiss, kIndeterminate };

Outcome judge(const Word& w, const Presentation& p, std::size_t cap,
              std::int64_t law_n) {
  if (w.size() > cap) {
    return Outcome::kIndeterminate;
  }
  const TorsionVerdict v = classify_torsion(w, p);
  if (v.kind == VerdictKind::kTrivial) {
    return Outcome::kHit;
  }
  if (v.kind == VerdictKind::kTorsion &&
      law_n % static_cast<std::int64_t>(v.order) == 0) {
    return Outcome::kHit;
  }
  return Outcome::kMiss;
}

struct Tally {
  std::uint64_t hits = 0;
  std::uint64_t indeterminate = 0;
};

WalkReport finish(WalkReport rep, const std::vector<Tally>& tallies) {
  for (const Tally& t : tallies) {
    rep.hits += t.hits;
    rep.indeterminate += t.indeterminate;
  }
  const std::uint64_t determinate = rep.samples - rep.indeterminate;
  if (determinate > 0) {
    const double p = static_cast<double>(rep.hits) / determinate;
    rep.estimate = p;
    rep.standard_error = std::sqrt(p * (1 - p) / determinate);
  } else {
    rep.estimate = std::nan("");
    rep.standard_error = std::nan("");
  }
  return rep;
}

void check_walk_inputs(const Presentation& p, const StepDistribution& step,
                       std::int64_t longest, const WalkOptions& options) {
  require(options.samples > 0, "a walk report needs at least one sample");
  require(longest >= 0, "step count must be non-negative");
  step.validate(p.alphabet());
  if (!options.allow_indeterminate &&
      static_cast<std::uint64_t>(longest) > p.regime_cap()) {
    throw RegimeViolation("walks of " + std::to_string(longest) +
                          " steps can leave the regime cap " +
                          std::to_string(p.regime_cap()));
  }
}

WalkReport base_report(const Presentation& p, const StepDistribution& step,
                       std::int64_t steps, std::uint64_t samples) {
  WalkReport rep;
  rep.steps = steps;
  rep.samples = samples;
  rep.law_exponent = law_exponent(p);
  rep.presentation_id = p.id();
  rep.degenerate_step = !step.generates(p.alphabet());
  return rep;
}

// Runs `per_sample(i, rng)` for every trajectory; returns the chunk tallies.
template <typename PerSample>
std::vector<Tally> run_trajectories(std::uint64_t samples, unsigned jobs,
                                    PerSample&& per_sample) {
  std::vector<Tally> tallies(kChunks);
  parallel_for(kChunks, jobs, [&](std::size_t c) {
    const std::uint64_t lo = samples * c / kChunks;
    const std::uint64_t hi = samples * (c + 1) / kChunks;
    for (std::uint64_t i = lo; i < hi; ++i) {
      switch (per_sample(i)) {
        case Outcome::kHit:
          ++tallies[c].hits;
          break;
        case Outcome::kIndeterminate:
          ++tallies[c].indeterminate;
          break;
        case Outcome::kMiss:
          break;
      }
    }
  });
  return tallies;
}

WalkReport estimate(const Presentation& p, const StepDistribution& step,
                    std::int64_t r, const WalkOptions& options,
                    std::uint64_t tag) {
  const std::size_t cap = p.regime_cap();
  const std::int64_t law_n = law_exponent(p);
  auto tallies = run_trajectories(options.samples, options.jobs,
                                  [&](std::uint64_t i) {
                                    StepSampler sampler(step);
                                    Rng rng = make_stream(options.seed, i, tag);
                                    Word w;
                                    walk(w, r, sampler, rng);
                                    return judge(w, p, cap, law_n);
                                  });
  return finish(base_report(p, step, r, options.samples), tallies);
}

}  // namespace

// ---------------------------------------------------------------------------
// Step distributions

StepDistribution StepDistribution::lazy_uniform(const Alphabet& alphabet) {
  StepDistribution d;
  d.support.push_back(0);
  for (Letter l : alphabet.signed_letters()) {
    d.support.push_back(l);
  }
  d.weights.assign(d.support.size(), 1.0 / static_cast<double>(d.support.size()));
  return d;
}

bool StepDistribution::lazy() const {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] == 0 && weights[i] > 0) {
      return true;
    }
  }
  return false;
}

bool StepDistribution::symmetric() const {
  std::map<Letter, double> w;
  for (std::size_t i = 0; i < support.size(); ++i) {
    w[support[i]] += weights[i];
  }
  for (const auto& [l, x] : w) {
    auto it = w.find(-l);
    if (it == w.end() || std::abs(it->second - x) > 1e-12) {
      return false;
    }
  }
  return true;
}

bool StepDistribution::generates(const Alphabet& alphabet) const {
  for (Letter g : alphabet.generators()) {
    bool seen = false;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if ((support[i] == g || support[i] == -g) && weights[i] > 0) {
        seen = true;
      }
    }
    if (!seen) {
      return false;
    }
  }
  return true;
}

void StepDistribution::validate(const Alphabet& alphabet) const {
  require(!support.empty() && support.size() == weights.size(),
          "step distribution needs matching support and weights");
  double total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    require(support[i] == 0 || alphabet.contains(support[i]),
            "step letter outside the alphabet");
    require(weights[i] > 0, "step weights must be positive");
    total += weights[i];
  }
  require(std::abs(total - 1.0) <= 1e-12, "step weights must sum to 1");
}

// ---------------------------------------------------------------------------
// Distance chain

double DistanceDistribution::probability(int d) const {
  if (d < 0 || d >= static_cast<int>(counts.size())) {
    return 0.0;
  }
  return ratio(counts[d], denominator);
}

std::vector<double> DistanceDistribution::probabilities() const {
  std::vector<double> out;
  out.reserve(counts.size());
  for (const BigInt& c : counts) {
    out.push_back(ratio(c, denominator));
  }
  return out;
}

namespace {

// One application of the distance kernel to integer path counts.
std::vector<BigInt> distance_step(const std::vector<BigInt>& c, int m) {
  std::vector<BigInt> next(c.size() + 1);
  next[0] += c[0];
  next[1] += 2 * m * c[0];
  for (std::size_t d = 1; d < c.size(); ++d) {
    if (c[d] == 0) {
      continue;
    }
    next[d] += c[d];
    next[d - 1] += c[d];
    next[d + 1] += (2 * m - 1) * c[d];
  }
  return next;
}

}  // namespace

DistanceDistribution exact_distance_distribution(int m, int r) {
  require(m >= 1, "m must be at least 1");
  require(r >= 0, "r must be non-negative");
  DistanceDistribution out{m, r, {BigInt(1)}, BigInt(1)};
  for (int s = 0; s < r; ++s) {
    out.counts = distance_step(out.counts, m);
    out.denominator *= 2 * m + 1;
  }
  return out;
}

std::vector<double> return_probabilities(int m, int r_max) {
  require(m >= 1, "m must be at least 1");
  require(r_max >= 0, "r must be non-negative");
  std::vector<double> out{1.0};
  std::vector<BigInt> c{BigInt(1)};
  BigInt den = 1;
  for (int s = 0; s < r_max; ++s) {
    c = distance_step(c, m);
    den *= 2 * m + 1;
    out.push_back(ratio(c[0], den));
  }
  return out;
}

double lazy_spectral_radius(int m) {
  require(m >= 1, "m must be at least 1");
  return (1.0 + 2.0 * std::sqrt(2.0 * m - 1.0)) / (2.0 * m + 1.0);
}

KestenReport kesten_decay_check(int m, int r_max) {
  require(r_max >= 10, "the decay check needs r_max >= 10");
  KestenReport rep;
  rep.m = m;
  rep.r_max = r_max;
  rep.rho_hat = lazy_spectral_radius(m);
  const std::vector<double> ret = return_probabilities(m, r_max);
  rep.holds = true;
  for (int r = 2; r <= r_max; ++r) {
    if (static_cast<long double>(ret[r]) >
        std::pow(static_cast<long double>(rep.rho_hat), r)) {
      rep.holds = false;
      if (rep.first_violation == 0) {
        rep.first_violation = r;
      }
    }
  }
  rep.root_at_r_max = std::pow(ret[r_max], 1.0 / r_max);
  return rep;
}

ExponentInequality rho_gamma_inequality(double rho, double gamma, int m) {
  const double v =
      std::pow(rho, 1 + 6 * gamma) * std::pow(2.0 * m + 1.0, 7 * gamma);
  return {v, v < 1.0};
}

// ---------------------------------------------------------------------------
// Monte Carlo

WalkReport sample_walk_torsion(const Presentation& p,
                               const StepDistribution& step, std::int64_t r,
                               const WalkOptions& options) {
  check_walk_inputs(p, step, r, options);
  return estimate(p, step, r, options, 0);
}

PairWalkReport pair_walk_torsion(const Presentation& p,
                                 const StepDistribution& step,
                                 std::int64_t first_steps,
                                 std::int64_t second_steps,
                                 const WalkOptions& options) {
  check_walk_inputs(p, step, std::max(first_steps, second_steps), options);
  PairWalkReport rep;
  rep.first_steps = first_steps;
  rep.second_steps = second_steps;

  const std::size_t cap = p.regime_cap();
  const std::int64_t law_n = law_exponent(p);
  auto tallies = run_trajectories(
      options.samples, options.jobs, [&](std::uint64_t i) {
        StepSampler sampler(step);
        Rng rng = make_stream(options.seed, i, 0);
        Word x;
        walk(x, first_steps, sampler, rng);
        Word y;
        walk(y, second_steps, sampler, rng);
        const Outcome a = judge(x, p, cap, law_n);
        const Outcome b = judge(y, p, cap, law_n);
        if (a == Outcome::kIndeterminate || b == Outcome::kIndeterminate) {
          return Outcome::kIndeterminate;
        }
        return a == Outcome::kHit && b == Outcome::kHit ? Outcome::kHit
                                                        : Outcome::kMiss;
      });
  rep.joint = finish(base_report(p, step, first_steps + second_steps,
                                 options.samples),
                     tallies);
  rep.first = estimate(p, step, first_steps, options, 1);
  rep.second = estimate(p, step, second_steps, options, 2);

  const double px = rep.first.estimate;
  const double py = rep.second.estimate;
  rep.product = px * py;
  const double sz = rep.joint.standard_error;
  const double sx = rep.first.standard_error;
  const double sy = rep.second.standard_error;
  rep.combined_se = std::sqrt(sz * sz + py * py * sx * sx + px * px * sy * sy);
  rep.identity_within_3se =
      std::abs(rep.joint.estimate - rep.product) <= 3 * rep.combined_se;
  return rep;
}

PairWalkReport product_walk_torsion(const Presentation& p, std::int64_t K,
                                    const StepDistribution& step,
                                    std::int64_t r, const WalkOptions& options) {
  require(K >= 1, "K must be at least 1");
  return pair_walk_torsion(p, step, 4 * K * K * r, r, options);
}

PairWalkReport square_walk_torsion(const Presentation& p,
                                   const StepDistribution& step,
                                   std::int64_t r, const WalkOptions& options) {
  return pair_walk_torsion(p, step, r, r, options);
}

// ---------------------------------------------------------------------------
// Finite groups

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table,
                         std::vector<int> generators)
    : name_(std::move(name)),
      table_(std::move(table)),
      generators_(std::move(generators)) {
  const int n = order();
  inverses_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table_[a][b] == 0) {
        inverses_[a] = b;
      }
    }
  }
}

FiniteGroup FiniteGroup::cyclic(int k) {
  require(k >= 1, "cyclic group order must be at least 1");
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      t[a][b] = (a + b) % k;
    }
  }
  return FiniteGroup("Z/" + std::to_string(k), std::move(t),
                     k > 1 ? std::vector<int>{1} : std::vector<int>{});
}

FiniteGroup FiniteGroup::dihedral(int k) {
  require(k >= 2, "dihedral group needs k >= 2");
  const int n = 2 * k;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ra = a % k, fa = a / k, rb = b % k, fb = b / k;
      const int rot = ((ra + (fa ? -rb : rb)) % k + k) % k;
      t[a][b] = rot + k * (fa ^ fb);
    }
  }
  return FiniteGroup("D" + std::to_string(k) + " (order " + std::to_string(n) +
                         ")",
                     std::move(t), {1, k});
}

FiniteGroup FiniteGroup::from_table(std::string name,
                                    std::vector<std::vector<int>> table,
                                    std::vector<int> generators) {
  const int n = static_cast<int>(table.size());
  require(n >= 1, "group table must be nonempty");
  for (const auto& row : table) {
    require(static_cast<int>(row.size()) == n, "group table must be square");
    std::vector<bool> seen(n, false);
    for (int v : row) {
      require(v >= 0 && v < n && !seen[v], "group table rows must be permutations");
      seen[v] = true;
    }
  }
  for (int a = 0; a < n; ++a) {
    require(table[0][a] == a && table[a][0] == a, "element 0 must be the identity");
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        require(table[table[a][b]][c] == table[a][table[b][c]],
                "group table is not associative");
      }
    }
  }
  std::vector<bool> reached(n, false);
  std::vector<int> frontier{0};
  reached[0] = true;
  while (!frontier.empty()) {
    const int a = frontier.back();
    frontier.pop_back();
    for (int g : generators) {
      require(g >= 0 && g < n, "generator outside the group");
      if (!reached[table[a][g]]) {
        reached[table[a][g]] = true;
        frontier.push_back(table[a][g]);
      }
    }
  }
  require(std::all_of(reached.begin(), reached.end(), [](bool b) { return b; }),
          "generators do not generate the group");
  return FiniteGroup(std::move(name), std::move(table), std::move(generators));
}

std::vector<std::uint64_t> FiniteGroup::lazy_uniform_weights() const {
  std::vector<std::uint64_t> w(order(), 0);
  w[0] = 1;
  for (int g : generators_) {
    w[g] = 1;
    w[inverses_[g]] = 1;
  }
  return w;
}

double tv_distance(const LabeledDistribution& mu, const LabeledDistribution& nu) {
  double total = 0;
  for (const auto& [label, x] : mu) {
    auto it = nu.find(label);
    total += std::abs(x - (it == nu.end() ? 0.0 : it->second));
  }
  for (const auto& [label, y] : nu) {
    if (!mu.contains(label)) {
      total += std::abs(y);
    }
  }
  return total / 2;
}

std::optional<int> TvDecayReport::first_below(double threshold) const {
  for (std::size_t r = 0; r < tv.size(); ++r) {
    if (tv[r] < threshold) {
      return static_cast<int>(r);
    }
  }
  return std::nullopt;
}

TvDecayReport tv_decay_curve(const FiniteGroup& g,
                             const std::vector<std::uint64_t>& weights,
                             int r_max) {
  const int n = g.order();
  require(static_cast<int>(weights.size()) == n,
          "one weight per group element is required");
  require(r_max >= 0, "r_max must be non-negative");
  if (weights[0] == 0) {
    throw InvalidArgument("step law on " + g.name() +
                          " is not lazy: the identity has weight 0");
  }
  std::vector<int> support;
  BigInt denom = 0;
  for (int a = 0; a < n; ++a) {
    if (weights[a] > 0) {
      support.push_back(a);
      denom += weights[a];
    }
  }

  TvDecayReport rep;
  rep.group = g.name();
  rep.r_max = r_max;
  std::vector<BigInt> cur(n);
  cur[0] = 1;
  BigInt scale = 1;  // denom^r
  std::vector<BigInt> numer;  // 2 tv[r] denom^(r+1)
  for (int r = 0; r <= r_max; ++r) {
    std::vector<BigInt> next(n);
    for (int a = 0; a < n; ++a) {
      if (cur[a] == 0) {
        continue;
      }
      for (int s : support) {
        next[g.multiply(a, s)] += cur[a] * weights[s];
      }
    }
    BigInt diff = 0;
    for (int a = 0; a < n; ++a) {
      BigInt d = next[a] - denom * cur[a];
      diff += d < 0 ? BigInt(-d) : d;
    }
    scale *= denom;
    rep.tv.push_back(ratio(diff, 2 * scale));
    numer.push_back(std::move(diff));
    cur = std::move(next);
  }
  rep.nonincreasing_from = r_max;
  for (int r = r_max; r >= 1; --r) {
    if (numer[r] <= denom * numer[r - 1]) {
      rep.nonincreasing_from = r - 1;
    } else {
      break;
    }
  }
  for (int r = 1; r <= r_max; ++r) {
    rep.envelope_K =
        std::max(rep.envelope_K, rep.tv[r] * std::cbrt(static_cast<double>(r)) / 2);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Partial limits

LimitPointReport limit_point_analysis(const std::vector<double>& seq,
                                      double epsilon, std::size_t tail_start) {
  require(epsilon > 0, "grid epsilon must be positive");
  require(tail_start < seq.size(), "tail is empty");
  LimitPointReport rep;
  rep.tail_start = tail_start;
  rep.epsilon = epsilon;
  std::vector<double> tail(seq.begin() + static_cast<std::ptrdiff_t>(tail_start),
                           seq.end());
  for (std::size_t i = 1; i < tail.size(); ++i) {
    rep.max_late_step = std::max(rep.max_late_step, std::abs(tail[i] - tail[i - 1]));
  }
  std::sort(tail.begin(), tail.end());
  rep.min_value = tail.front();
  rep.max_value = tail.back();
  for (std::size_t i = 1; i < tail.size(); ++i) {
    rep.max_gap = std::max(rep.max_gap, tail[i] - tail[i - 1]);
  }
  for (double v : tail) {
    const auto cell = static_cast<long long>(std::floor(v / epsilon));
    if (rep.occupied_cells.empty() || rep.occupied_cells.back() != cell) {
      rep.occupied_cells.push_back(cell);
    }
  }
  rep.connected = rep.max_gap <= 2 * epsilon + rep.max_late_step;
  return rep;
}

std::vector<double> schedule_surrogate_profile(int m, const RadiusSchedule& s,
                                               int j_max) {
  require(m >= 1, "m must be at least 1");
  require(j_max >= 0, "j_max must be non-negative");
  require(!s.radii.empty() && s.radii.back() > j_max,
          "schedule horizon is shorter than the profile");
  const long double q = 2.0L * m + 1.0L;
  std::vector<long double> dist{1.0L};
  std::vector<double> out;
  for (int j = 0; j <= j_max; ++j) {
    long double torsion = 0;
    for (std::size_t d = 0; d < dist.size(); ++d) {
      if (!s.is_free(static_cast<std::int64_t>(d))) {
        torsion += dist[d];
      }
    }
    out.push_back(static_cast<double>(torsion));
    std::vector<long double> next(dist.size() + 1, 0.0L);
    next[0] += dist[0] / q;
    next[1] += dist[0] * (2 * m) / q;
    for (std::size_t d = 1; d < dist.size(); ++d) {
      next[d] += dist[d] / q;
      next[d - 1] += dist[d] / q;
      next[d + 1] += dist[d] * (2 * m - 1) / q;
    }
    dist = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formal words

FormalWordReport formal_word_bound_check(const Presentation& p, int r, int R,
                                         double rho, double gamma, double c,
                                         const CensusOptions& options) {
  require(r >= 0 && R >= 1, "need r >= 0 and R >= 1");
  require(gamma > 0 && rho > 0 && c > 0, "rho, gamma and c must be positive");
  if (static_cast<std::size_t>(R) > p.regime_cap()) {
    throw RegimeViolation("formal words of length " + std::to_string(R) +
                          " exceed the regime cap " +
                          std::to_string(p.regime_cap()));
  }
  const int m = p.alphabet().rank();
  std::vector<Letter> symbols{0};
  for (Letter l : p.alphabet().signed_letters()) {
    symbols.push_back(l);
  }
  const std::size_t q = symbols.size();

  FormalWordReport rep;
  rep.r = r;
  rep.R = R;
  rep.rho = rho;
  rep.gamma = gamma;
  rep.c = c;
  rep.total = 1;
  for (int i = 0; i < R; ++i) {
    rep.total *= q;
  }

  struct Part {
    std::uint64_t finite = 0;
    std::uint64_t infinite = 0;
  };
  std::vector<Part> parts(q);
  NodeBudget budget(options.node_budget);
  parallel_for(q, options.jobs, [&](std::size_t first) {
    std::unordered_map<Word, bool, WordHash> finite_cache;
    // Odometer over positions 1..R-1 with an undo log for the reduced stack.
    std::vector<std::size_t> digit(R, 0);
    digit[0] = first;
    Word w;
    std::vector<Letter> undo(R, 0);  // 0 none, +x pushed, -x popped letter x
    auto apply = [&](int pos) {
      const Letter l = symbols[digit[pos]];
      if (l == 0) {
        undo[pos] = 0;
      } else if (!w.empty() && w.back() == -l) {
        undo[pos] = -1;
        w.pop_back();
      } else {
        undo[pos] = 1;
        w.push_back(l);
      }
    };
    auto revert = [&](int pos) {
      if (undo[pos] == 1) {
        w.pop_back();
      } else if (undo[pos] == -1) {
        w.push_back(-symbols[digit[pos]]);
      }
    };
    for (int pos = 0; pos < R; ++pos) {
      apply(pos);
    }
    std::uint64_t pending = 0;
    while (true) {
      auto it = finite_cache.find(w);
      bool finite;
      if (it == finite_cache.end()) {
        finite = classify_torsion(w, p).finite();
        finite_cache.emplace(w, finite);
      } else {
        finite = it->second;
      }
      ++(finite ? parts[first].finite : parts[first].infinite);
      if (++pending == 4096) {
        budget.charge(pending, "formal word census");
        pending = 0;
      }
      int pos = R - 1;
      while (pos >= 1) {
        revert(pos);
        if (++digit[pos] < q) {
          break;
        }
        digit[pos] = 0;
        --pos;
      }
      if (pos < 1) {
        break;
      }
      for (int k = pos; k < R; ++k) {
        apply(k);
      }
    }
    budget.charge(pending, "formal word census");
  });
  for (const Part& part : parts) {
    rep.finite_order += part.finite;
    rep.infinite_order += part.infinite;
  }

  const long double base = 2.0L * m + 1.0L;
  rep.bound = 16.0L * c * std::pow(static_cast<long double>(R), 5) *
              std::pow(rho * base, (1 + 6 * gamma) * R) *
              std::pow(base, gamma * R);
  rep.small_bound = std::pow(base, R) / R;
  rep.finite_holds = static_cast<long double>(rep.finite_order) <= rep.bound;
  rep.infinite_holds = static_cast<long double>(rep.infinite_order) <= rep.bound;
  rep.radius_hypothesis = R > 2.0 * r / gamma;
  rep.gap_vacuous = R < r + 1;
  rep.no_period_gap = true;
  rep.no_simple_gap = true;
  for (int i = r + 1; i <= R; ++i) {
    const std::size_t have = p.periods(i).size();
    if (have > 0) {
      rep.no_period_gap = false;
    }
    const std::size_t all =
        enumerate_periods(p.alphabet(), i, FilterSpec{}, options).size();
    if (have != all) {
      rep.no_simple_gap = false;
    }
  }
  rep.exponent_inequality = rho_gamma_inequality(rho, gamma, m);
  return rep;
}

}  // namespace blab
