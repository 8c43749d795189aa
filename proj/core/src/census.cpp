#include "blab/census.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "blab/errors.hpp"

namespace blab {

namespace {

constexpr std::uint64_t kChargeEvery = 4096;

// Signed letters of a k-letter alphabet in enumeration order: 1, -1, 2, -2...
std::vector<Letter> signed_range(int k) {
  std::vector<Letter> out;
  for (Letter i = 1; i <= k; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

/// Depth-first enumeration of words over a signed k-letter alphabet in which
/// each adjacent pair passes `allowed`. With t >= 2 only t-aperiodic words
/// are visited: run[p][i] counts the consecutive positions q <= p with
/// w[q] == w[q-i], and a suffix Y^t with |Y| = i exists iff that run reaches
/// (t-1) i.
template <class Allowed, class Visit>
class Enumerator {
 public:
  Enumerator(int k, int r, int t, Allowed allowed, Visit visit)
      : letters_(signed_range(k)),
        r_(r),
        t_(t),
        allowed_(allowed),
        visit_(visit),
        word_(static_cast<std::size_t>(r)),
        run_(static_cast<std::size_t>(r + 1) * static_cast<std::size_t>(r + 1), 0) {}

  // Enumerates all words starting with letters_[root]. Calls visit(word) on
  // each complete word of length r.
  void run_root(std::size_t root, NodeBudget& budget, const char* what) {
    std::uint64_t pending = 0;
    std::vector<std::size_t> next(static_cast<std::size_t>(r_) + 1, 0);
    if (!push(0, letters_[root])) {
      return;
    }
    ++pending;
    if (r_ == 1) {
      visit_(std::span<const Letter>(word_.data(), 1));
      budget.charge(pending, what);
      return;
    }
    std::size_t depth = 1;  // number of letters placed
    next[depth] = 0;
    while (depth >= 1) {
      if (next[depth] == letters_.size()) {
        --depth;
        continue;
      }
      const Letter c = letters_[next[depth]++];
      if (!allowed_(word_[depth - 1], c) || !push(depth, c)) {
        continue;
      }
      if (++pending == kChargeEvery) {
        budget.charge(pending, what);
        pending = 0;
      }
      if (static_cast<int>(depth) + 1 == r_) {
        visit_(std::span<const Letter>(word_.data(), word_.size()));
        continue;
      }
      ++depth;
      next[depth] = 0;
    }
    budget.charge(pending, what);
  }

  std::size_t roots() const { return letters_.size(); }

 private:
  bool push(std::size_t p, Letter c) {
    word_[p] = c;
    if (t_ < 2) {
      return true;
    }
    const std::size_t stride = static_cast<std::size_t>(r_ + 1);
    for (std::size_t i = 1; i <= p; ++i) {
      std::size_t run = 0;
      if (word_[p] == word_[p - i]) {
        run = (p - 1 >= i ? run_[(p - 1) * stride + i] : 0) + 1;
      }
      run_[p * stride + i] = run;
      if (run >= static_cast<std::size_t>(t_ - 1) * i) {
        return false;
      }
    }
    return true;
  }

  std::vector<Letter> letters_;
  int r_;
  int t_;
  Allowed allowed_;
  Visit visit_;
  std::vector<Letter> word_;
  std::vector<std::size_t> run_;
};

// Counts words of length r; `make_visit` builds a per-shard leaf counter.
template <class Allowed, class Accept>
std::uint64_t sharded_count(int k, int r, int t, Allowed allowed, Accept accept,
                            const CensusOptions& options, const char* what) {
  if (r == 0) {
    return 1;
  }
  const std::size_t roots = 2 * static_cast<std::size_t>(k);
  std::vector<std::uint64_t> partial(roots, 0);
  NodeBudget budget(options.node_budget);
  parallel_for(roots, options.jobs, [&](std::size_t root) {
    std::uint64_t count = 0;
    auto visit = [&](std::span<const Letter> w) {
      if (accept(w)) {
        ++count;
      }
    };
    Enumerator<Allowed, decltype(visit)> e(k, r, t, allowed, visit);
    e.run_root(root, budget, what);
    partial[root] = count;
  });
  std::uint64_t total = 0;
  for (auto c : partial) {
    total += c;
  }
  return total;
}

void check_m(int m) {
  if (m < 1) {
    throw InvalidArgument("census: m must be positive");
  }
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0;
  }
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

BigInt big_pow(long long base, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) {
    out *= base;
  }
  return out;
}

// floor(x r) with slack so that exact products are not rounded down.
int floor_product(double x, int r) {
  return static_cast<int>(std::floor(x * r + kRatioSlack));
}

int ceil_product(double x, int r) {
  return static_cast<int>(std::ceil(x * r - kRatioSlack));
}

}  // namespace

// ---------------------------------------------------------------------------

bool is_t_aperiodic(std::span<const Letter> w, int t) {
  if (t < 2) {
    throw InvalidArgument("is_t_aperiodic: t must be at least 2");
  }
  const std::size_t n = w.size();
  std::vector<std::size_t> run(n + 1, 0);
  // For each period i, scan the word once tracking the run of positions
  // that agree with the letter i places earlier.
  for (std::size_t i = 1; i * static_cast<std::size_t>(t) <= n; ++i) {
    std::size_t current = 0;
    for (std::size_t p = i; p < n; ++p) {
      current = w[p] == w[p - i] ? current + 1 : 0;
      if (current >= static_cast<std::size_t>(t - 1) * i) {
        return false;
      }
    }
  }
  return true;
}

std::uint64_t count_aperiodic_exact(int m, int r, int t,
                                    const CensusOptions& options) {
  check_m(m);
  if (t < 2) {
    throw InvalidArgument("count_aperiodic_exact: t must be at least 2");
  }
  if (r < 0) {
    throw InvalidArgument("count_aperiodic_exact: r must be non-negative");
  }
  return sharded_count(
      m, r, t, [](Letter prev, Letter c) { return c != -prev; },
      [](std::span<const Letter>) { return true; }, options,
      "count_aperiodic_exact");
}

double aperiodicity_kappa(double base, double l, int t) {
  return base * l / (std::pow(l, t) - base);
}

int aperiodicity_threshold(double base, double l, double slack_target) {
  if (l <= 1.0 || slack_target <= 0.0) {
    return 0;
  }
  for (int t = 2; t <= 64; ++t) {
    if (std::pow(l, t) > base && aperiodicity_kappa(base, l, t) < slack_target) {
      return t;
    }
  }
  return 0;
}

bool AperiodicBoundCheck::holds() const {
  for (const auto& row : rows) {
    if (!row.holds) {
      return false;
    }
  }
  return true;
}

AperiodicBoundCheck aperiodic_lower_bound_check(int m, int r_max, double l,
                                                const CensusOptions& options) {
  check_m(m);
  if (!(l > 0.0) || !(l < 2.0 * m - 1.0)) {
    throw InvalidArgument("aperiodic_lower_bound_check: need 0 < l < 2m-1");
  }
  AperiodicBoundCheck out;
  out.m = m;
  out.l = l;
  out.t = aperiodicity_threshold(2.0 * m, l, 2.0 * m - 1.0 - l);
  out.hypotheses_ok = out.t != 0;
  if (out.t == 0) {
    return out;
  }
  out.kappa = aperiodicity_kappa(2.0 * m, l, out.t);
  for (int r = 0; r <= r_max; ++r) {
    AperiodicBoundRow row;
    row.r = r;
    row.exact = count_aperiodic_exact(m, r, out.t, options);
    row.bound = std::pow(static_cast<long double>(l), r);
    row.holds = static_cast<long double>(row.exact) >= row.bound;
    out.rows.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t count_disjoint_squares(std::span<const Letter> w) noexcept {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i + 1 < w.size()) {
    if (w[i] == w[i + 1]) {
      ++count;
      i += 2;
    } else {
      ++i;
    }
  }
  return count;
}

bool is_theta_word(std::span<const Letter> w, double theta) {
  return static_cast<double>(count_disjoint_squares(w)) + kRatioSlack >=
         theta * static_cast<double>(w.size());
}

std::uint64_t count_theta_words(int m, int r, double theta,
                                const CensusOptions& options) {
  check_m(m);
  if (r < 0) {
    throw InvalidArgument("count_theta_words: r must be non-negative");
  }
  if (r == 0) {
    return is_theta_word({}, theta) ? 1 : 0;
  }
  return sharded_count(
      m, r, 0, [](Letter prev, Letter c) { return c != -prev; },
      [theta](std::span<const Letter> w) { return is_theta_word(w, theta); },
      options, "count_theta_words");
}

ThetaBound theta_upper_bound(int m, int r, double theta) {
  check_m(m);
  if (r < 1) {
    throw InvalidArgument("theta_upper_bound: r must be at least 1");
  }
  ThetaBound out;
  out.m = m;
  out.r = r;
  out.theta = theta;
  out.k = r - ceil_product(theta, r);
  const int marked = r - out.k;
  if (marked <= out.k && out.k >= 1) {
    const BigInt reduced = 2 * m * big_pow(2 * m - 1, out.k - 1);
    out.combinatorial = binomial(out.k, marked) * reduced;
    out.dominating = big_pow(2, r) * reduced;
  } else {
    out.combinatorial = 0;
    out.dominating = 0;
  }
  const long double base = 2.0L * m - 1.0L;
  out.headline = std::pow(base, (1.0L - theta / 2.0L) * r);
  out.headline_hypotheses_ok =
      static_cast<long double>(m) > std::pow(2.0L, 3.0L / theta);
  const long double lhs = std::pow(2.0L, r) * 2.0L * m *
                          std::pow(base, (1.0L - theta) * r - 1.0L);
  out.headline_inequality_at_r = lhs < out.headline;
  return out;
}

// ---------------------------------------------------------------------------

bool is_pair_free(std::span<const Letter> y_word) noexcept {
  for (std::size_t i = 1; i < y_word.size(); ++i) {
    if (y_pair(y_word[i]) == y_pair(y_word[i - 1])) {
      return false;
    }
  }
  return true;
}

Word x_form(std::span<const Letter> y_word) {
  Word out;
  out.reserve(2 * y_word.size());
  for (Letter y : y_word) {
    const Letter x = y_pair(y);
    const Letter signed_x = y > 0 ? x : -x;
    const bool square = (y < 0 ? -y : y) % 2 == 0;
    out.push_back(signed_x);
    if (square) {
      out.push_back(signed_x);
    }
  }
  return out;
}

std::string format_y_word(std::span<const Letter> y_word) {
  if (y_word.empty()) {
    return "1";
  }
  std::string out;
  for (Letter y : y_word) {
    out += (y > 0 ? "y" : "Y") + std::to_string(y < 0 ? -y : y);
  }
  return out;
}

Word parse_y_word(std::string_view text, int m) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '1') {
      ++i;
      continue;
    }
    if (c != 'y' && c != 'Y') {
      throw InvalidArgument("cannot parse Y-word '" + std::string(text) + "'");
    }
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j == i + 1 || j - i > 7) {
      throw InvalidArgument("cannot parse Y-word '" + std::string(text) + "'");
    }
    const int idx = std::stoi(std::string(text.substr(i + 1, j - i - 1)));
    if (idx < 1 || idx > 2 * m) {
      throw InvalidArgument("Y-letter index out of range in '" +
                            std::string(text) + "'");
    }
    out.push_back(c == 'y' ? idx : -idx);
    i = j;
  }
  return out;
}

std::uint64_t count_pairfree_aperiodic_y(int m, int r, int t,
                                         const CensusOptions& options) {
  check_m(m);
  if (t < 2) {
    throw InvalidArgument("count_pairfree_aperiodic_y: t must be at least 2");
  }
  if (r < 0) {
    throw InvalidArgument("count_pairfree_aperiodic_y: r must be non-negative");
  }
  return sharded_count(
      2 * m, r, t,
      [](Letter prev, Letter c) { return y_pair(prev) != y_pair(c); },
      [](std::span<const Letter>) { return true; }, options,
      "count_pairfree_aperiodic_y");
}

bool PairfreeBoundCheck::holds() const {
  for (const auto& row : rows) {
    if (!row.holds) {
      return false;
    }
  }
  return true;
}

PairfreeBoundCheck pairfree_lower_bound_check(int m, int r_max, double l,
                                              const CensusOptions& options) {
  check_m(m);
  PairfreeBoundCheck out;
  out.m = m;
  out.l = l;
  const double ceiling = 4.0 * m - 4.0;
  if (!(l > 0.0) || !(l < ceiling)) {
    throw InvalidArgument("pairfree_lower_bound_check: need 0 < l < 4m-4");
  }
  out.t = aperiodicity_threshold(4.0 * m, l, ceiling - l);
  out.hypotheses_ok = m >= 3 && out.t != 0;
  if (out.t == 0) {
    return out;
  }
  out.kappa = aperiodicity_kappa(4.0 * m, l, out.t);
  for (int r = 0; r <= r_max; ++r) {
    AperiodicBoundRow row;
    row.r = r;
    row.exact = count_pairfree_aperiodic_y(m, r, out.t, options);
    row.bound = std::pow(static_cast<long double>(l), r);
    row.holds = static_cast<long double>(row.exact) >= row.bound;
    out.rows.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------

BigInt binomial_tail(int r, double lambda) {
  if (r < 0) {
    throw InvalidArgument("binomial_tail: r must be non-negative");
  }
  if (lambda < 0.0) {
    throw InvalidArgument("binomial_tail: lambda must be non-negative");
  }
  const int top = std::min(r, floor_product(lambda, r));
  BigInt sum = 0;
  BigInt term = 1;  // C(r, 0)
  for (int j = 0; j <= top; ++j) {
    sum += term;
    term *= r - j;
    term /= j + 1;
  }
  return sum;
}

bool tail_bound_check(int r, double lambda, double c, double d) {
  if (!(lambda > 0.0) || !(lambda < 0.5)) {
    throw InvalidArgument("tail_bound_check: need 0 < lambda < 1/2");
  }
  if (!(d < 2.0)) {
    throw InvalidArgument("tail_bound_check: need d < 2");
  }
  const long double tail = binomial_tail(r, lambda).convert_to<long double>();
  return tail <= static_cast<long double>(c) *
                     std::pow(static_cast<long double>(d), r);
}

UnbalancedCount count_unbalanced(int m, int r, double threshold) {
  check_m(m);
  if (r < 1) {
    throw InvalidArgument("count_unbalanced: r must be at least 1");
  }
  // counts[j][e]: pair-free words ending in pair j with e even letters. Each
  // pair offers two odd (y_{2j-1}^{+-1}) and two even (y_{2j}^{+-1}) letters.
  // The count is symmetric in the pairs, so track only "some pair".
  std::vector<BigInt> per_pair(static_cast<std::size_t>(r) + 1, 0);
  per_pair[0] = 2;  // odd first letter from a fixed pair
  per_pair[1] = 2;  // even first letter
  for (int len = 2; len <= r; ++len) {
    // Total over all pairs, then the next letter is from one of the m-1
    // other pairs.
    std::vector<BigInt> next(static_cast<std::size_t>(r) + 1, 0);
    for (int e = 0; e < len; ++e) {
      const BigInt from_others = per_pair[static_cast<std::size_t>(e)] * (m - 1);
      next[static_cast<std::size_t>(e)] += from_others * 2;
      next[static_cast<std::size_t>(e) + 1] += from_others * 2;
    }
    per_pair = std::move(next);
  }
  UnbalancedCount out;
  out.m = m;
  out.r = r;
  out.threshold = threshold;
  const int cap = floor_product(threshold, r);
  out.even_side = 0;
  out.odd_side = 0;
  out.either = 0;
  out.total = 0;
  for (int e = 0; e <= r; ++e) {
    const BigInt words = per_pair[static_cast<std::size_t>(e)] * m;
    out.total += words;
    const bool even_low = e <= cap;
    const bool odd_low = r - e <= cap;
    if (even_low) {
      out.even_side += words;
    }
    if (odd_low) {
      out.odd_side += words;
    }
    if (even_low || odd_low) {
      out.either += words;
    }
  }
  BigInt tail = 0;
  for (int k = 0; k <= std::min(cap, r); ++k) {
    tail += binomial(r, k);
  }
  out.dominating = big_pow(2 * m, r) * tail;
  return out;
}

}  // namespace blab
