#include <doctest.h>

#include "blab/census.hpp"
#include "blab/errors.hpp"
#include "oracles.hpp"

using namespace blab;

namespace {

std::uint64_t brute_aperiodic(int m, int r, int t) {
  std::uint64_t n = 0;
  oracle::all_reduced(m, r, [&](const Word& w) {
    n += oracle::t_aperiodic(w, t) ? 1 : 0;
  });
  return n;
}

}  // namespace

TEST_CASE("t-aperiodicity matches the factor search") {
  for (int t = 2; t <= 4; ++t) {
    for (int r = 0; r <= 8; ++r) {
      oracle::all_sequences(2, r, [&](const Word& w) {
        CHECK(is_t_aperiodic(w, t) == oracle::t_aperiodic(w, t));
      });
    }
  }
  CHECK_THROWS_AS(is_t_aperiodic(Word{1}, 1), InvalidArgument);
}

TEST_CASE("aperiodic census equals generate-and-filter") {
  CHECK(count_aperiodic_exact(2, 0, 2) == 1);
  for (int t : {2, 3}) {
    for (int r = 1; r <= 8; ++r) {
      CHECK(count_aperiodic_exact(2, r, t) == brute_aperiodic(2, r, t));
    }
  }
  CHECK(count_aperiodic_exact(3, 5, 2) == brute_aperiodic(3, 5, 2));
}

TEST_CASE("aperiodic census is independent of the worker count") {
  CensusOptions one;
  one.jobs = 1;
  CensusOptions four;
  four.jobs = 4;
  CHECK(count_aperiodic_exact(2, 12, 3, one) ==
        count_aperiodic_exact(2, 12, 3, four));
}

TEST_CASE("aperiodicity thresholds") {
  CHECK(aperiodicity_threshold(4, 2.5, 0.5) == 4);
  CHECK(aperiodicity_threshold(6, 4.5, 0.5) == 3);
  CHECK(aperiodicity_threshold(12, 7.5, 0.5) == 3);
  CHECK(aperiodicity_threshold(4, 1.0, 0.5) == 0);
}

TEST_CASE("lower bound check at desk parameters") {
  const AperiodicBoundCheck a = aperiodic_lower_bound_check(2, 8, 2.5);
  CHECK(a.t == 4);
  CHECK(a.hypotheses_ok);
  CHECK(a.rows.size() == 9);
  CHECK(a.holds());
  CHECK_THROWS_AS(aperiodic_lower_bound_check(2, 4, 3.0), InvalidArgument);
}

TEST_CASE("budget exhaustion is reported") {
  CensusOptions tight;
  tight.node_budget = 1000;
  CHECK_THROWS_AS(count_aperiodic_exact(2, 12, 3, tight), BudgetExceeded);
}

TEST_CASE("disjoint squares: greedy equals exhaustive packing") {
  for (int r = 0; r <= 10; ++r) {
    oracle::all_reduced(2, r, [](const Word& w) {
      CHECK(count_disjoint_squares(w) == oracle::max_disjoint_squares(w));
    });
  }
  CHECK(is_theta_word(Word{1, 1, 2, 2, 1}, 0.4));
  CHECK_FALSE(is_theta_word(Word{1, 2, 1, 2, 1}, 0.4));
}

TEST_CASE("theta census stays under the binomial bound") {
  for (double theta : {0.25, 0.4}) {
    for (int r = 1; r <= 8; ++r) {
      std::uint64_t brute = 0;
      oracle::all_reduced(2, r, [&](const Word& w) {
        brute += oracle::max_disjoint_squares(w) + 1e-9 >= theta * r ? 1 : 0;
      });
      const std::uint64_t exact = count_theta_words(2, r, theta);
      CHECK(exact == brute);
      const ThetaBound b = theta_upper_bound(2, r, theta);
      CHECK(BigInt(exact) <= b.combinatorial);
      CHECK(b.combinatorial <= b.dominating);
    }
  }
  // theta r = 4 exactly at r = 10: the slack keeps k = 6.
  CHECK(theta_upper_bound(2, 10, 0.4).k == 6);
}

TEST_CASE("Y-alphabet helpers") {
  CHECK(y_pair(1) == 1);
  CHECK(y_pair(-2) == 1);
  CHECK(y_pair(3) == 2);
  CHECK(is_pair_free(Word{1, 3, -2}));
  CHECK_FALSE(is_pair_free(Word{1, -2}));
  CHECK(x_form(Word{1, 2, -4}) == Word{1, 1, 1, -2, -2});
  CHECK(parse_y_word("y1Y4", 2) == Word{1, -4});
  CHECK(format_y_word(Word{1, -4}) == "y1Y4");
  CHECK_THROWS_AS(parse_y_word("y5", 2), InvalidArgument);
}

TEST_CASE("pair-free aperiodic Y-words") {
  for (int r = 1; r <= 5; ++r) {
    std::uint64_t brute = 0;
    oracle::all_sequences(4, r, [&](const Word& y) {
      bool ok = true;
      for (std::size_t i = 1; i < y.size(); ++i) {
        ok = ok && y_pair(y[i]) != y_pair(y[i - 1]);
      }
      brute += ok && oracle::t_aperiodic(y, 3) ? 1 : 0;
    });
    CHECK(count_pairfree_aperiodic_y(2, r, 3) == brute);
  }
  const PairfreeBoundCheck c = pairfree_lower_bound_check(3, 5, 7.5);
  CHECK(c.t == 3);
  CHECK(c.hypotheses_ok);
  CHECK(c.holds());
}

TEST_CASE("binomial tails") {
  CHECK(binomial_tail(10, 0.3) == 1 + 10 + 45 + 120);
  CHECK(binomial_tail(0, 0.3) == 1);
  CHECK(tail_bound_check(40, 0.25, 1.0, 1.8));
  CHECK_THROWS_AS(tail_bound_check(10, 0.5, 1, 1.5), InvalidArgument);
  CHECK_THROWS_AS(tail_bound_check(10, 0.3, 1, 2.0), InvalidArgument);
}

TEST_CASE("unbalanced pair-free words match enumeration") {
  for (int m : {2, 3}) {
    for (int r = 1; r <= 6; ++r) {
      BigInt even = 0, odd = 0, either = 0, total = 0;
      const int cap = static_cast<int>(0.499 * r + 1e-9);
      oracle::all_sequences(2 * m, r, [&](const Word& y) {
        for (std::size_t i = 1; i < y.size(); ++i) {
          if (y_pair(y[i]) == y_pair(y[i - 1])) {
            return;
          }
        }
        int evens = 0;
        for (Letter l : y) {
          evens += (l < 0 ? -l : l) % 2 == 0 ? 1 : 0;
        }
        ++total;
        const bool e = evens <= cap;
        const bool o = r - evens <= cap;
        even += e ? 1 : 0;
        odd += o ? 1 : 0;
        either += e || o ? 1 : 0;
      });
      const UnbalancedCount u = count_unbalanced(m, r);
      CHECK(u.total == total);
      CHECK(u.even_side == even);
      CHECK(u.odd_side == odd);
      CHECK(u.either == either);
      CHECK(u.even_side <= u.dominating);
      CHECK(u.odd_side <= u.dominating);
    }
  }
  // The union of both sides can exceed a single dominating term.
  const UnbalancedCount one = count_unbalanced(2, 1);
  CHECK(one.either == 8);
  CHECK(one.dominating == 4);
}
