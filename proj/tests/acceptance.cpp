// Acceptance runner. `blab_acceptance N` runs criterion N and prints one
// PASS/FAIL line; without arguments every criterion runs in turn. The exit
// status is nonzero when any selected criterion fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blab/budget.hpp"
#include "blab/census.hpp"
#include "blab/codec.hpp"
#include "blab/errors.hpp"
#include "blab/presentation.hpp"
#include "blab/solvable.hpp"
#include "blab/walks.hpp"
#include "oracles.hpp"

using namespace blab;

namespace {

/// Accumulates named checks; the criterion passes when all of them hold.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    std::cout << "  [" << (ok ? "ok" : "MISS") << "] " << what << "\n";
    if (!ok) {
      failed_.push_back(what);
    }
  }
  bool passed() const { return failed_.empty(); }
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  std::vector<std::string> failed_;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs f(w) over every reduced word of length r over m generators, sharded
// by the first two letters across all cores.
void for_reduced_parallel(int m, int r, const std::function<void(const Word&)>& f) {
  const auto letters = oracle::letters(m);
  std::vector<Word> prefixes;
  for (Letter a : letters) {
    if (r < 2) {
      prefixes.push_back({a});
      continue;
    }
    for (Letter b : letters) {
      if (b != -a) {
        prefixes.push_back({a, b});
      }
    }
  }
  const int rest = r - static_cast<int>(prefixes.front().size());
  parallel_for(prefixes.size(), 0, [&](std::size_t i) {
    const Word& pre = prefixes[i];
    if (rest == 0) {
      f(pre);
      return;
    }
    oracle::all_reduced(m, rest, [&](const Word& tail) {
      if (tail.front() == -pre.back()) {
        return;
      }
      Word w = pre;
      w.insert(w.end(), tail.begin(), tail.end());
      f(w);
    });
  });
}

// ---------------------------------------------------------------------------

void aperiodic_census(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  for (int t : {2, 3}) {
    for (int r = 0; r <= 10; ++r) {
      std::atomic<std::uint64_t> brute{0};
      if (r == 0) {
        brute = 1;
      } else {
        for_reduced_parallel(2, r, [&](const Word& w) {
          if (oracle::t_aperiodic(w, t)) {
            ++brute;
          }
        });
      }
      all = all && count_aperiodic_exact(2, r, t) == brute.load();
    }
  }
  const double secs = seconds_since(t0);
  v.check(all, "count_aperiodic_exact(2, r <= 10, t in {2,3}) equals generate-and-filter");
  v.check(secs < 60, "runtime " + fmt(secs, 3) + " s < 60 s");

  const AperiodicBoundCheck a = aperiodic_lower_bound_check(2, 8, 2.5);
  v.check(a.hypotheses_ok && a.holds(),
          "m=2, l=2.5, t=" + std::to_string(a.t) + ": exact count >= l^r for r <= 8");
  const AperiodicBoundCheck b = aperiodic_lower_bound_check(3, 6, 4.5);
  v.check(b.hypotheses_ok && b.holds(),
          "m=3, l=4.5, t=" + std::to_string(b.t) + ": exact count >= l^r for r <= 6");
}

void codec_checks(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::uint64_t> words{0}, bad_trip{0}, bad_cln{0};
  for (int r = 1; r <= 12; ++r) {
    for_reduced_parallel(2, r, [&](const Word& w) {
      const Encoding e = encode_min(w);
      ++words;
      if (decode(e.code) != w) {
        ++bad_trip;
      }
      if (e.cln != oracle::cln(w)) {
        ++bad_cln;
      }
    });
  }
  v.check(bad_trip == 0, "round trip on all " + std::to_string(words.load()) +
                             " reduced words of length 1..12");
  v.check(bad_cln == 0, "DP code length equals the exhaustive factorization minimum, r <= 12");

  std::mt19937_64 gen(2024);
  const auto letters = oracle::letters(2);
  std::uint64_t random_bad = 0;
  for (int i = 0; i < 100000; ++i) {
    Word w;
    const std::size_t len = gen() % 201;
    while (w.size() < len) {
      if (!w.empty() && gen() % 3 == 0) {
        w.push_back(w.back());
        continue;
      }
      const Letter l = letters[gen() % 4];
      if (w.empty() || l != -w.back()) {
        w.push_back(l);
      }
    }
    random_bad += decode(encode_min(w).code) == w ? 0 : 1;
  }
  v.check(random_bad == 0, "round trip on 100000 random words of length <= 200");

  bool bounded = true;
  std::uint64_t six = 1;
  std::ostringstream counts;
  CensusOptions all_cores;
  all_cores.jobs = 0;
  for (int k = 0; k <= 7; ++k) {
    const std::uint64_t c = count_by_cln(2, k, all_cores);
    counts << (k ? " " : "") << c;
    bounded = bounded && c <= six;
    six *= 6;
  }
  v.check(bounded, "count_by_cln(k <= 7) <= 6^k: " + counts.str());
  const double secs = seconds_since(t0);
  v.check(secs < 300, "runtime " + fmt(secs, 3) + " s < 300 s");
}

void theta_census(Verdict& v) {
  bool exact = true, bounded = true;
  for (double theta : {0.25, 0.4}) {
    for (int r = 1; r <= 10; ++r) {
      std::atomic<std::uint64_t> brute{0};
      for_reduced_parallel(2, r, [&](const Word& w) {
        if (static_cast<double>(oracle::max_disjoint_squares(w)) + kRatioSlack >= theta * r) {
          ++brute;
        }
      });
      const std::uint64_t c = count_theta_words(2, r, theta);
      exact = exact && c == brute.load();
      bounded = bounded && BigInt(c) <= theta_upper_bound(2, r, theta).combinatorial;
    }
  }
  v.check(exact, "theta-word counts equal the brute-force count (m=2, r <= 10)");
  v.check(bounded, "counts <= the binomial bound for theta in {0.25, 0.4}");

  std::atomic<std::uint64_t> disagreements{0};
  for (int r = 1; r <= 10; ++r) {
    for_reduced_parallel(2, r, [&](const Word& w) {
      if (count_disjoint_squares(w) != oracle::max_disjoint_squares(w)) {
        ++disagreements;
      }
    });
  }
  v.check(disagreements == 0, "square packing agrees with exhaustive interval packing, r <= 10");
}

void period_checks(Verdict& v) {
  const Alphabet a2(2);
  bool counts = true;
  std::ostringstream per_rank;
  for (int i = 1; i <= 6; ++i) {
    const auto periods = enumerate_periods(a2, i, FilterSpec{});
    const auto keys = oracle::primitive_classes(2, i);
    per_rank << (i > 1 ? " " : "") << periods.size();
    bool same = periods.size() == keys.size();
    std::size_t k = 0;
    for (const Word& key : keys) {
      same = same && k < periods.size() && periods[k++].key == key;
    }
    counts = counts && same;
  }
  v.check(counts, "class counts by rank equal brute force: " + per_rank.str());

  ParameterSystem params;
  for (Variant var : {Variant::kMaximal, Variant::kAvoidSubgroup, Variant::kThetaFiltered,
                      Variant::kCoprimeSplit, Variant::kScheduleGated}) {
    BuildOptions o;
    o.variant = var;
    o.max_rank = 6;
    o.theta = 0.25;
    o.schedule_K = 1;
    o.schedule_r1 = 2;
    const Alphabet alphabet(2, var == Variant::kAvoidSubgroup);
    const Presentation p = build_presentation(alphabet, params, o);
    const auto violations = check_conditions(p);
    v.check(violations.empty(), std::string(to_string(var)) + " to rank 6: " +
                                    std::to_string(p.period_count()) +
                                    " periods, period conditions hold");
  }
}

void ball_checks(Verdict& v) {
  const Alphabet a2(2);
  ParameterSystem params;
  BuildOptions o;
  o.max_rank = 6;
  const Presentation p = build_presentation(a2, params, o);
  const BallReport rep = ball_census(p, 6);

  std::set<Word, oracle::Less> keys;
  for (const Period* q : p.all_periods()) {
    keys.insert(q->key);
  }
  std::uint64_t torsion = 0, ball = 0;
  for (int r = 0; r <= 6; ++r) {
    oracle::all_reduced(2, r, [&](const Word& w) {
      ++ball;
      if (!w.empty() &&
          keys.contains(oracle::class_key(oracle::root(oracle::strip_ends(w)).first))) {
        ++torsion;
      }
    });
  }
  v.check(rep.ball_size == ball && rep.torsion == torsion,
          "r=6 torsion " + std::to_string(rep.torsion) + "/" + std::to_string(rep.ball_size) +
              " equals exhaustive classification");

  Presentation growing(a2, params, Variant::kMaximal);
  growing.set_max_rank(6);
  double last = 0;
  bool monotone = true;
  for (const Period* q : p.all_periods()) {
    growing.add_period(*q);
    const double d = ball_census(growing, 6).torsion_density();
    monotone = monotone && d >= last;
    last = d;
  }
  v.check(monotone, "density is monotone as periods are added one by one");

  const double full = rep.torsion_density();
  for (double target : {0.0, 0.25, 0.5, 0.75, full}) {
    const TuneResult t = tune_density(p, 6, target, 0.0);
    bool logged = true;
    double running = t.initial_density;
    for (const DropRecord& d : t.log) {
      logged = logged && std::abs(d.density_before - running) < 1e-12;
      if (d.dropped) {
        running = d.density_after;
      }
    }
    logged = logged && std::abs(running - t.final_density) < 1e-12;
    const double recount = ball_census(t.presentation, 6).torsion_density();
    const bool within = std::abs(t.final_density - target) <= t.granularity + 1e-12;
    v.check(within && logged && std::abs(recount - t.final_density) < 1e-9,
            "target " + fmt(target) + ": reached " + fmt(t.final_density) +
                " (granularity " + fmt(t.granularity) + "), " +
                std::to_string(t.log.size()) + " log entries");
  }
}

void walk_checks(Verdict& v) {
  const Alphabet a2(2);
  ParameterSystem params;
  const Presentation empty(a2, params, Variant::kMaximal);
  const StepDistribution mu = StepDistribution::lazy_uniform(a2);
  WalkOptions o;
  o.samples = 1000000;
  o.seed = 20240601;
  o.jobs = 0;
  for (int r : {2, 8, 32}) {
    const WalkReport w = sample_walk_torsion(empty, mu, r, o);
    const double exact = exact_distance_distribution(2, r).return_probability();
    const double z = std::abs(w.estimate - exact) / w.standard_error;
    v.check(z <= 4, "r=" + std::to_string(r) + ": exact " + fmt(exact) + ", Monte Carlo " +
                        fmt(w.estimate) + ", " + fmt(z, 3) + " SE");
  }

  const KestenReport k = kesten_decay_check(2, 200);
  v.check(k.holds, "Pr(X_r = e) <= rho_hat^r for 2 <= r <= 200");
  const double gap = std::abs(k.root_at_r_max - k.rho_hat);
  v.check(gap <= 0.02, "Pr(X_200 = e)^(1/200) = " + fmt(k.root_at_r_max) + " vs rho_hat " +
                           fmt(k.rho_hat) + ": gap " + fmt(gap, 4) + " (need <= 0.02)");

  BuildOptions b;
  b.max_rank = 3;
  const Presentation maximal = build_presentation(a2, params, b);
  WalkOptions po;
  po.samples = 200000;
  po.seed = 77;
  po.jobs = 0;
  po.allow_indeterminate = true;
  struct Config {
    const char* name;
    std::function<PairWalkReport()> run;
  };
  const std::vector<Config> configs = {
      {"product K=1 r=1, empty presentation",
       [&] { return product_walk_torsion(empty, 1, mu, 1, po); }},
      {"product K=1 r=2, maximal rank 3",
       [&] { return product_walk_torsion(maximal, 1, mu, 2, po); }},
      {"square r=4, maximal rank 3", [&] { return square_walk_torsion(maximal, mu, 4, po); }},
  };
  for (const Config& c : configs) {
    const PairWalkReport pr = c.run();
    v.check(pr.identity_within_3se, std::string(c.name) + ": joint " + fmt(pr.joint.estimate) +
                                        ", product " + fmt(pr.product) + ", combined SE " +
                                        fmt(pr.combined_se, 3));
  }
}

void tv_checks(Verdict& v) {
  const std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(5), FiniteGroup::dihedral(4),
                                           FiniteGroup::dihedral(8)};
  for (const FiniteGroup& g : groups) {
    const TvDecayReport t = tv_decay_curve(g, g.lazy_uniform_weights(), 500);
    const auto below = t.first_below(1e-6);
    v.check(below.has_value() && *below <= 500 && t.nonincreasing_from <= 10,
            g.name() + ": below 1e-6 at r=" +
                (below ? std::to_string(*below) : std::string("never")) +
                ", non-increasing from r=" + std::to_string(t.nonincreasing_from));
  }
  bool refused = false;
  try {
    tv_decay_curve(FiniteGroup::cyclic(4), {0, 1, 0, 1}, 50);
  } catch (const InvalidArgument&) {
    refused = true;
  }
  v.check(refused, "non-lazy uniform step on Z/4 is refused");
}

void baseline_checks(Verdict& v) {
  const SemidirectGroup d = SemidirectGroup::infinite_dihedral();
  const auto dens = ball_torsion_density(d, 2000);
  const double ball = dens.back().density;
  v.check(std::abs(ball - 0.5) <= 1e-3, "ball density at radius 2000: " + fmt(ball, 8));

  const int horizon = 300000;
  const auto t0 = std::chrono::steady_clock::now();
  const WalkBaseline w = walk_torsion_baseline(d, horizon);
  const double walk = w.torsion[horizon];
  v.check(std::abs(walk - 0.5) <= 1e-3 && w.leaked_mass < 1e-9,
          "walk torsion probability at r=" + std::to_string(horizon) + ": " + fmt(walk, 8) +
              ", leaked mass " + fmt(w.leaked_mass, 3) + " (" + fmt(seconds_since(t0), 3) +
              " s)");
  v.check(std::abs(w.torsion[400] - 0.5) > 1e-3,
          "at r=400 the walk is still " + fmt(w.torsion[400], 6) + " (slow convergence noted)");

  const AffineElement e = d.identity();
  const AffineElement s{{0}, 1};
  const AffineElement T{{1}, 0};
  const AffineElement T2{{2}, 0};
  auto translation = [&](const AffineElement& x) { return d.is_translation(x); };
  auto nontrivial_translation = [&](const AffineElement& x) {
    return d.is_translation(x) && x != e;
  };
  const MnReport a = mn_density_bound(d, {e, s}, translation, 2000);
  v.check(a.factorization_ok && a.holds,
          "M={e,s}, N=translations: c=" + fmt(a.c) + ", bound holds to radius 2000");
  const MnReport b = mn_density_bound(
      d, {T, T2, d.multiply(s, T), d.multiply(s, T2)}, nontrivial_translation, 2000);
  v.check(b.factorization_ok && b.holds,
          "M={T,T^2,sT,sT^2}, N=translations minus e: c=" + fmt(b.c) +
              ", bound holds to radius 2000");
}

void oscillation_checks(Verdict& v) {
  const RadiusSchedule s = schedule(2, 1, 1000000);
  bool partition = true;
  for (std::int64_t j = 0; j <= 1000000; ++j) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i + 1 < s.radii.size(); ++i) {
      hits += (s.radii[i] <= j && j < s.radii[i + 1]) ? 1 : 0;
    }
    partition = partition && hits == 1 && s.is_free(j) == (s.interval(j) % 2 == 0);
    if (j > 300) {
      j += 997;  // sample sparsely past the small radii
    }
  }
  v.check(partition, "schedule K=2, r1=1 intervals tile [0, 10^6]");

  const RadiusSchedule s20 = schedule(2, 20, 10000);
  const auto profile = schedule_surrogate_profile(2, s20, 2000);
  const LimitPointReport l = limit_point_analysis(profile, 0.05);
  v.check(l.max_gap <= 0.1, "schedule profile (K=2, r1=20, j <= 2000): range [" +
                                fmt(l.min_value, 4) + ", " + fmt(l.max_value, 4) +
                                "], max gap " + fmt(l.max_gap, 4) + " <= 0.1");

  std::vector<double> alternating;
  for (int j = 0; j <= 2000; ++j) {
    alternating.push_back(j % 2);
  }
  const LimitPointReport alt = limit_point_analysis(alternating, 0.05);
  v.check(std::abs(alt.max_gap - 1.0) < 1e-12,
          "alternating profile: max gap " + fmt(alt.max_gap, 4));
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  }
  return out + "'";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void golden_checks(Verdict& v) {
  const char* cli = std::getenv("BLAB_CLI");
  const char* dir = std::getenv("BLAB_GOLDEN_DIR");
  if (cli == nullptr || dir == nullptr) {
    v.check(false, "BLAB_CLI and BLAB_GOLDEN_DIR must be set");
    return;
  }
  const auto work = std::filesystem::temp_directory_path() / "blab_acceptance_golden";
  std::filesystem::create_directories(work);
  std::ifstream cases(std::filesystem::path(dir) / "cases.txt");
  std::size_t total = 0;
  for (std::string line; std::getline(cases, line);) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto bar1 = line.find('|');
    const auto bar2 = line.find('|', bar1 + 1);
    const std::string name = line.substr(0, bar1);
    const std::string ext = line.substr(bar1 + 1, bar2 - bar1 - 1);
    std::istringstream tokens(line.substr(bar2 + 1));
    std::string args;
    for (std::string tok; tokens >> tok;) {
      for (std::size_t p; (p = tok.find("@DIR@")) != std::string::npos;) {
        tok.replace(p, 5, dir);
      }
      std::replace(tok.begin(), tok.end(), '~', ' ');
      args += " " + shell_quote(tok);
    }
    const std::string expected = slurp(std::filesystem::path(dir) / (name + "." + ext));
    bool same = !expected.empty();
    int run = 0;
    for (int jobs : {1, 4, 1}) {
      const auto out = work / (name + "." + std::to_string(run++) + "." + ext);
      const std::string cmd = shell_quote(cli) + " --jobs " + std::to_string(jobs) +
                              " --out " + shell_quote(out.string()) + args + " 2>/dev/null";
      same = same && std::system(cmd.c_str()) == 0 && slurp(out) == expected;
    }
    ++total;
    v.check(same, name + ": identical at --jobs 1, 4 and a repeated run");
  }
  v.check(total > 0, std::to_string(total) + " golden cases");
}

const std::map<int, std::pair<const char*, void (*)(Verdict&)>> kCriteria = {
    {1, {"aperiodic census", aperiodic_census}},
    {2, {"codec", codec_checks}},
    {3, {"theta census", theta_census}},
    {4, {"periods", period_checks}},
    {5, {"ball census", ball_checks}},
    {6, {"walks", walk_checks}},
    {7, {"TV decay", tv_checks}},
    {8, {"solvable baselines", baseline_checks}},
    {9, {"oscillation surrogates", oscillation_checks}},
    {10, {"reproducibility", golden_checks}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.push_back(std::atoi(argv[i]));
  }
  if (selected.empty()) {
    for (const auto& [n, _] : kCriteria) {
      selected.push_back(n);
    }
  }
  bool all = true;
  for (int n : selected) {
    const auto it = kCriteria.find(n);
    if (it == kCriteria.end()) {
      std::cerr << "unknown criterion " << n << "\n";
      return 2;
    }
    Verdict v;
    std::cout << "criterion " << n << " (" << it->second.first << ")\n";
    try {
      it->second.second(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << n << " " << (v.passed() ? "PASS" : "FAIL") << ": "
              << it->second.first;
    if (!v.passed()) {
      std::cout << " (" << v.failed().size() << " check(s) missed: " << v.failed().front()
                << ")";
    }
    std::cout << "\n";
    all = all && v.passed();
  }
  return all ? 0 : 1;
}
