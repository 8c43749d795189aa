#include <cmath>
#include <memory>
#include <sstream>

#include "blab/errors.hpp"
#include "blab/walks.hpp"
#include "commands.hpp"
#include "presentation_args.hpp"

namespace blab::cli {

namespace {

WalkOptions walk_options(const GlobalOptions& g, bool allow_indeterminate) {
  WalkOptions o;
  o.samples = g.samples;
  o.seed = g.seed;
  o.jobs = g.jobs;
  o.allow_indeterminate = allow_indeterminate;
  return o;
}

struct WalkArgs {
  PresentationArgs p;
  std::vector<std::int64_t> r{4};
  bool allow_indeterminate = false;
};

Report walk_sim(const WalkArgs& a, const GlobalOptions& g) {
  const Presentation p = a.p.load(g);
  const StepDistribution mu = StepDistribution::lazy_uniform(p.alphabet());
  Report rep;
  rep.columns = {"r", "samples", "hits", "indeterminate", "estimate", "standard_error"};
  std::int64_t law = 0;
  bool degenerate = false;
  for (std::int64_t r : a.r) {
    const WalkReport w = sample_walk_torsion(p, mu, r, walk_options(g, a.allow_indeterminate));
    rep.add_row({r, w.samples, w.hits, w.indeterminate, w.estimate, w.standard_error});
    law = w.law_exponent;
    degenerate = degenerate || w.degenerate_step;
  }
  rep.summary = {{"presentation", p.id()}, {"law_exponent", law}, {"seed", g.seed}};
  rep.warn_unless(!degenerate, "step support generates the group");
  return rep;
}

struct ProductArgs {
  PresentationArgs p;
  std::int64_t K = 1;
  std::vector<std::int64_t> r{1};
  bool square = false;
  bool allow_indeterminate = false;
};

Report product_walk(const ProductArgs& a, const GlobalOptions& g) {
  const Presentation p = a.p.load(g);
  const StepDistribution mu = StepDistribution::lazy_uniform(p.alphabet());
  Report rep;
  rep.columns = {"r", "first_steps", "second_steps", "joint", "joint_se", "first",
                 "second", "product", "combined_se", "within_3se"};
  bool all_ok = true;
  for (std::int64_t r : a.r) {
    const WalkOptions o = walk_options(g, a.allow_indeterminate);
    const PairWalkReport w = a.square ? square_walk_torsion(p, mu, r, o)
                                      : product_walk_torsion(p, a.K, mu, r, o);
    rep.add_row({r, w.first_steps, w.second_steps, w.joint.estimate,
                 w.joint.standard_error, w.first.estimate, w.second.estimate, w.product,
                 w.combined_se, w.identity_within_3se});
    all_ok = all_ok && w.identity_within_3se;
  }
  rep.summary = {{"presentation", p.id()}, {"K", a.K}, {"square", a.square},
                 {"seed", g.seed}, {"identity_within_3se", all_ok}};
  return rep;
}

struct ReturnArgs {
  int m = 2;
  int r_max = 200;
  int every = 1;
};

Report return_prob(const ReturnArgs& a) {
  const KestenReport k = kesten_decay_check(a.m, a.r_max);
  const auto probs = return_probabilities(a.m, a.r_max);
  Report rep;
  rep.columns = {"r", "probability", "root", "rho_hat_power"};
  for (int r = 0; r <= a.r_max; r += std::max(1, a.every)) {
    rep.add_row({r, probs[r], r == 0 ? 1.0 : std::pow(probs[r], 1.0 / r),
                 std::pow(k.rho_hat, r)});
  }
  rep.summary = {{"m", a.m},
                 {"rho_hat", k.rho_hat},
                 {"root_at_r_max", k.root_at_r_max},
                 {"root_gap", k.rho_hat - k.root_at_r_max},
                 {"decay_holds", k.holds},
                 {"first_violation", k.first_violation}};
  return rep;
}

FiniteGroup parse_group(const std::string& desc) {
  const auto colon = desc.find(':');
  if (colon != std::string::npos) {
    const std::string kind = desc.substr(0, colon);
    int k = 0;
    try {
      k = std::stoi(desc.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("bad group order in " + desc);
    }
    if (kind == "cyclic") {
      return FiniteGroup::cyclic(k);
    }
    if (kind == "dihedral") {
      return FiniteGroup::dihedral(k);
    }
    throw InvalidArgument("unknown group " + desc);
  }
  try {
    const auto j = nlohmann::json::parse(read_file(desc));
    return FiniteGroup::from_table(j.at("name").get<std::string>(),
                                   j.at("table").get<std::vector<std::vector<int>>>(),
                                   j.at("generators").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(desc + ": " + e.what());
  }
}

struct TvArgs {
  std::string group = "cyclic:5";
  int r_max = 200;
  std::vector<std::uint64_t> weights;
  std::vector<double> thresholds{1e-6};
};

Report tv_decay(const TvArgs& a) {
  const FiniteGroup grp = parse_group(a.group);
  const auto weights = a.weights.empty() ? grp.lazy_uniform_weights() : a.weights;
  const TvDecayReport t = tv_decay_curve(grp, weights, a.r_max);
  Report rep;
  rep.columns = {"r", "tv"};
  for (std::size_t r = 0; r < t.tv.size(); ++r) {
    rep.add_row({r, t.tv[r]});
  }
  nlohmann::json below = nlohmann::json::object();
  for (double th : a.thresholds) {
    const auto f = t.first_below(th);
    std::ostringstream key;
    key << th;
    below[key.str()] = f ? nlohmann::json(*f) : nlohmann::json(nullptr);
  }
  rep.summary = {{"group", t.group},
                 {"order", grp.order()},
                 {"nonincreasing_from", t.nonincreasing_from},
                 {"envelope_K", t.envelope_K},
                 {"first_below", below}};
  return rep;
}

struct LimitArgs {
  std::string input;
  std::string profile;
  double epsilon = 0.05;
  std::size_t tail_start = 0;
  int m = 2;
  std::int64_t K = 2;
  std::int64_t r1 = 20;
  int j_max = 2000;
};

Report limit_set(const LimitArgs& a) {
  std::vector<double> seq;
  if (!a.input.empty()) {
    std::istringstream in(read_file(a.input));
    for (double v; in >> v;) {
      seq.push_back(v);
    }
  } else if (a.profile == "schedule") {
    const RadiusSchedule s = schedule(a.K, a.r1, 4LL * a.j_max + 1);
    seq = schedule_surrogate_profile(a.m, s, a.j_max);
  } else if (a.profile == "alternating") {
    for (int j = 0; j <= a.j_max; ++j) {
      seq.push_back(j % 2);
    }
  } else {
    throw InvalidArgument("limit-set needs --input or --profile schedule|alternating");
  }
  const LimitPointReport l = limit_point_analysis(seq, a.epsilon, a.tail_start);
  Report rep;
  rep.columns = {"cell", "lower", "upper"};
  for (long long c : l.occupied_cells) {
    rep.add_row({c, c * a.epsilon, (c + 1) * a.epsilon});
  }
  rep.summary = {{"length", seq.size()},
                 {"epsilon", l.epsilon},
                 {"tail_start", l.tail_start},
                 {"min", l.min_value},
                 {"max", l.max_value},
                 {"max_gap", l.max_gap},
                 {"max_late_step", l.max_late_step},
                 {"connected", l.connected}};
  return rep;
}

struct BoundArgs {
  PresentationArgs p;
  int r = 2;
  int R = 8;
  double rho = 0;
  double gamma = -1;
  double c = 1.0;
};

Report bound_report(const BoundArgs& a, const GlobalOptions& g) {
  const Presentation p = a.p.load(g);
  const double rho = a.rho > 0 ? a.rho : lazy_spectral_radius(p.alphabet().rank());
  const double gamma = a.gamma >= 0 ? a.gamma : p.params().gamma;
  const FormalWordReport f = formal_word_bound_check(p, a.r, a.R, rho, gamma, a.c, g.census());
  Report rep;
  rep.summary = {{"presentation", p.id()},
                 {"r", f.r},
                 {"R", f.R},
                 {"total", f.total},
                 {"finite_order", f.finite_order},
                 {"infinite_order", f.infinite_order},
                 {"rho", f.rho},
                 {"gamma", f.gamma},
                 {"c", f.c},
                 {"bound", static_cast<double>(f.bound)},
                 {"small_bound", static_cast<double>(f.small_bound)},
                 {"finite_holds", f.finite_holds},
                 {"infinite_holds", f.infinite_holds},
                 {"radius_hypothesis", f.radius_hypothesis},
                 {"no_period_gap", f.no_period_gap},
                 {"no_simple_gap", f.no_simple_gap},
                 {"gap_vacuous", f.gap_vacuous},
                 {"exponent_inequality", f.exponent_inequality.value},
                 {"exponent_inequality_holds", f.exponent_inequality.holds}};
  rep.columns = {"quantity", "count", "bound", "holds"};
  rep.add_row({"finite_order", f.finite_order, static_cast<double>(f.bound), f.finite_holds});
  rep.add_row({"infinite_order", f.infinite_order, static_cast<double>(f.small_bound),
               f.infinite_holds});
  rep.warn_unless(f.radius_hypothesis, "R > 2r / gamma");
  rep.warn_unless(f.no_period_gap || f.gap_vacuous, "no period of length in [r+1, R]");
  rep.warn_unless(f.exponent_inequality.holds, "rho^(1+6 gamma) (2m+1)^(7 gamma) < 1");
  return rep;
}

}  // namespace

void add_walk_commands(CLI::App& app, const GlobalOptions& g, Command& selected) {
  {
    auto a = std::make_shared<WalkArgs>();
    auto* s = app.add_subcommand("walk-sim", "Monte Carlo probability that the walk satisfies the law");
    a->p.attach(s);
    s->add_option("--r", a->r, "Step counts")->capture_default_str();
    s->add_flag("--allow-indeterminate", a->allow_indeterminate,
                "Count endpoints beyond the regime cap instead of refusing");
    s->callback([a, &g, &selected] { selected = [a, &g] { return walk_sim(*a, g); }; });
  }
  {
    auto a = std::make_shared<ProductArgs>();
    auto* s = app.add_subcommand("product-walk", "Independence identity for the product walk");
    a->p.attach(s);
    s->add_option("--K", a->K, "First coordinate takes 4K^2 r steps")->capture_default_str();
    s->add_option("--r", a->r, "Step counts")->capture_default_str();
    s->add_flag("--square", a->square, "Both coordinates take r steps");
    s->add_flag("--allow-indeterminate", a->allow_indeterminate,
                "Count endpoints beyond the regime cap instead of refusing");
    s->callback([a, &g, &selected] { selected = [a, &g] { return product_walk(*a, g); }; });
  }
  {
    auto a = std::make_shared<ReturnArgs>();
    auto* s = app.add_subcommand("return-prob", "Exact return probabilities of the lazy walk");
    s->add_option("--m", a->m, "Number of generators")->capture_default_str();
    s->add_option("--r-max", a->r_max, "Largest step count")->capture_default_str();
    s->add_option("--every", a->every, "Row stride")->capture_default_str();
    s->callback([a, &selected] { selected = [a] { return return_prob(*a); }; });
  }
  {
    auto a = std::make_shared<TvArgs>();
    auto* s = app.add_subcommand("tv-decay", "Total variation between consecutive convolution powers");
    s->add_option("--group", a->group, "cyclic:k, dihedral:k or a table JSON file")
        ->capture_default_str();
    s->add_option("--r-max", a->r_max, "Largest power")->capture_default_str();
    s->add_option("--weights", a->weights, "Integer step weights per element");
    s->add_option("--threshold", a->thresholds, "Report the first r below each value");
    s->callback([a, &selected] { selected = [a] { return tv_decay(*a); }; });
  }
  {
    auto a = std::make_shared<LimitArgs>();
    auto* s = app.add_subcommand("limit-set", "Approximate partial-limit set of a sequence");
    s->add_option("--input", a->input, "File of whitespace-separated values");
    s->add_option("--profile", a->profile, "schedule or alternating");
    s->add_option("--epsilon", a->epsilon, "Grid size")->capture_default_str();
    s->add_option("--tail-start", a->tail_start, "First index of the tail")
        ->capture_default_str();
    s->add_option("--m", a->m, "Generators for the schedule profile")->capture_default_str();
    s->add_option("--K", a->K, "Schedule constant")->capture_default_str();
    s->add_option("--r1", a->r1, "First schedule radius")->capture_default_str();
    s->add_option("--j-max", a->j_max, "Profile length")->capture_default_str();
    s->callback([a, &selected] { selected = [a] { return limit_set(*a); }; });
  }
  {
    auto a = std::make_shared<BoundArgs>();
    auto* s = app.add_subcommand("bound-report", "Exhaustive formal-word counts against the bound");
    a->p.attach(s);
    s->add_option("--r", a->r, "Period length cutoff")->capture_default_str();
    s->add_option("--R", a->R, "Formal word length")->capture_default_str();
    s->add_option("--rho", a->rho, "rho (default: lazy spectral radius)");
    s->add_option("--gamma", a->gamma, "gamma (default: the parameter system)");
    s->add_option("--c", a->c, "Constant c")->capture_default_str();
    s->callback([a, &g, &selected] { selected = [a, &g] { return bound_report(*a, g); }; });
  }
}

}  // namespace blab::cli
