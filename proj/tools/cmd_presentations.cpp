#include <fstream>
#include <memory>

#include "blab/errors.hpp"
#include "commands.hpp"
#include "presentation_args.hpp"

namespace blab::cli {

namespace {

struct PeriodsArgs {
  int m = 2;
  int rank = 3;
  std::string filter = "all";
  double theta = kDefaultTheta;
  bool ab = false;
};

Report periods(const PeriodsArgs& a, const GlobalOptions& g) {
  const Alphabet alphabet(a.m, a.ab);
  FilterSpec f;
  f.theta = a.theta;
  if (a.filter == "theta") {
    f.kind = PeriodFilter::kTheta;
  } else if (a.filter == "not-theta") {
    f.kind = PeriodFilter::kNotTheta;
  } else if (a.filter == "avoid-subalphabet") {
    if (!a.ab) {
      throw InvalidArgument("avoid-subalphabet needs --ab");
    }
    f.kind = PeriodFilter::kAvoidSubalphabet;
    f.sub = {alphabet.a(), alphabet.b()};
  } else if (a.filter != "all") {
    throw InvalidArgument("unknown filter " + a.filter);
  }
  Report rep;
  rep.columns = {"rank", "word", "key", "theta_word"};
  for (int i = 1; i <= a.rank; ++i) {
    for (const Period& p : enumerate_periods(alphabet, i, f, g.census())) {
      rep.add_row({i, format_word(p.word, alphabet), format_word(p.key, alphabet),
                   p.theta_word});
    }
  }
  rep.summary = {{"m", a.m}, {"filter", a.filter}, {"count", rep.rows.size()}};
  return rep;
}

void period_table(Report& rep, const Presentation& p) {
  rep.columns = {"rank", "word", "exponent", "theta_word"};
  for (const Period* q : p.all_periods()) {
    rep.add_row({q->rank(), format_word(q->word, p.alphabet()), q->exponent,
                 q->theta_word});
  }
}

Report build(const PresentationArgs& a, const GlobalOptions& g) {
  const Presentation p = a.load(g);
  Report rep;
  const auto violations = check_conditions(p);
  if (g.format == "json") {
    rep.summary = to_json(p);
  } else {
    period_table(rep, p);
  }
  rep.warn_unless(violations.empty(), "period conditions");
  for (const auto& v : violations) {
    rep.hypothesis_warnings.push_back(v);
  }
  if (!p.params().chain_holds()) {
    rep.hypothesis_warnings.push_back(
        "theta > 1/m > beta > gamma > epsilon > zeta > 1/n");
  }
  return rep;
}

struct ClassifyArgs {
  PresentationArgs p;
  std::vector<std::string> words;
};

Report classify(const ClassifyArgs& a, const GlobalOptions& g) {
  const Presentation p = a.p.load(g);
  Report rep;
  rep.columns = {"word", "verdict", "order", "period", "power", "root"};
  for (const std::string& text : a.words) {
    const Word w = parse_word(text, p.alphabet());
    const TorsionVerdict v = classify_torsion(w, p);
    rep.add_row({format_word(free_reduce(w), p.alphabet()), to_string(v.kind), v.order,
                 v.period ? format_word(v.period->word, p.alphabet()) : "",
                 v.power, format_word(v.root, p.alphabet())});
  }
  rep.summary = {{"presentation", p.id()}, {"regime_cap", p.regime_cap()}};
  return rep;
}

struct BallArgs {
  PresentationArgs p;
  int r = 6;
};

Report ball(const BallArgs& a, const GlobalOptions& g) {
  const Presentation p = a.p.load(g);
  const BallReport b = ball_census(p, a.r, g.census());
  Report rep;
  rep.columns = {"j", "sphere", "torsion"};
  for (int j = 0; j <= a.r; ++j) {
    rep.add_row({j, b.sphere_sizes[j], b.sphere_torsion[j]});
  }
  nlohmann::json comparisons = nlohmann::json::array();
  for (const BoundComparison& c : b.comparisons) {
    comparisons.push_back({{"name", c.name},
                           {"lhs", static_cast<double>(c.lhs)},
                           {"rhs", static_cast<double>(c.rhs)},
                           {"holds", c.holds},
                           {"hypotheses_ok", c.hypotheses_ok}});
    rep.warn_unless(c.hypotheses_ok, c.name);
  }
  nlohmann::json per_period = nlohmann::json::object();
  for (const auto& [key, count] : b.per_period) {
    per_period[format_word(key, p.alphabet())] = count;
  }
  rep.summary = {{"presentation", p.id()},
                 {"r", a.r},
                 {"ball", b.ball_size},
                 {"torsion", b.torsion},
                 {"torsion_density", b.torsion_density()},
                 {"law_exponent", b.n},
                 {"law_holders", b.law_holders},
                 {"law_density", b.law_density()},
                 {"per_period", per_period},
                 {"comparisons", comparisons}};
  return rep;
}

struct TuneArgs {
  PresentationArgs p;
  int r = 6;
  double target = 0.5;
  double tol = 0;
  std::string presentation_out;
};

Report tune(const TuneArgs& a, const GlobalOptions& g) {
  const Presentation p = a.p.load(g);
  const TuneResult t = tune_density(p, a.r, a.target, a.tol, g.census());
  Report rep;
  rep.columns = {"step", "period", "rank", "density_before", "density_after", "action"};
  std::size_t step = 0;
  for (const DropRecord& d : t.log) {
    rep.add_row({step++, format_word(d.period, p.alphabet()), d.rank, d.density_before,
                 d.density_after, d.dropped ? "drop" : "skip"});
  }
  rep.summary = {{"target", t.target},
                 {"initial_density", t.initial_density},
                 {"final_density", t.final_density},
                 {"granularity", t.granularity},
                 {"tolerance", t.tolerance},
                 {"reachable", t.reachable},
                 {"presentation", to_json(t.presentation)}};
  if (!a.presentation_out.empty()) {
    std::ofstream(a.presentation_out, std::ios::binary)
        << to_json(t.presentation).dump(2) << "\n";
  }
  rep.warn_unless(t.reachable, "target at most the full density");
  return rep;
}

struct ScheduleArgs {
  std::int64_t K = 2;
  std::int64_t r1 = 1;
  std::int64_t horizon = 1000;
};

Report schedule_cmd(const ScheduleArgs& a) {
  const RadiusSchedule s = schedule(a.K, a.r1, a.horizon);
  Report rep;
  rep.columns = {"interval", "start", "end", "kind"};
  for (std::size_t i = 0; i + 1 < s.radii.size(); ++i) {
    rep.add_row({i, s.radii[i], s.radii[i + 1], i % 2 == 0 ? "free" : "torsion"});
  }
  rep.summary = {{"K", a.K}, {"r1", a.r1}, {"horizon", a.horizon}};
  return rep;
}

struct DiffArgs {
  std::string left;
  std::string right;
};

Report diff_cmd(const DiffArgs& a) {
  auto load = [](const std::string& f) {
    try {
      return presentation_from_json(nlohmann::json::parse(read_file(f)));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(f + ": " + e.what());
    }
  };
  const PresentationDiff d = diff(load(a.left), load(a.right));
  Report rep;
  rep.columns = {"change", "item"};
  for (const auto& s : d.header_changes) rep.add_row({"header", s});
  for (const auto& s : d.only_left) rep.add_row({"only-left", s});
  for (const auto& s : d.only_right) rep.add_row({"only-right", s});
  for (const auto& s : d.exponent_changes) rep.add_row({"exponent", s});
  rep.summary = {{"identical", d.identical()}};
  return rep;
}

}  // namespace

void add_presentation_commands(CLI::App& app, const GlobalOptions& g,
                               Command& selected) {
  {
    auto a = std::make_shared<PeriodsArgs>();
    auto* s = app.add_subcommand("periods", "One representative per primitive class, by rank");
    s->add_option("--m", a->m, "Number of generators")->capture_default_str();
    s->add_option("--rank", a->rank, "Largest rank")->capture_default_str();
    s->add_option("--filter", a->filter, "all, theta, not-theta, avoid-subalphabet")
        ->capture_default_str();
    s->add_option("--theta", a->theta, "theta for the theta filters")->capture_default_str();
    s->add_flag("--ab", a->ab, "Add the letters a and b to the alphabet");
    s->callback([a, &g, &selected] { selected = [a, &g] { return periods(*a, g); }; });
  }
  {
    auto a = std::make_shared<PresentationArgs>();
    auto* s = app.add_subcommand("build", "Build a presentation (JSON with --format json)");
    a->attach(s);
    s->callback([a, &g, &selected] { selected = [a, &g] { return build(*a, g); }; });
  }
  {
    auto a = std::make_shared<ClassifyArgs>();
    auto* s = app.add_subcommand("classify", "Torsion verdicts for words");
    a->p.attach(s);
    s->add_option("--word", a->words, "Word to classify")->required();
    s->callback([a, &g, &selected] { selected = [a, &g] { return classify(*a, g); }; });
  }
  {
    auto a = std::make_shared<BallArgs>();
    auto* s = app.add_subcommand("ball-census", "Torsion counts on the ball of radius r");
    a->p.attach(s);
    s->add_option("--r", a->r, "Radius")->capture_default_str();
    s->callback([a, &g, &selected] { selected = [a, &g] { return ball(*a, g); }; });
  }
  {
    auto a = std::make_shared<TuneArgs>();
    auto* s = app.add_subcommand("tune-density", "Drop periods until the torsion density nears a target");
    a->p.max_rank = 6;
    a->p.attach(s);
    s->add_option("--r", a->r, "Radius")->capture_default_str();
    s->add_option("--target", a->target, "Target density")->capture_default_str();
    s->add_option("--tol", a->tol, "Tolerance")->capture_default_str();
    s->add_option("--presentation-out", a->presentation_out,
                  "Also write the tuned presentation here");
    s->callback([a, &g, &selected] { selected = [a, &g] { return tune(*a, g); }; });
  }
  {
    auto a = std::make_shared<ScheduleArgs>();
    auto* s = app.add_subcommand("schedule", "Free and torsion radius intervals");
    s->add_option("--K", a->K, "Schedule constant")->capture_default_str();
    s->add_option("--r1", a->r1, "First radius")->capture_default_str();
    s->add_option("--horizon", a->horizon, "Largest radius to cover")->capture_default_str();
    s->callback([a, &selected] { selected = [a] { return schedule_cmd(*a); }; });
  }
  {
    auto a = std::make_shared<DiffArgs>();
    auto* s = app.add_subcommand("diff", "Compare two presentation files");
    s->add_option("left", a->left, "First presentation")->required();
    s->add_option("right", a->right, "Second presentation")->required();
    s->callback([a, &selected] { selected = [a] { return diff_cmd(*a); }; });
  }
}

}  // namespace blab::cli
