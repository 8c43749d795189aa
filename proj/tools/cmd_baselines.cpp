#include <memory>

#include "blab/errors.hpp"
#include "blab/solvable.hpp"
#include "commands.hpp"

namespace blab::cli {

namespace {

nlohmann::json parse_json_arg(const std::string& text) {
  try {
    if (!text.empty() && (text.front() == '{' || text.front() == '[')) {
      return nlohmann::json::parse(text);
    }
    return nlohmann::json::parse(read_file(text));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("bad JSON argument: " + std::string(e.what()));
  }
}

SemidirectGroup load_group(const std::string& desc) {
  if (desc == "infinite-dihedral") {
    return SemidirectGroup::infinite_dihedral();
  }
  return SemidirectGroup::from_json(parse_json_arg(desc));
}

struct GroupArgs {
  std::string group = "infinite-dihedral";
  int r = 100;
  int every = 1;
};

Report baseline_ball(const GroupArgs& a) {
  const SemidirectGroup g = load_group(a.group);
  Report rep;
  rep.columns = {"radius", "ball", "torsion", "density"};
  for (const DensityPoint& p : ball_torsion_density(g, a.r)) {
    if (p.radius % std::max(1, a.every) == 0 || p.radius == a.r) {
      rep.add_row({p.radius, p.ball, p.torsion, p.density});
    }
  }
  rep.summary = {{"group", g.name()}, {"r", a.r}};
  return rep;
}

Report baseline_walk(const GroupArgs& a) {
  const SemidirectGroup g = load_group(a.group);
  const WalkBaseline w = walk_torsion_baseline(g, a.r);
  Report rep;
  rep.columns = {"r", "torsion"};
  for (int r = 0; r <= a.r; ++r) {
    if (r % std::max(1, a.every) == 0 || r == a.r) {
      rep.add_row({r, w.torsion[r]});
    }
  }
  rep.summary = {{"group", g.name()},
                 {"r_max", a.r},
                 {"leaked_mass", w.leaked_mass},
                 {"phi_ratio", w.phi_ratio},
                 {"index_bound", w.index_bound}};
  return rep;
}

struct MnArgs {
  std::string group = "infinite-dihedral";
  std::string M = R"([{"v":[0],"k":0},{"v":[0],"k":1}])";
  std::string N = "translations";
  int r = 200;
  int every = 1;
};

Report mn_check(const MnArgs& a) {
  const SemidirectGroup g = load_group(a.group);
  std::vector<AffineElement> M;
  for (const auto& e : parse_json_arg(a.M)) {
    M.push_back(AffineElement{e.at("v").get<std::vector<std::int64_t>>(), e.at("k").get<int>()});
  }
  MembershipPredicate in_n;
  if (a.N == "translations") {
    in_n = [&g](const AffineElement& x) { return g.is_translation(x); };
  } else if (a.N == "nonidentity-translations") {
    in_n = [&g](const AffineElement& x) { return g.is_translation(x) && x != g.identity(); };
  } else {
    throw InvalidArgument("unknown N " + a.N);
  }
  const MnReport m = mn_density_bound(g, M, in_n, a.r);
  Report rep;
  rep.columns = {"radius", "ball", "in_n", "density"};
  for (const DensityPoint& p : m.n_density) {
    if (p.radius % std::max(1, a.every) == 0 || p.radius == a.r) {
      rep.add_row({p.radius, p.ball, p.torsion, p.density});
    }
  }
  rep.summary = {{"group", g.name()},
                 {"l", m.l},
                 {"ball_l", m.ball_l},
                 {"c", m.c},
                 {"factorization_ok", m.factorization_ok},
                 {"counterexamples", m.counterexamples},
                 {"first_failure", m.first_failure},
                 {"holds", m.holds}};
  rep.warn_unless(m.factorization_ok, "every ball element factors through M N");
  return rep;
}

}  // namespace

void add_baseline_commands(CLI::App& app, const GlobalOptions&, Command& selected) {
  const char* group_help = "infinite-dihedral, a group JSON file or inline JSON";
  {
    auto a = std::make_shared<GroupArgs>();
    auto* s = app.add_subcommand("baseline-ball", "Torsion density of Cayley balls");
    s->add_option("--group", a->group, group_help)->capture_default_str();
    s->add_option("--r", a->r, "Radius")->capture_default_str();
    s->add_option("--every", a->every, "Row stride")->capture_default_str();
    s->callback([a, &selected] { selected = [a] { return baseline_ball(*a); }; });
  }
  {
    auto a = std::make_shared<GroupArgs>();
    auto* s = app.add_subcommand("baseline-walk", "Exact torsion probability of the lazy walk");
    s->add_option("--group", a->group, group_help)->capture_default_str();
    s->add_option("--r", a->r, "Largest step count")->capture_default_str();
    s->add_option("--every", a->every, "Row stride")->capture_default_str();
    s->callback([a, &selected] { selected = [a] { return baseline_walk(*a); }; });
  }
  {
    auto a = std::make_shared<MnArgs>();
    auto* s = app.add_subcommand("mn-check", "Density bound for a factorization G = M N");
    s->add_option("--group", a->group, group_help)->capture_default_str();
    s->add_option("--M", a->M, "Elements of M as JSON [{\"v\": [...], \"k\": k}, ...]")
        ->capture_default_str();
    s->add_option("--N", a->N, "translations or nonidentity-translations")
        ->capture_default_str();
    s->add_option("--r", a->r, "Radius")->capture_default_str();
    s->add_option("--every", a->every, "Row stride")->capture_default_str();
    s->callback([a, &selected] { selected = [a] { return mn_check(*a); }; });
  }
}

}  // namespace blab::cli
