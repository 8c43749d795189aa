#include "blab/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "blab/errors.hpp"

namespace blab {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

const std::vector<Period> kNoPeriods;

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw InvalidArgument(message);
  }
}

// Calls visit(word) for every reduced word of length exactly `len` over
// `letters` whose first letter is `first`, in lexicographic order of letter
// indices. Returns the number of words visited.
template <typename Visit>
std::uint64_t for_each_reduced(const std::vector<Letter>& letters, Letter first,
                               std::size_t len, Visit&& visit) {
  if (len == 0) {
    return 0;
  }
  Word w(len);
  std::vector<std::size_t> choice(len, 0);
  w[0] = first;
  std::uint64_t visited = 0;
  std::size_t depth = 1;
  while (true) {
    if (depth == len) {
      visit(static_cast<const Word&>(w));
      ++visited;
      if (len == 1) {
        return visited;
      }
      --depth;
      ++choice[depth];
    }
    if (choice[depth] == letters.size()) {
      choice[depth] = 0;
      if (depth == 1) {
        return visited;
      }
      --depth;
      ++choice[depth];
      continue;
    }
    const Letter l = letters[choice[depth]];
    if (l == -w[depth - 1]) {
      ++choice[depth];
      continue;
    }
    w[depth] = l;
    ++depth;
    if (depth < len) {
      choice[depth] = 0;
    }
  }
}

bool passes(const Word& w, const FilterSpec& filter, const Alphabet& alphabet) {
  switch (filter.kind) {
    case PeriodFilter::kAll:
      return true;
    case PeriodFilter::kTheta:
      return is_theta_word(w, filter.theta);
    case PeriodFilter::kNotTheta:
      return !is_theta_word(w, filter.theta);
    case PeriodFilter::kAvoidSubalphabet:
      return !is_conjugate_into_subalphabet(w, filter.sub, alphabet);
  }
  return false;
}

// Members of the class of w (rotations of w and of w^-1), sorted.
std::vector<Word> class_members(const Word& w) {
  std::vector<Word> out;
  const Word inv = inverse(w);
  for (std::size_t s = 0; s < w.size(); ++s) {
    out.push_back(rotate(w, s));
    out.push_back(rotate(inv, s));
  }
  std::sort(out.begin(), out.end(), WordLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t lcm_exponents(const Presentation& p) {
  std::int64_t l = 0;
  for (const Period* q : p.all_periods()) {
    l = l == 0 ? q->exponent : std::lcm(l, q->exponent);
  }
  return l == 0 ? p.params().n : l;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// ParameterSystem

bool ParameterSystem::chain_holds() const {
  const double inv_m = 1.0 / m;
  const double inv_n = 1.0 / n;
  return theta > inv_m && inv_m > beta && beta > gamma && gamma > epsilon &&
         epsilon > zeta && zeta > inv_n;
}

std::vector<ParameterCheck> ParameterSystem::evaluate(int t) const {
  const double inv_m = 1.0 / m;
  const double inv_n = 1.0 / n;
  auto gt = [](std::string name, double lhs, double rhs) {
    return ParameterCheck{std::move(name), lhs, rhs, lhs > rhs};
  };
  auto lt = [](std::string name, double lhs, double rhs) {
    return ParameterCheck{std::move(name), lhs, rhs, lhs < rhs};
  };
  return {
      gt("theta > 1/m", theta, inv_m),
      gt("1/m > beta", inv_m, beta),
      gt("beta > gamma", beta, gamma),
      gt("gamma > epsilon", gamma, epsilon),
      gt("epsilon > zeta", epsilon, zeta),
      gt("zeta > 1/n", zeta, inv_n),
      gt("epsilon n > t", epsilon * n, t),
      lt("1/2 + 2 beta + epsilon < 1 - gamma", 0.5 + 2 * beta + epsilon,
         gamma_bar()),
      lt("(1 + gamma) / (1 - beta) < 3/2", (1 + gamma) / beta_bar(), 1.5),
  };
}

void ParameterSystem::validate() const {
  require(m >= 1, "parameter m must be at least 1");
  require(n >= 1 && n % 2 == 1, "parameter n must be a positive odd integer");
  for (double v : {theta, beta, gamma, epsilon, zeta}) {
    require(v > 0 && v < 1, "real parameters must lie in (0, 1)");
  }
}

// ---------------------------------------------------------------------------
// Variants and schedules

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kMaximal:
      return "maximal";
    case Variant::kAvoidSubgroup:
      return "avoid-subgroup";
    case Variant::kThetaFiltered:
      return "theta-filtered";
    case Variant::kCoprimeSplit:
      return "coprime-split";
    case Variant::kScheduleGated:
      return "schedule-gated";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::kMaximal, Variant::kAvoidSubgroup,
                    Variant::kThetaFiltered, Variant::kCoprimeSplit,
                    Variant::kScheduleGated}) {
    if (name == to_string(v)) {
      return v;
    }
  }
  throw InvalidArgument("unknown variant '" + name + "'");
}

bool RadiusSchedule::is_free(std::int64_t j) const {
  return interval(j) % 2 == 0;
}

std::size_t RadiusSchedule::interval(std::int64_t j) const {
  require(j >= 0, "radius must be non-negative");
  require(!radii.empty() && j < radii.back(),
          "radius " + std::to_string(j) + " lies beyond the schedule horizon");
  auto it = std::upper_bound(radii.begin(), radii.end(), j);
  return static_cast<std::size_t>(it - radii.begin()) - 1;
}

RadiusSchedule schedule(std::int64_t K, std::int64_t r1, std::int64_t horizon) {
  require(K >= 1 && K <= 1000000, "schedule K must lie in [1, 10^6]");
  require(r1 >= 1, "schedule r1 must be at least 1");
  require(horizon >= 0, "schedule horizon must be non-negative");
  RadiusSchedule s{K, r1, {0, r1}};
  const std::int64_t even_factor = 2 * K;
  const std::int64_t odd_factor = 8 * K * K * K;
  while (s.radii.back() <= horizon) {
    const std::int64_t factor = s.radii.size() % 2 == 0 ? even_factor : odd_factor;
    if (s.radii.back() > std::numeric_limits<std::int64_t>::max() / factor) {
      throw InvalidArgument("schedule radii overflow 64 bits");
    }
    s.radii.push_back(s.radii.back() * factor);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Period enumeration

std::vector<Period> enumerate_periods(const Alphabet& alphabet, int rank,
                                      const FilterSpec& filter,
                                      const CensusOptions& options) {
  require(rank >= 1, "period rank must be at least 1");
  if (filter.kind == PeriodFilter::kAvoidSubalphabet) {
    require(!filter.sub.empty(), "avoid-subalphabet filter needs letters");
  }
  const std::vector<Letter> letters = alphabet.signed_letters();
  const auto len = static_cast<std::size_t>(rank);
  const std::size_t shards = letters.size();
  std::vector<std::vector<Period>> found(shards);
  NodeBudget budget(options.node_budget);

  parallel_for(shards, options.jobs, [&](std::size_t s) {
    std::uint64_t pending = 0;
    for_each_reduced(letters, letters[s], len, [&](const Word& w) {
      if (++pending == 4096) {
        budget.charge(pending, "period enumeration");
        pending = 0;
      }
      if (len > 1 && w.front() == -w.back()) {
        return;
      }
      if (conj_class_key(w) != w || primitive_root(w).exponent != 1) {
        return;
      }
      Word rep;
      bool theta = false;
      if (filter.kind == PeriodFilter::kTheta) {
        // The class qualifies through its least theta-word member.
        for (const Word& c : class_members(w)) {
          if (is_theta_word(c, filter.theta)) {
            rep = c;
            theta = true;
            break;
          }
        }
        if (rep.empty()) {
          return;
        }
      } else if (filter.kind == PeriodFilter::kNotTheta) {
        for (const Word& c : class_members(w)) {
          if (is_theta_word(c, filter.theta)) {
            return;
          }
        }
        rep = w;
      } else {
        if (!passes(w, filter, alphabet)) {
          return;
        }
        rep = w;
        theta = is_theta_word(w, filter.theta);
      }
      found[s].push_back(Period{rep, w, 0, theta});
    });
    budget.charge(pending, "period enumeration");
  });

  std::vector<Period> out;
  for (auto& f : found) {
    std::move(f.begin(), f.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end(),
            [](const Period& a, const Period& b) { return word_less(a.key, b.key); });
  return out;
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(Alphabet alphabet, ParameterSystem params,
                           Variant variant)
    : alphabet_(std::move(alphabet)), params_(params), variant_(variant) {}

const std::vector<Period>& Presentation::periods(int rank) const {
  auto it = ranks_.find(rank);
  return it == ranks_.end() ? kNoPeriods : it->second;
}

std::size_t Presentation::period_count() const { return index_.size(); }

std::vector<const Period*> Presentation::all_periods() const {
  std::vector<const Period*> out;
  for (const auto& [rank, list] : ranks_) {
    for (const Period& p : list) {
      out.push_back(&p);
    }
  }
  return out;
}

std::size_t Presentation::regime_cap() const {
  std::int64_t n = 0;
  for (const auto& [rank, list] : ranks_) {
    for (const Period& p : list) {
      n = n == 0 ? p.exponent : std::min(n, p.exponent);
    }
  }
  return n == 0 ? kUnbounded : static_cast<std::size_t>(n / 6);
}

const Period* Presentation::find_by_key(const Word& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) {
    return nullptr;
  }
  return &ranks_.at(it->second.first)[it->second.second];
}

void Presentation::add_period(Period p) {
  require(!p.word.empty(), "a period must be nonempty");
  p.key = conj_class_key(p.word);
  require(!index_.contains(p.key),
          "period class " + format_word(p.key, alphabet_) + " already present");
  const int rank = static_cast<int>(p.word.size());
  auto& list = ranks_[rank];
  index_.emplace(p.key, std::make_pair(rank, list.size()));
  list.push_back(std::move(p));
}

bool Presentation::remove_period(const Word& key) {
  auto it = index_.find(key);
  if (it == index_.end()) {
    return false;
  }
  const int rank = it->second.first;
  auto& list = ranks_[rank];
  list.erase(list.begin() + static_cast<std::ptrdiff_t>(it->second.second));
  index_.erase(it);
  for (std::size_t i = 0; i < list.size(); ++i) {
    index_[list[i].key] = {rank, i};
  }
  if (list.empty()) {
    ranks_.erase(rank);
  }
  return true;
}

std::string Presentation::id() const {
  const std::string text = to_json(*this).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return hex64(h);
}

Presentation build_presentation(const Alphabet& alphabet,
                                const ParameterSystem& params,
                                const BuildOptions& options) {
  params.validate();
  require(options.max_rank >= 0, "max_rank must be non-negative");
  require(params.m == alphabet.m(),
          "parameter m does not match the alphabet");
  const std::size_t cap = static_cast<std::size_t>(params.n / 6);
  if (static_cast<std::size_t>(options.max_rank) > cap) {
    throw RegimeViolation("max_rank " + std::to_string(options.max_rank) +
                          " exceeds the regime cap floor(n/6) = " +
                          std::to_string(cap));
  }

  Presentation p(alphabet, params, options.variant);
  p.set_max_rank(options.max_rank);
  p.set_theta(options.theta);

  FilterSpec filter;
  filter.theta = options.theta;
  std::int64_t n1 = params.n;
  std::int64_t n2 = params.n;
  std::optional<RadiusSchedule> sched;

  switch (options.variant) {
    case Variant::kMaximal:
      break;
    case Variant::kAvoidSubgroup:
      require(alphabet.has_ab(),
              "avoid-subgroup variant needs an alphabet with a and b");
      filter.kind = PeriodFilter::kAvoidSubalphabet;
      filter.sub = {alphabet.a(), alphabet.b()};
      break;
    case Variant::kThetaFiltered:
      filter.kind = PeriodFilter::kTheta;
      break;
    case Variant::kCoprimeSplit:
      n1 = options.n1 != 0 ? options.n1 : params.n;
      n2 = options.n2 != 0 ? options.n2 : params.n + 2;
      for (std::int64_t e : {n1, n2}) {
        require(e >= params.n && e % 2 == 1,
                "exponents must be odd and at least n");
      }
      p.set_exponents(n1, n2);
      break;
    case Variant::kScheduleGated:
      sched = schedule(options.schedule_K, options.schedule_r1,
                       std::max<std::int64_t>(options.max_rank, 1));
      p.set_schedule(*sched);
      break;
  }

  for (int i = 1; i <= options.max_rank; ++i) {
    if (sched && sched->is_free(i)) {
      continue;
    }
    for (Period& q : enumerate_periods(alphabet, i, filter, options.census)) {
      if (options.variant == Variant::kCoprimeSplit) {
        q.exponent = q.theta_word ? n1 : n2;
      } else {
        q.exponent = params.n;
      }
      p.add_period(std::move(q));
    }
  }
  return p;
}

std::vector<std::string> check_conditions(const Presentation& p) {
  std::vector<std::string> out;
  const Alphabet& a = p.alphabet();
  for (const Period* q : p.all_periods()) {
    const std::string name = format_word(q->word, a);
    if (!is_cyclically_reduced(q->word)) {
      out.push_back(name + ": not cyclically reduced");
    }
    if (primitive_root(q->word).exponent != 1) {
      out.push_back(name + ": conjugate to a power of a shorter word");
    }
    if (q->key != conj_class_key(q->word)) {
      out.push_back(name + ": stored class key is stale");
    }
    if (q->exponent < p.params().n || q->exponent % 2 == 0) {
      out.push_back(name + ": exponent must be odd and at least n");
    }
  }
  for (int rank = 1; rank <= p.max_rank(); ++rank) {
    const auto& list = p.periods(rank);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].rank() != static_cast<std::size_t>(rank)) {
        out.push_back(format_word(list[i].word, a) + ": length differs from rank " +
                      std::to_string(rank));
      }
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (free_conjugate(list[i].word, list[j].word) ||
            free_conjugate(list[i].word, inverse(list[j].word))) {
          out.push_back(format_word(list[i].word, a) + " and " +
                        format_word(list[j].word, a) +
                        ": conjugate up to inversion");
        }
      }
    }
  }
  for (const Period* q : p.all_periods()) {
    if (q->rank() > static_cast<std::size_t>(p.max_rank())) {
      out.push_back(format_word(q->word, a) + ": rank above max_rank");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const Presentation& p) {
  using nlohmann::json;
  const ParameterSystem& ps = p.params();
  json j;
  j["format"] = kPresentationFormat;
  j["version"] = kPresentationVersion;
  j["alphabet"] = {{"m", p.alphabet().m()}, {"ab", p.alphabet().has_ab()}};
  j["params"] = {{"theta", ps.theta},   {"m", ps.m},
                 {"beta", ps.beta},     {"gamma", ps.gamma},
                 {"epsilon", ps.epsilon}, {"zeta", ps.zeta},
                 {"n", ps.n}};
  j["variant"] = to_string(p.variant());
  j["max_rank"] = p.max_rank();
  j["theta"] = p.theta();
  if (p.variant() == Variant::kCoprimeSplit) {
    j["n1"] = p.n1();
    j["n2"] = p.n2();
  }
  if (p.radius_schedule()) {
    const RadiusSchedule& s = *p.radius_schedule();
    j["schedule"] = {{"K", s.K}, {"r1", s.r1}, {"radii", s.radii}};
  }
  json ranks = json::array();
  for (int rank = 1; rank <= p.max_rank(); ++rank) {
    json list = json::array();
    for (const Period& q : p.periods(rank)) {
      list.push_back({{"word", format_word(q.word, p.alphabet())},
                      {"exponent", q.exponent},
                      {"theta_word", q.theta_word}});
    }
    ranks.push_back({{"rank", rank}, {"periods", std::move(list)}});
  }
  j["ranks"] = std::move(ranks);
  return j;
}

Presentation presentation_from_json(const nlohmann::json& j) {
  try {
    require(j.at("format").get<std::string>() == kPresentationFormat,
            "not a presentation document");
    const int version = j.at("version").get<int>();
    require(version == kPresentationVersion,
            "unsupported presentation version " + std::to_string(version));
    Alphabet alphabet(j.at("alphabet").at("m").get<int>(),
                      j.at("alphabet").at("ab").get<bool>());
    const auto& pj = j.at("params");
    ParameterSystem ps;
    ps.theta = pj.at("theta").get<double>();
    ps.m = pj.at("m").get<int>();
    ps.beta = pj.at("beta").get<double>();
    ps.gamma = pj.at("gamma").get<double>();
    ps.epsilon = pj.at("epsilon").get<double>();
    ps.zeta = pj.at("zeta").get<double>();
    ps.n = pj.at("n").get<int>();
    ps.validate();

    Presentation p(alphabet, ps,
                   parse_variant(j.at("variant").get<std::string>()));
    p.set_max_rank(j.at("max_rank").get<int>());
    p.set_theta(j.at("theta").get<double>());
    if (j.contains("n1")) {
      p.set_exponents(j.at("n1").get<std::int64_t>(),
                      j.at("n2").get<std::int64_t>());
    }
    if (j.contains("schedule")) {
      const auto& sj = j.at("schedule");
      p.set_schedule(RadiusSchedule{
          sj.at("K").get<std::int64_t>(), sj.at("r1").get<std::int64_t>(),
          sj.at("radii").get<std::vector<std::int64_t>>()});
    }
    for (const auto& rj : j.at("ranks")) {
      const int rank = rj.at("rank").get<int>();
      for (const auto& qj : rj.at("periods")) {
        Period q;
        q.word = parse_word(qj.at("word").get<std::string>(), alphabet);
        require(q.word.size() == static_cast<std::size_t>(rank),
                "period " + qj.at("word").get<std::string>() +
                    " listed under the wrong rank");
        q.exponent = qj.at("exponent").get<std::int64_t>();
        q.theta_word = qj.at("theta_word").get<bool>();
        p.add_period(std::move(q));
      }
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed presentation: ") + e.what());
  }
}

PresentationDiff diff(const Presentation& left, const Presentation& right) {
  PresentationDiff d;
  const nlohmann::json lj = to_json(left);
  const nlohmann::json rj = to_json(right);
  for (const char* key : {"alphabet", "params", "variant", "max_rank", "theta",
                          "n1", "n2", "schedule"}) {
    const bool in_l = lj.contains(key);
    const bool in_r = rj.contains(key);
    if (in_l != in_r || (in_l && lj.at(key) != rj.at(key))) {
      d.header_changes.push_back(std::string(key) + ": " +
                                 (in_l ? lj.at(key).dump() : "absent") +
                                 " -> " +
                                 (in_r ? rj.at(key).dump() : "absent"));
    }
  }
  for (const Period* q : left.all_periods()) {
    const std::string name = format_word(q->word, left.alphabet());
    const Period* o = right.find_by_key(q->key);
    if (o == nullptr) {
      d.only_left.push_back(name);
    } else if (o->exponent != q->exponent) {
      d.exponent_changes.push_back(name + ": " + std::to_string(q->exponent) +
                                   " -> " + std::to_string(o->exponent));
    }
  }
  for (const Period* q : right.all_periods()) {
    if (left.find_by_key(q->key) == nullptr) {
      d.only_right.push_back(format_word(q->word, right.alphabet()));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Classification

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::kTrivial:
      return "trivial";
    case VerdictKind::kTorsion:
      return "torsion";
    case VerdictKind::kFreeSurrogate:
      return "free-surrogate";
  }
  return "?";
}

namespace {

// Classification of a word already known to be reduced and within the cap.
TorsionVerdict classify_reduced(const Word& w, const Presentation& p,
                                std::size_t cap) {
  TorsionVerdict v;
  v.regime_cap = cap;
  if (w.empty()) {
    return v;
  }
  const Word core = cyclic_reduce(w).core;
  PrimitiveRoot pr = primitive_root(core);
  const Period* period = p.find_by_key(conj_class_key(pr.root));
  if (period == nullptr) {
    v.kind = VerdictKind::kFreeSurrogate;
    v.order = 0;
    v.root = std::move(pr.root);
    return v;
  }
  auto k = static_cast<std::int64_t>(pr.exponent);
  if (!free_conjugate(pr.root, period->word)) {
    k = -k;
  }
  v.kind = VerdictKind::kTorsion;
  v.period = period;
  v.power = k;
  v.root = std::move(pr.root);
  v.order = static_cast<std::uint64_t>(period->exponent /
                                       std::gcd(period->exponent, k));
  return v;
}

}  // namespace

TorsionVerdict classify_torsion(std::span<const Letter> w,
                                const Presentation& p) {
  const Word reduced = free_reduce(w);
  const std::size_t cap = p.regime_cap();
  if (reduced.size() > cap) {
    throw RegimeViolation("word of reduced length " +
                          std::to_string(reduced.size()) +
                          " exceeds the regime cap " + std::to_string(cap));
  }
  return classify_reduced(reduced, p, cap);
}

// ---------------------------------------------------------------------------
// Ball census

double BallReport::torsion_density() const {
  return ball_size == 0 ? 0.0 : static_cast<double>(torsion) /
                                    static_cast<double>(ball_size);
}

double BallReport::law_density() const {
  return ball_size == 0 ? 0.0 : static_cast<double>(law_holders) /
                                    static_cast<double>(ball_size);
}

BallReport ball_census(const Presentation& p, int r,
                       const CensusOptions& options) {
  require(r >= 0, "ball radius must be non-negative");
  const std::size_t cap = p.regime_cap();
  if (static_cast<std::size_t>(r) > cap) {
    throw RegimeViolation("ball radius " + std::to_string(r) +
                          " exceeds the regime cap " + std::to_string(cap));
  }
  const std::vector<Letter> letters = p.alphabet().signed_letters();
  const std::int64_t law_n = lcm_exponents(p);

  struct Partial {
    std::vector<std::uint64_t> sphere;
    std::vector<std::uint64_t> torsion;
    std::uint64_t law = 0;
    std::map<Word, std::uint64_t, WordLess> per_period;
  };
  const std::size_t shards = letters.size();
  std::vector<Partial> parts(shards);
  NodeBudget budget(options.node_budget);

  parallel_for(shards, options.jobs, [&](std::size_t s) {
    Partial& part = parts[s];
    part.sphere.assign(static_cast<std::size_t>(r) + 1, 0);
    part.torsion.assign(static_cast<std::size_t>(r) + 1, 0);
    std::uint64_t pending = 0;
    for (int j = 1; j <= r; ++j) {
      for_each_reduced(letters, letters[s], static_cast<std::size_t>(j),
                       [&](const Word& w) {
                         if (++pending == 4096) {
                           budget.charge(pending, "ball census");
                           pending = 0;
                         }
                         ++part.sphere[j];
                         const TorsionVerdict v = classify_reduced(w, p, cap);
                         if (v.kind == VerdictKind::kTorsion) {
                           ++part.torsion[j];
                           ++part.per_period[v.period->key];
                           if (law_n % static_cast<std::int64_t>(v.order) == 0) {
                             ++part.law;
                           }
                         }
                       });
    }
    budget.charge(pending, "ball census");
  });

  BallReport rep;
  rep.r = r;
  rep.regime_cap = cap;
  rep.n = law_n;
  rep.sphere_sizes.assign(static_cast<std::size_t>(r) + 1, 0);
  rep.sphere_torsion.assign(static_cast<std::size_t>(r) + 1, 0);
  rep.sphere_sizes[0] = 1;
  rep.law_holders = 1;  // the identity
  for (const Partial& part : parts) {
    for (int j = 1; j <= r; ++j) {
      rep.sphere_sizes[j] += part.sphere[j];
      rep.sphere_torsion[j] += part.torsion[j];
    }
    rep.law_holders += part.law;
    for (const auto& [key, count] : part.per_period) {
      rep.per_period[key] += count;
    }
  }
  for (int j = 0; j <= r; ++j) {
    rep.ball_size += rep.sphere_sizes[j];
    rep.torsion += rep.sphere_torsion[j];
  }

  const long double base = 2.0L * p.alphabet().rank() - 1.0L;
  auto power = [&](long double e) { return std::pow(base, e * r); };
  std::uint64_t single_max = 0;
  for (const auto& [key, count] : rep.per_period) {
    single_max = std::max(single_max, count);
  }
  std::size_t top_rank = 0;
  for (const Period* q : p.all_periods()) {
    top_rank = std::max(top_rank, q->rank());
  }
  rep.comparisons.push_back(
      {"ball size > (2m-1)^(0.999r)", static_cast<long double>(rep.ball_size),
       power(0.999L), static_cast<long double>(rep.ball_size) > power(0.999L),
       true});
  rep.comparisons.push_back(
      {"conjugates of powers of one period <= (2m-1)^(0.6r)",
       static_cast<long double>(single_max), power(0.6L),
       static_cast<long double>(single_max) <= power(0.6L), false});
  rep.comparisons.push_back(
      {"law holders < (2m-1)^(0.9r)", static_cast<long double>(rep.law_holders),
       power(0.9L), static_cast<long double>(rep.law_holders) < power(0.9L),
       r > 10 && static_cast<double>(top_rank) < 0.1 * r});
  return rep;
}

// ---------------------------------------------------------------------------
// Density tuning

TuneResult tune_density(const Presentation& p, int r, double target,
                        double tolerance, const CensusOptions& options) {
  require(target >= 0 && target <= 1, "target density must lie in [0, 1]");
  require(tolerance >= 0, "tolerance must be non-negative");
  const BallReport census = ball_census(p, r, options);
  const auto ball = static_cast<double>(census.ball_size);

  TuneResult res{p, {}, census.torsion_density(), census.torsion_density(),
                 target, 0.0, tolerance, true};
  std::uint64_t step_max = 0;
  for (const auto& [key, count] : census.per_period) {
    step_max = std::max(step_max, count);
  }
  res.granularity = static_cast<double>(step_max) / ball;

  if (target > res.initial_density + tolerance) {
    res.reachable = false;
    return res;
  }

  std::vector<const Period*> order = p.all_periods();
  std::stable_sort(order.begin(), order.end(),
                   [](const Period* a, const Period* b) {
                     if (a->rank() != b->rank()) {
                       return a->rank() > b->rank();
                     }
                     return word_less(b->key, a->key);
                   });

  std::uint64_t torsion = census.torsion;
  for (const Period* q : order) {
    const double current = static_cast<double>(torsion) / ball;
    if (std::abs(current - target) <= tolerance) {
      break;
    }
    auto it = census.per_period.find(q->key);
    const std::uint64_t share = it == census.per_period.end() ? 0 : it->second;
    const double after = static_cast<double>(torsion - share) / ball;
    DropRecord rec{q->word, static_cast<int>(q->rank()), current, current,
                   false};
    if (after >= target - tolerance ||
        std::abs(after - target) < std::abs(current - target)) {
      res.presentation.remove_period(q->key);
      torsion -= share;
      rec.density_after = after;
      rec.dropped = true;
    }
    res.log.push_back(std::move(rec));
  }
  res.final_density = static_cast<double>(torsion) / ball;
  return res;
}

}  // namespace blab
