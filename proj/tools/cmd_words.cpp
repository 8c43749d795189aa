#include <memory>
#include <sstream>

#include "blab/codec.hpp"
#include "blab/errors.hpp"
#include "commands.hpp"

namespace blab::cli {

namespace {

struct AperiodicArgs {
  int m = 2;
  int r = 8;
  int t = 3;
  double l = 0;
};

Report census_aperiodic(const AperiodicArgs& a, const GlobalOptions& g) {
  Report rep;
  if (a.l > 0) {
    const AperiodicBoundCheck c = aperiodic_lower_bound_check(a.m, a.r, a.l, g.census());
    rep.columns = {"r", "count", "bound", "holds"};
    for (const auto& row : c.rows) {
      rep.add_row({row.r, row.exact, static_cast<double>(row.bound), row.holds});
    }
    rep.summary = {{"m", a.m}, {"l", a.l}, {"t", c.t}, {"kappa", c.kappa},
                   {"hypotheses_ok", c.hypotheses_ok}, {"holds", c.holds()}};
    rep.warn_unless(c.hypotheses_ok, "0 < l < 2m-1 with a valid t");
    return rep;
  }
  rep.columns = {"r", "count"};
  for (int r = 0; r <= a.r; ++r) {
    rep.add_row({r, count_aperiodic_exact(a.m, r, a.t, g.census())});
  }
  rep.summary = {{"m", a.m}, {"t", a.t}};
  return rep;
}

struct ThetaArgs {
  int m = 2;
  int r = 8;
  double theta = 0.25;
};

Report census_theta(const ThetaArgs& a, const GlobalOptions& g) {
  Report rep;
  rep.columns = {"r", "count", "combinatorial_bound", "dominating_bound", "holds"};
  bool headline = true;
  for (int r = 1; r <= a.r; ++r) {
    const std::uint64_t exact = count_theta_words(a.m, r, a.theta, g.census());
    const ThetaBound b = theta_upper_bound(a.m, r, a.theta);
    rep.add_row({r, exact, big(b.combinatorial), big(b.dominating),
                 BigInt(exact) <= b.combinatorial});
    headline = b.headline_hypotheses_ok;
  }
  rep.summary = {{"m", a.m}, {"theta", a.theta}, {"headline_hypotheses_ok", headline}};
  rep.warn_unless(headline, "m > 2^(3/theta) for the headline bound");
  return rep;
}

struct UnbalancedArgs {
  int m = 2;
  int r = 8;
  double threshold = kDefaultBalance;
};

Report census_unbalanced(const UnbalancedArgs& a) {
  Report rep;
  rep.columns = {"r", "total", "even_side", "odd_side", "either", "dominating",
                 "sides_dominated"};
  for (int r = 1; r <= a.r; ++r) {
    const UnbalancedCount u = count_unbalanced(a.m, r, a.threshold);
    rep.add_row({r, big(u.total), big(u.even_side), big(u.odd_side), big(u.either),
                 big(u.dominating),
                 u.even_side <= u.dominating && u.odd_side <= u.dominating});
  }
  rep.summary = {{"m", a.m}, {"threshold", a.threshold}};
  return rep;
}

struct CodecArgs {
  int m = 2;
  std::string roundtrip;
  std::vector<std::string> words;
  std::vector<std::string> codes;
};

Report codec(const CodecArgs& a) {
  const Alphabet alphabet(a.m);
  std::vector<std::string> inputs = a.words;
  if (!a.roundtrip.empty()) {
    std::istringstream lines(read_file(a.roundtrip));
    for (std::string line; std::getline(lines, line);) {
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      if (line.find_first_not_of(" \t") != std::string::npos) {
        inputs.push_back(line);
      }
    }
  }
  Report rep;
  rep.columns = {"word", "code", "cln", "length", "roundtrip"};
  std::size_t failures = 0;
  for (const std::string& text : inputs) {
    const Word w = free_reduce(parse_word(text, alphabet));
    const Encoding e = encode_min(w);
    const bool ok = decode(e.code) == w;
    failures += ok ? 0 : 1;
    rep.add_row({format_word(w, alphabet), format_code(e.code, alphabet), e.cln,
                 w.size(), ok});
  }
  for (const std::string& text : a.codes) {
    const ParsedCode parsed = parse_code(text, alphabet);
    Word w;
    try {
      w = decode(parsed.code);
    } catch (const DecodeError& e) {
      const std::size_t byte = e.offset() < parsed.byte_offsets.size()
                                   ? parsed.byte_offsets[e.offset()]
                                   : text.size();
      throw InvalidArgument(std::string(e.what()) + " (byte " +
                            std::to_string(byte) + ")");
    }
    rep.add_row({format_word(w, alphabet), format_code(parsed.code, alphabet),
                 code_length_min(w), w.size(), true});
  }
  rep.summary = {{"m", a.m}, {"words", rep.rows.size()}, {"failures", failures}};
  rep.failure_status = failures == 0 ? 0 : 1;
  return rep;
}

struct ClnArgs {
  int m = 2;
  int k = 6;
};

Report count_cln(const ClnArgs& a, const GlobalOptions& g) {
  Report rep;
  rep.columns = {"k", "count", "bound", "holds"};
  BigInt bound = 1;
  for (int k = 0; k <= a.k; ++k) {
    const std::uint64_t c = count_by_cln(a.m, k, g.census());
    rep.add_row({k, c, big(bound), BigInt(c) <= bound});
    bound *= 2 * a.m + 2;
  }
  rep.summary = {{"m", a.m}, {"symbols", 2 * a.m + 2}};
  return rep;
}

}  // namespace

void add_word_commands(CLI::App& app, const GlobalOptions& g, Command& selected) {
  {
    auto a = std::make_shared<AperiodicArgs>();
    auto* s = app.add_subcommand("census-aperiodic", "Exact counts of reduced t-aperiodic words");
    s->add_option("--m", a->m, "Number of generators")->capture_default_str();
    s->add_option("--r", a->r, "Largest length")->capture_default_str();
    s->add_option("--t", a->t, "Forbidden power")->capture_default_str();
    s->add_option("--l", a->l, "Compare with l^r, choosing t from l");
    s->callback([a, &g, &selected] { selected = [a, &g] { return census_aperiodic(*a, g); }; });
  }
  {
    auto a = std::make_shared<ThetaArgs>();
    auto* s = app.add_subcommand("census-theta", "Exact theta-word counts against the binomial bound");
    s->add_option("--m", a->m, "Number of generators")->capture_default_str();
    s->add_option("--r", a->r, "Largest length")->capture_default_str();
    s->add_option("--theta", a->theta, "Square density")->capture_default_str();
    s->callback([a, &g, &selected] { selected = [a, &g] { return census_theta(*a, g); }; });
  }
  {
    auto a = std::make_shared<UnbalancedArgs>();
    auto* s = app.add_subcommand("census-unbalanced", "Unbalanced pair-free Y-word counts");
    s->add_option("--m", a->m, "Number of generators")->capture_default_str();
    s->add_option("--r", a->r, "Largest length")->capture_default_str();
    s->add_option("--threshold", a->threshold, "Balance threshold")->capture_default_str();
    s->callback([a, &selected] { selected = [a] { return census_unbalanced(*a); }; });
  }
  {
    auto a = std::make_shared<CodecArgs>();
    auto* s = app.add_subcommand("codec", "Minimal periodic-run codes and decoding");
    s->add_option("--m", a->m, "Number of generators")->capture_default_str();
    s->add_option("--roundtrip", a->roundtrip, "File with one word per line");
    s->add_option("--word", a->words, "Word to encode");
    s->add_option("--decode", a->codes, "Code string to decode");
    s->callback([a, &selected] { selected = [a] { return codec(*a); }; });
  }
  {
    auto a = std::make_shared<ClnArgs>();
    auto* s = app.add_subcommand("count-cln", "Number of reduced words of each code length");
    s->add_option("--m", a->m, "Number of generators")->capture_default_str();
    s->add_option("--k", a->k, "Largest code length")->capture_default_str();
    s->callback([a, &g, &selected] { selected = [a, &g] { return count_cln(*a, g); }; });
  }
}

}  // namespace blab::cli
