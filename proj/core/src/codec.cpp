#include "blab/codec.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "blab/errors.hpp"

namespace blab {

std::size_t bit_length(std::uint64_t v) noexcept {
  std::size_t n = 0;
  while (v != 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

std::size_t pcode_length(std::size_t period_length, std::size_t run_length) {
  return 1 + period_length + bit_length(run_length);
}

Word Factorization::concatenate() const {
  Word out;
  for (std::size_t i = 0; i < plains.size(); ++i) {
    out.insert(out.end(), plains[i].begin(), plains[i].end());
    if (i < runs.size()) {
      const Word w = periodic_word(runs[i].period, runs[i].length);
      out.insert(out.end(), w.begin(), w.end());
    }
  }
  return out;
}

std::size_t Factorization::code_length() const {
  std::size_t n = 0;
  for (const auto& v : plains) {
    n += v.size();
  }
  for (const auto& run : runs) {
    n += pcode_length(run.period.size(), run.length);
  }
  return n;
}

const char* describe(PcodeFault fault) {
  switch (fault) {
    case PcodeFault::kNone:
      return "ok";
    case PcodeFault::kEmptyWord:
      return "word is empty";
    case PcodeFault::kNotPeriodic:
      return "word is not a prefix of a power of the period";
    case PcodeFault::kPeriodTooLong:
      return "period is not shorter than the word";
    case PcodeFault::kPeriodImprimitive:
      return "period is a proper power";
    case PcodeFault::kPeriodNotCyclicallyReduced:
      return "period is not cyclically reduced";
  }
  return "unknown";
}

PcodeFault check_pcode(std::span<const Letter> period,
                       std::span<const Letter> w) {
  if (w.empty()) {
    return PcodeFault::kEmptyWord;
  }
  if (period.empty() || period.size() >= w.size()) {
    return PcodeFault::kPeriodTooLong;
  }
  if (!is_cyclically_reduced(period)) {
    return PcodeFault::kPeriodNotCyclicallyReduced;
  }
  if (primitive_root(period).exponent != 1) {
    return PcodeFault::kPeriodImprimitive;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != period[i % period.size()]) {
      return PcodeFault::kNotPeriodic;
    }
  }
  return PcodeFault::kNone;
}

namespace {

void append_block(CodeString& out, std::span<const Letter> period,
                  std::uint64_t length) {
  out.push_back(CodeSymbol::digit(0));
  for (Letter l : period) {
    out.push_back(CodeSymbol::letter(l));
  }
  for (std::size_t b = bit_length(length); b > 0; --b) {
    out.push_back(CodeSymbol::digit(static_cast<int>((length >> (b - 1)) & 1U)));
  }
}

}  // namespace

CodeString pcode(std::span<const Letter> period, std::span<const Letter> w) {
  const PcodeFault fault = check_pcode(period, w);
  if (fault != PcodeFault::kNone) {
    throw InvalidArgument(std::string("pcode: ") + describe(fault));
  }
  CodeString out;
  append_block(out, period, w.size());
  return out;
}

CodeString code_of(const Factorization& f) {
  CodeString out;
  for (std::size_t i = 0; i < f.plains.size(); ++i) {
    for (Letter l : f.plains[i]) {
      out.push_back(CodeSymbol::letter(l));
    }
    if (i < f.runs.size()) {
      append_block(out, f.runs[i].period, f.runs[i].length);
    }
  }
  return out;
}

namespace {

struct DpState {
  std::size_t cost = 0;
  std::size_t blocks = 0;
  std::size_t from = 0;
  std::size_t period = 0;  // 0 for a plain step
  bool set = false;
};

std::vector<DpState> run_dp(std::span<const Letter> w) {
  const std::size_t n = w.size();
  // cancel[x] = number of q in [1, x) with w[q] == w[q-1]^-1.
  std::vector<std::size_t> cancel(n + 1, 0);
  for (std::size_t q = 1; q <= n; ++q) {
    cancel[q] = cancel[q - 1] + (q >= 2 && w[q - 1] == -w[q - 2] ? 1 : 0);
  }
  auto reduced_run = [&](std::size_t i, std::size_t j) {
    // positions q in [i+1, j) compare w[q] with w[q-1]
    return cancel[j] - cancel[i + 1] == 0;
  };

  std::vector<DpState> best(n + 1);
  best[0].set = true;
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const DpState& here = best[i];
    {
      DpState& next = best[i + 1];
      const std::size_t cost = here.cost + 1;
      if (!next.set || cost < next.cost ||
          (cost == next.cost && here.blocks < next.blocks)) {
        next = {cost, here.blocks, i, 0, true};
      }
    }
    // Failure function of w[i..n).
    const std::span<const Letter> s = w.subspan(i);
    fail[0] = 0;
    if (s.size() >= 1) {
      fail[1] = 0;
    }
    std::size_t k = 0;
    for (std::size_t q = 1; q < s.size(); ++q) {
      while (k > 0 && s[q] != s[k]) {
        k = fail[k];
      }
      if (s[q] == s[k]) {
        ++k;
      }
      fail[q + 1] = k;
    }
    for (std::size_t len = 2; len <= s.size(); ++len) {
      const std::size_t p = len - fail[len];
      if (p >= len) {
        continue;
      }
      const std::size_t j = i + len;
      if (!reduced_run(i, j)) {
        break;  // every longer run from i contains the same cancellation
      }
      const std::size_t cost = here.cost + pcode_length(p, len);
      const std::size_t blocks = here.blocks + 1;
      DpState& target = best[j];
      if (!target.set || cost < target.cost ||
          (cost == target.cost && blocks < target.blocks)) {
        target = {cost, blocks, i, p, true};
      }
    }
  }
  return best;
}

}  // namespace

std::size_t code_length_min(std::span<const Letter> w) {
  return run_dp(w)[w.size()].cost;
}

Encoding encode_min(std::span<const Letter> w) {
  const auto best = run_dp(w);
  Encoding out;
  out.cln = best[w.size()].cost;
  out.input_reduced = is_reduced(w);

  // Walk back to recover the factorization.
  struct Step {
    std::size_t from, to, period;
  };
  std::vector<Step> steps;
  for (std::size_t j = w.size(); j > 0;) {
    const DpState& s = best[j];
    steps.push_back({s.from, j, s.period});
    j = s.from;
  }
  std::reverse(steps.begin(), steps.end());
  Factorization f;
  f.plains.emplace_back();
  for (const Step& s : steps) {
    if (s.period == 0) {
      f.plains.back().push_back(w[s.from]);
    } else {
      f.runs.push_back(
          {Word(w.begin() + static_cast<std::ptrdiff_t>(s.from),
                w.begin() + static_cast<std::ptrdiff_t>(s.from + s.period)),
           s.to - s.from});
      f.plains.emplace_back();
    }
  }
  out.code = code_of(f);
  out.factorization = std::move(f);
  return out;
}

namespace {

struct DecodeFailure {
  std::size_t offset;
  std::string reason;
};

// Returns the word, or the failure position and reason.
std::optional<Word> try_decode(const CodeString& code,
                               const DecodeOptions& options,
                               DecodeFailure* failure) {
  auto fail = [&](std::size_t offset, std::string reason) {
    if (failure != nullptr) {
      *failure = {offset, std::move(reason)};
    }
    return std::optional<Word>();
  };
  // Segments collected right to left.
  std::vector<Word> pieces;
  std::uint64_t total = 0;
  std::size_t pos = code.size();
  while (pos > 0) {
    if (!code[pos - 1].is_digit()) {
      Word plain;
      while (pos > 0 && !code[pos - 1].is_digit()) {
        plain.push_back(code[pos - 1].as_letter());
        --pos;
      }
      std::reverse(plain.begin(), plain.end());
      total += plain.size();
      pieces.push_back(std::move(plain));
      continue;
    }
    // Binary length: maximal digit run.
    const std::size_t digits_end = pos;
    while (pos > 0 && code[pos - 1].is_digit()) {
      --pos;
    }
    const std::size_t digits_begin = pos;
    if (code[digits_begin].as_digit() != 1) {
      return fail(digits_begin, "binary length has a leading zero");
    }
    if (digits_end - digits_begin > 62) {
      return fail(digits_begin, "binary length too large");
    }
    std::uint64_t length = 0;
    for (std::size_t q = digits_begin; q < digits_end; ++q) {
      length = (length << 1) | static_cast<std::uint64_t>(code[q].as_digit());
    }
    // Period letters.
    Word period;
    while (pos > 0 && !code[pos - 1].is_digit()) {
      period.push_back(code[pos - 1].as_letter());
      --pos;
    }
    std::reverse(period.begin(), period.end());
    if (period.empty()) {
      return fail(digits_begin, "digits without a period");
    }
    if (pos == 0) {
      return fail(0, "periodic block without a leading marker");
    }
    if (code[pos - 1].as_digit() != 0) {
      return fail(pos - 1, "block marker must be 0");
    }
    --pos;
    if (length <= period.size()) {
      return fail(digits_begin,
                  "run length must exceed the period length");
    }
    if (!is_cyclically_reduced(period)) {
      return fail(pos + 1, "period is not cyclically reduced");
    }
    if (primitive_root(period).exponent != 1) {
      return fail(pos + 1, "period is a proper power");
    }
    total += length;
    if (total > options.max_length) {
      return fail(digits_begin, "decoded word exceeds the length limit");
    }
    pieces.push_back(periodic_word(period, static_cast<std::size_t>(length)));
  }
  Word out;
  out.reserve(static_cast<std::size_t>(total));
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    out.insert(out.end(), it->begin(), it->end());
  }
  return out;
}

}  // namespace

Word decode(const CodeString& code, const DecodeOptions& options) {
  DecodeFailure failure{0, {}};
  auto w = try_decode(code, options, &failure);
  if (!w) {
    throw DecodeError(failure.offset, failure.reason);
  }
  return std::move(*w);
}

std::string format_code(const CodeString& code, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i > 0 && code[i].is_digit() != code[i - 1].is_digit()) {
      out += ' ';
    }
    out += code[i].is_digit() ? (code[i].as_digit() ? "1" : "0")
                              : alphabet.letter_name(code[i].as_letter());
  }
  return out;
}

ParsedCode parse_code(std::string_view text, const Alphabet& alphabet) {
  ParsedCode out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '0' || c == '1') {
      out.code.push_back(CodeSymbol::digit(c - '0'));
      out.byte_offsets.push_back(i);
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (c == 'x' || c == 'X') {
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
    }
    const Word letter = parse_word(text.substr(i, j - i), alphabet);
    if (letter.size() != 1) {
      throw InvalidArgument("cannot parse code symbol at byte " +
                            std::to_string(i));
    }
    out.code.push_back(CodeSymbol::letter(letter[0]));
    out.byte_offsets.push_back(i);
    i = j;
  }
  return out;
}

std::uint64_t count_by_cln(int m, int k, const CensusOptions& options) {
  if (m < 1) {
    throw InvalidArgument("count_by_cln: m must be positive");
  }
  if (k < 0) {
    throw InvalidArgument("count_by_cln: k must be non-negative");
  }
  if (k == 0) {
    return 1;
  }
  std::vector<CodeSymbol> symbols;
  for (Letter i = 1; i <= m; ++i) {
    symbols.push_back(CodeSymbol::letter(i));
    symbols.push_back(CodeSymbol::letter(-i));
  }
  symbols.push_back(CodeSymbol::digit(0));
  symbols.push_back(CodeSymbol::digit(1));
  const std::size_t base = symbols.size();

  NodeBudget budget(options.node_budget);
  std::vector<std::uint64_t> partial(base, 0);
  parallel_for(base, options.jobs, [&](std::size_t first) {
    CodeString code(static_cast<std::size_t>(k), symbols[first]);
    std::vector<std::size_t> digits(static_cast<std::size_t>(k), 0);
    digits[0] = first;
    std::uint64_t count = 0;
    std::uint64_t pending = 0;
    const DecodeOptions limits;
    while (true) {
      for (std::size_t q = 0; q < code.size(); ++q) {
        code[q] = symbols[digits[q]];
      }
      // Each word is counted only through its canonical minimal code.
      if (auto w = try_decode(code, limits, nullptr)) {
        if (is_reduced(*w) && encode_min(*w).code == code) {
          ++count;
        }
      }
      if (++pending == 4096) {
        budget.charge(pending, "count_by_cln");
        pending = 0;
      }
      bool done = true;
      for (std::size_t q = code.size(); q > 1;) {
        --q;
        if (++digits[q] < base) {
          done = false;
          break;
        }
        digits[q] = 0;
      }
      if (done) {
        break;
      }
    }
    budget.charge(pending, "count_by_cln");
    partial[first] = count;
  });
  std::uint64_t total = 0;
  for (auto c : partial) {
    total += c;
  }
  return total;
}

}  // namespace blab
