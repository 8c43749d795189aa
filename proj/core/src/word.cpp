#include "blab/word.hpp"

#include <algorithm>
#include <cctype>

#include "blab/errors.hpp"

namespace blab {

Alphabet::Alphabet(int m, bool with_ab) : m_(m), with_ab_(with_ab) {
  if (m < 1) {
    throw InvalidArgument("alphabet needs at least one generator");
  }
}

Letter Alphabet::a() const {
  if (!with_ab_) {
    throw InvalidArgument("alphabet has no distinguished letters a, b");
  }
  return m_ + 1;
}

Letter Alphabet::b() const {
  if (!with_ab_) {
    throw InvalidArgument("alphabet has no distinguished letters a, b");
  }
  return m_ + 2;
}

std::vector<Letter> Alphabet::generators() const {
  std::vector<Letter> out;
  for (Letter i = 1; i <= rank(); ++i) {
    out.push_back(i);
  }
  return out;
}

std::vector<Letter> Alphabet::signed_letters() const {
  std::vector<Letter> out;
  for (Letter i = 1; i <= rank(); ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

std::string Alphabet::letter_name(Letter l) const {
  if (!contains(l)) {
    throw InvalidArgument("letter " + std::to_string(l) +
                          " is not in the alphabet");
  }
  const Letter g = l < 0 ? -l : l;
  if (with_ab_ && g > m_) {
    const char base = g == m_ + 1 ? 'a' : 'b';
    return std::string(1, l > 0 ? base : static_cast<char>(base - 'a' + 'A'));
  }
  return (l > 0 ? "x" : "X") + std::to_string(g);
}

Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) {
    l = -l;
  }
  return out;
}

std::string format_word(std::span<const Letter> w, const Alphabet& alphabet) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (Letter l : w) {
    out += alphabet.letter_name(l);
  }
  return out;
}

namespace {

// Shared tokenizer for words and formal words. Identity symbols are emitted
// as 0.
std::vector<Letter> tokenize(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidArgument("cannot parse word '" + std::string(text) +
                          "' at offset " + std::to_string(i) + ": " + why);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '1') {
      out.push_back(kIdentitySymbol);
      ++i;
      continue;
    }
    if (c == 'x' || c == 'X') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j == i + 1) {
        fail("generator index expected");
      }
      const auto digits = text.substr(i + 1, j - i - 1);
      if (digits.size() > 6 || digits[0] == '0') {
        fail("bad generator index");
      }
      const Letter g = std::stoi(std::string(digits));
      if (g > alphabet.m()) {
        fail("generator index exceeds alphabet size");
      }
      out.push_back(c == 'x' ? g : -g);
      i = j;
      continue;
    }
    if (c == 'a' || c == 'A' || c == 'b' || c == 'B') {
      if (!alphabet.has_ab()) {
        fail("alphabet has no letters a, b");
      }
      const Letter g = (c == 'a' || c == 'A') ? alphabet.a() : alphabet.b();
      out.push_back(std::islower(static_cast<unsigned char>(c)) ? g : -g);
      ++i;
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  return out;
}

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  auto symbols = tokenize(text, alphabet);
  std::erase(symbols, kIdentitySymbol);
  return symbols;
}

bool is_reduced(std::span<const Letter> w) noexcept {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == -w[i - 1]) {
      return false;
    }
  }
  return true;
}

bool is_cyclically_reduced(std::span<const Letter> w) noexcept {
  return is_reduced(w) && (w.size() < 2 || w.front() != -w.back());
}

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

CyclicReduction cyclic_reduce(std::span<const Letter> w) {
  const Word reduced = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = reduced.size();
  while (hi - lo >= 2 && reduced[lo] == -reduced[hi - 1]) {
    ++lo;
    --hi;
  }
  return {Word(reduced.begin() + static_cast<std::ptrdiff_t>(lo),
               reduced.begin() + static_cast<std::ptrdiff_t>(hi)),
          Word(reduced.begin(),
               reduced.begin() + static_cast<std::ptrdiff_t>(lo))};
}

std::size_t smallest_period(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n == 0) {
    return 0;
  }
  std::vector<std::size_t> fail(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) {
      k = fail[k];
    }
    if (w[i] == w[k]) {
      ++k;
    }
    fail[i + 1] = k;
  }
  return n - fail[n];
}

PrimitiveRoot primitive_root(std::span<const Letter> w) {
  if (w.empty()) {
    throw InvalidArgument("primitive_root: empty word has no root");
  }
  const std::size_t p = smallest_period(w);
  if (w.size() % p != 0) {
    return {Word(w.begin(), w.end()), 1};
  }
  return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p)),
          w.size() / p};
}

bool word_less(std::span<const Letter> u, std::span<const Letter> v) {
  return std::lexicographical_compare(
      u.begin(), u.end(), v.begin(), v.end(),
      [](Letter a, Letter b) { return letter_rank(a) < letter_rank(b); });
}

std::size_t least_rotation(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n == 0) {
    return 0;
  }
  // Booth's algorithm on the doubled string.
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const Letter sj = w[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (letter_rank(sj) <
          letter_rank(w[(k + static_cast<std::size_t>(i) + 1) % n])) {
        k = j - static_cast<std::size_t>(i) - 1;
      }
      i = f[static_cast<std::size_t>(i)];
    }
    if (sj != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
      // i == -1 here
      if (letter_rank(sj) < letter_rank(w[k % n])) {
        k = j;
      }
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

Word rotate(std::span<const Letter> w, std::size_t shift) {
  Word out(w.begin(), w.end());
  if (!out.empty()) {
    std::rotate(out.begin(),
                out.begin() + static_cast<std::ptrdiff_t>(shift % out.size()),
                out.end());
  }
  return out;
}

Word conj_class_key(std::span<const Letter> w) {
  const Word core = cyclic_reduce(w).core;
  const Word inv = inverse(core);
  Word a = rotate(core, least_rotation(core));
  Word b = rotate(inv, least_rotation(inv));
  return word_less(b, a) ? b : a;
}

bool free_conjugate(std::span<const Letter> u, std::span<const Letter> v) {
  const Word cu = cyclic_reduce(u).core;
  const Word cv = cyclic_reduce(v).core;
  if (cu.size() != cv.size()) {
    return false;
  }
  return rotate(cu, least_rotation(cu)) == rotate(cv, least_rotation(cv));
}

Word periodic_word(std::span<const Letter> period, std::size_t length) {
  if (period.empty()) {
    throw InvalidArgument("periodic_word: empty period");
  }
  Word out(length);
  for (std::size_t i = 0; i < length; ++i) {
    out[i] = period[i % period.size()];
  }
  return out;
}

bool is_conjugate_into_subalphabet(std::span<const Letter> w,
                                   std::span<const Letter> sub,
                                   const Alphabet& alphabet) {
  for (Letter g : sub) {
    if (g <= 0 || !alphabet.contains(g)) {
      throw InvalidArgument(
          "sub-alphabet must consist of positive generators of the alphabet");
    }
  }
  const Word core = cyclic_reduce(w).core;
  return std::all_of(core.begin(), core.end(), [&](Letter l) {
    return std::find(sub.begin(), sub.end(), l < 0 ? -l : l) != sub.end();
  });
}

Word FormalWord::evaluate() const {
  Word out;
  out.reserve(symbols.size());
  for (Letter l : symbols) {
    if (l == kIdentitySymbol) {
      continue;
    }
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::string format_formal_word(const FormalWord& w, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < w.symbols.size(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    out += w.symbols[i] == kIdentitySymbol ? std::string("1")
                                           : alphabet.letter_name(w.symbols[i]);
  }
  return out;
}

FormalWord parse_formal_word(std::string_view text, const Alphabet& alphabet) {
  return FormalWord{tokenize(text, alphabet)};
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a over the letter values.
  std::uint64_t h = 1469598103934665603ULL;
  for (Letter l : w) {
    h ^= static_cast<std::uint32_t>(l);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace blab
