#pragma once

// Free-group word arithmetic over a signed alphabet.
//
// A letter is a nonzero signed integer: +i is the i-th generator, -i its
// formal inverse. 0 is reserved for the identity symbol of formal words.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blab {

using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline constexpr Letter kIdentitySymbol = 0;

/// Generators x_1..x_m, optionally followed by the distinguished pair a, b
/// (encoded as m+1 and m+2).
class Alphabet {
 public:
  explicit Alphabet(int m, bool with_ab = false);

  int m() const noexcept { return m_; }
  bool has_ab() const noexcept { return with_ab_; }
  // Number of generators including a and b.
  int rank() const noexcept { return m_ + (with_ab_ ? 2 : 0); }
  Letter a() const;
  Letter b() const;

  bool contains(Letter l) const noexcept {
    return l != 0 && (l < 0 ? -l : l) <= rank();
  }
  // Positive generators, in order.
  std::vector<Letter> generators() const;
  // All signed letters: x1, X1, x2, X2, ...
  std::vector<Letter> signed_letters() const;

  std::string letter_name(Letter l) const;

  bool operator==(const Alphabet&) const = default;

 private:
  int m_;
  bool with_ab_;
};

inline Letter inverse(Letter l) noexcept { return -l; }
Word inverse(std::span<const Letter> w);

// "x1X2a" style. The empty word prints as "1".
std::string format_word(std::span<const Letter> w, const Alphabet& alphabet);
// Accepts xN, XN, a, A, b, B, and "1" (identity, dropped). Whitespace is
// ignored. Throws InvalidArgument on unknown tokens or letters outside the
// alphabet.
Word parse_word(std::string_view text, const Alphabet& alphabet);

bool is_reduced(std::span<const Letter> w) noexcept;
bool is_cyclically_reduced(std::span<const Letter> w) noexcept;

Word free_reduce(std::span<const Letter> w);

struct CyclicReduction {
  Word core;
  Word conjugator;  // conjugator * core * conjugator^-1 reduces to the input
};
CyclicReduction cyclic_reduce(std::span<const Letter> w);

struct PrimitiveRoot {
  Word root;
  std::size_t exponent = 1;
};
// Smallest period via the KMP failure function. Throws on the empty word.
PrimitiveRoot primitive_root(std::span<const Letter> w);

// Length of the shortest period of w (|w| when w has no proper period).
std::size_t smallest_period(std::span<const Letter> w);

// Words are ordered lexicographically with x1 < X1 < x2 < X2 < ...; the
// extra letters a and b follow the numbered generators.
inline int letter_rank(Letter l) { return l > 0 ? 2 * l : -2 * l + 1; }
bool word_less(std::span<const Letter> u, std::span<const Letter> v);
struct WordLess {
  bool operator()(const Word& u, const Word& v) const { return word_less(u, v); }
};

// Index of the least rotation under the word order (Booth).
std::size_t least_rotation(std::span<const Letter> w);
Word rotate(std::span<const Letter> w, std::size_t shift);

// Canonical representative of the free conjugacy class of w together with
// that of w^-1.
Word conj_class_key(std::span<const Letter> w);

bool free_conjugate(std::span<const Letter> u, std::span<const Letter> v);

// The length-prefix of A A A ...
Word periodic_word(std::span<const Letter> period, std::size_t length);

// True iff w is conjugate into the subgroup generated by `sub` (positive
// generators of `alphabet`).
bool is_conjugate_into_subalphabet(std::span<const Letter> w,
                                   std::span<const Letter> sub,
                                   const Alphabet& alphabet);

/// A random-walk label: letters plus the identity symbol 0, never reduced.
struct FormalWord {
  std::vector<Letter> symbols;

  std::size_t length() const noexcept { return symbols.size(); }
  // Group element the label evaluates to in the free group.
  Word evaluate() const;
};

std::string format_formal_word(const FormalWord& w, const Alphabet& alphabet);
FormalWord parse_formal_word(std::string_view text, const Alphabet& alphabet);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace blab
