#pragma once

// Periodic-run compression codes: a word is written as plain segments and
// blocks "0 A bin(|W|)" standing for an A-periodic run W. cln(W) is the
// shortest such code.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blab/census.hpp"
#include "blab/word.hpp"

namespace blab {

/// One symbol of a code: a letter of the word alphabet or a binary digit.
class CodeSymbol {
 public:
  static CodeSymbol letter(Letter l) { return CodeSymbol(l, 0); }
  static CodeSymbol digit(int bit) { return CodeSymbol(0, bit ? 1 : 0); }

  bool is_digit() const noexcept { return letter_ == 0; }
  Letter as_letter() const noexcept { return letter_; }
  int as_digit() const noexcept { return bit_; }

  bool operator==(const CodeSymbol&) const = default;

 private:
  CodeSymbol(Letter l, int bit) : letter_(l), bit_(bit) {}
  Letter letter_;
  int bit_;
};

using CodeString = std::vector<CodeSymbol>;

struct PeriodicRun {
  Word period;
  std::size_t length = 0;
};

/// W = V_0 W_1 V_1 ... W_k V_k; plains.size() == runs.size() + 1.
struct Factorization {
  std::vector<Word> plains;
  std::vector<PeriodicRun> runs;

  Word concatenate() const;
  std::size_t code_length() const;
};

// 1 + |A| + bit length of |W|.
std::size_t pcode_length(std::size_t period_length, std::size_t run_length);
std::size_t bit_length(std::uint64_t v) noexcept;

enum class PcodeFault {
  kNone,
  kEmptyWord,
  kNotPeriodic,
  kPeriodTooLong,
  kPeriodImprimitive,
  kPeriodNotCyclicallyReduced,
};

const char* describe(PcodeFault fault);
PcodeFault check_pcode(std::span<const Letter> period,
                       std::span<const Letter> w);

// Throws InvalidArgument naming the fault when the preconditions fail.
CodeString pcode(std::span<const Letter> period, std::span<const Letter> w);

CodeString code_of(const Factorization& f);

struct Encoding {
  CodeString code;
  Factorization factorization;
  std::size_t cln = 0;
  bool input_reduced = true;
};

// Minimal code by a prefix DP over "plain letter" and "close a periodic run
// with its smallest period" transitions.
Encoding encode_min(std::span<const Letter> w);
std::size_t code_length_min(std::span<const Letter> w);

struct DecodeOptions {
  // Refuse codes that expand beyond this many letters.
  std::uint64_t max_length = std::uint64_t{1} << 28;
};

// Backward parse. Throws DecodeError on malformed input.
Word decode(const CodeString& code, const DecodeOptions& options = {});

// Text form: letters in word syntax, digits as '0'/'1', a space wherever the
// symbol kind changes ("0 x1x2 10000").
std::string format_code(const CodeString& code, const Alphabet& alphabet);

struct ParsedCode {
  CodeString code;
  std::vector<std::size_t> byte_offsets;  // per symbol
};
ParsedCode parse_code(std::string_view text, const Alphabet& alphabet);

// Reduced words over m generators with cln exactly k, found by decoding
// every code string of length k.
std::uint64_t count_by_cln(int m, int k, const CensusOptions& options = {});

}  // namespace blab
