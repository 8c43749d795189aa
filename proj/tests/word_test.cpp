#include <doctest.h>

#include <random>

#include "blab/errors.hpp"
#include "blab/word.hpp"
#include "oracles.hpp"

using namespace blab;

namespace {

const Alphabet kA2(2);
const Alphabet kA3(3);

Word w2(const char* text) { return parse_word(text, kA2); }
Word w3(const char* text) { return parse_word(text, kA3); }

}  // namespace

TEST_CASE("parse and format round trip") {
  CHECK(format_word(w3("x1X2x3"), kA3) == "x1X2x3");
  CHECK(format_word(Word{}, kA2) == "1");
  CHECK(w2("1").empty());
  CHECK(w2(" x1  x2 ") == Word{1, 2});
  CHECK_THROWS_AS(w2("x3"), InvalidArgument);
  CHECK_THROWS_AS(w2("y1"), InvalidArgument);

  const Alphabet ab(1, true);
  CHECK(parse_word("aBx1", ab) == Word{2, -3, 1});
  CHECK(format_word(Word{2, -3, 1}, ab) == "aBx1");
  CHECK_THROWS_AS(parse_word("a", kA2), InvalidArgument);
}

TEST_CASE("free reduction") {
  CHECK(free_reduce(w2("x1X1")).empty());
  CHECK(free_reduce(w3("x1x2X2x3")) == w3("x1x3"));
  CHECK(free_reduce(w2("x1x2")) == w2("x1x2"));
  CHECK(free_reduce(w2("x1x2X2X1x2")) == w2("x2"));

  std::mt19937 gen(7);
  std::uniform_int_distribution<int> pick(0, 3);
  const auto letters = oracle::letters(2);
  for (int trial = 0; trial < 2000; ++trial) {
    Word w;
    const int len = trial % 17;
    for (int i = 0; i < len; ++i) {
      w.push_back(letters[pick(gen)]);
    }
    const Word r = free_reduce(w);
    CHECK(r == oracle::naive_reduce(w));
    CHECK(free_reduce(r) == r);
    CHECK(is_reduced(r));
  }
}

TEST_CASE("cyclic reduction") {
  auto check = [](const char* in, const char* core, const char* conj) {
    const CyclicReduction c = cyclic_reduce(w3(in));
    CHECK(c.core == w3(core));
    CHECK(c.conjugator == w3(conj));
  };
  check("x1x2X1", "x2", "x1");
  check("x2x1", "x2x1", "1");
  check("x1x2x2X1", "x2x2", "x1");

  oracle::all_reduced(2, 7, [](const Word& w) {
    const CyclicReduction c = cyclic_reduce(w);
    CHECK(is_cyclically_reduced(c.core));
    Word back = c.conjugator;
    back.insert(back.end(), c.core.begin(), c.core.end());
    const Word inv = inverse(c.conjugator);
    back.insert(back.end(), inv.begin(), inv.end());
    CHECK(free_reduce(back) == w);
  });
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(w2("x1x2x1x2x1x2")).root == w2("x1x2"));
  CHECK(primitive_root(w2("x1x2x1x2x1x2")).exponent == 3);
  CHECK(primitive_root(w2("x1")).exponent == 1);
  CHECK(primitive_root(w2("x1x2x1x2x1")).exponent == 1);
  CHECK_THROWS_AS(primitive_root(Word{}), InvalidArgument);

  for (int r = 1; r <= 8; ++r) {
    oracle::all_sequences(2, r, [](const Word& w) {
      const auto [root, e] = oracle::root(w);
      const PrimitiveRoot pr = primitive_root(w);
      CHECK(pr.root == root);
      CHECK(pr.exponent == e);
    });
  }
}

TEST_CASE("least rotation matches brute force") {
  for (int r = 1; r <= 8; ++r) {
    oracle::all_sequences(2, r, [](const Word& w) {
      CHECK(rotate(w, least_rotation(w)) == oracle::min_rotation(w));
    });
  }
}

TEST_CASE("class keys identify conjugacy up to inversion") {
  CHECK(free_conjugate(w2("x1x2"), w2("x2x1")));
  CHECK_FALSE(free_conjugate(w2("x1"), w2("x2")));
  CHECK(free_conjugate(w2("x1x2X1"), w2("x2")));
  CHECK(conj_class_key(w2("X1")) == w2("x1"));

  for (int r = 0; r <= 7; ++r) {
    oracle::all_reduced(2, r, [](const Word& w) {
      CHECK(conj_class_key(w) == oracle::class_key(w));
    });
  }
  // Conjugacy without inversion: x1x2 and X2X1 share a key but are not
  // conjugate.
  CHECK(conj_class_key(w2("x1x2")) == conj_class_key(w2("X2X1")));
  CHECK_FALSE(free_conjugate(w2("x1x2"), w2("X2X1")));
}

TEST_CASE("periodic words") {
  CHECK(periodic_word(w2("x1x2"), 5) == w2("x1x2x1x2x1"));
  CHECK(periodic_word(w2("x1"), 3) == w2("x1x1x1"));
  CHECK(periodic_word(w2("x1X2"), 4) == w2("x1X2x1X2"));
  CHECK_THROWS_AS(periodic_word(Word{}, 3), InvalidArgument);
}

TEST_CASE("conjugate into a sub-alphabet") {
  const Alphabet ab(1, true);
  const std::vector<Letter> sub{ab.a(), ab.b()};
  CHECK(is_conjugate_into_subalphabet(parse_word("x1aBX1", ab), sub, ab));
  CHECK_FALSE(is_conjugate_into_subalphabet(parse_word("x1a", ab), sub, ab));
  CHECK(is_conjugate_into_subalphabet(Word{}, sub, ab));
}

TEST_CASE("formal words") {
  const FormalWord f = parse_formal_word("x1 1 X1 x2", kA2);
  CHECK(f.length() == 4);
  CHECK(f.symbols[1] == kIdentitySymbol);
  CHECK(f.evaluate() == w2("x2"));
  CHECK(format_formal_word(f, kA2) == "x1 1 X1 x2");
}
