#include "doctest.h"

#include <random>

#include "sclkit/errors.hpp"
#include "sclkit/words.hpp"
#include "test_helpers.hpp"

using namespace sclkit;
using sclkit::testing::ab;

TEST_CASE("parse_word transliterates and reduces") {
  Alphabet a = ab();
  CHECK(Word::parse("abAB", a).render(a) == "abAB");
  CHECK(Word::parse("aA", a).empty());
  CHECK(Word::parse("", a).empty());
  CHECK_THROWS_AS(Word::parse("abc", a), UnknownSymbolError);
  CHECK(Word::parse("abBA", a).empty());
  CHECK(Word::parse("abBcC", Alphabet::from_list("a,b,c")).render(Alphabet::from_list("a,b,c")) ==
        "a");
}

TEST_CASE("cyclic_reduce factors conjugation") {
  Alphabet a = ab();
  auto r1 = cyclic_reduce(Word::parse("baB", a));
  CHECK(r1.word.render(a) == "a");
  CHECK(r1.conjugator.render(a) == "b");

  auto r2 = cyclic_reduce(Word::parse("abAB", a));
  CHECK(r2.word.render(a) == "abAB");
  CHECK(r2.conjugator.empty());

  auto r3 = cyclic_reduce(Word::parse("aabAA", a));
  CHECK(r3.word.render(a) == "b");
  CHECK(r3.conjugator.render(a) == "aa");

  CHECK_THROWS_AS(cyclic_reduce(Word::parse("aA", a)), EmptyWordError);
}

TEST_CASE("cyclic_reduce conjugation identity on random words") {
  Alphabet a = ab();
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::string text = sclkit::testing::random_nontrivial_word(rng, 1 + i % 9);
    Word w = Word::parse(text, a);
    CHECK(Word::parse(w.render(a), a) == w);  // parse-render round-trip
    CyclicReduction red = cyclic_reduce(w);
    CHECK(red.word.size() <= w.size());
    Word core(red.word.letters());
    CHECK(red.conjugator * core * red.conjugator.inverse() == w);
  }
}

TEST_CASE("canonical rotation is lexicographically minimal with x < x^-1") {
  Alphabet a = ab();
  CyclicWord w = cyclic_reduce(Word::parse("bABa", a)).word;
  CHECK(w.render(a) == "abAB");
  CyclicWord inv = w.inverse();
  CHECK(inv.render(a) == "aBAb");
}

TEST_CASE("primitive root extraction") {
  Alphabet a = ab();
  auto [root, k] = cyclic_reduce(Word::parse("ababab", a)).word.primitive_root();
  CHECK(root.render(a) == "ab");
  CHECK(k == 3);
  auto [r2, k2] = cyclic_reduce(Word::parse("abAB", a)).word.primitive_root();
  CHECK(k2 == 1);
}

TEST_CASE("canonicalize_chain merges conjugates, powers and inverses") {
  Alphabet a = ab();
  Chain c1 = canonicalize_chain({{"abAB", 1}, {"bABa", 1}}, a);
  REQUIRE(c1.terms().size() == 1);
  CHECK(c1.terms().begin()->first.render(a) == "abAB");
  CHECK(c1.terms().begin()->second == Rational(2));

  Chain c2 = canonicalize_chain({{"aa", Rational(1, 2)}}, a);
  REQUIRE(c2.terms().size() == 1);
  CHECK(c2.terms().begin()->first.render(a) == "a");
  CHECK(c2.terms().begin()->second == Rational(1));

  Chain c3 = canonicalize_chain({{"a", 1}, {"A", 1}}, a);
  CHECK(c3.empty());

  CHECK_THROWS_AS(canonicalize_chain({{"aA", 1}}, a), TrivialWordError);
}

TEST_CASE("canonicalize_chain is idempotent and conjugation invariant") {
  Alphabet a = ab();
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    std::string w = sclkit::testing::random_nontrivial_word(rng, 2 + i % 7);
    std::string h = sclkit::testing::random_nontrivial_word(rng, 1 + i % 5);
    Word hw = Word::parse(h, a) * Word::parse(w, a) * Word::parse(h, a).inverse();
    if (hw.empty()) continue;
    Chain direct = canonicalize_chain({{w, 1}}, a);
    Chain conj = canonicalize_chain({{hw.render(a), 1}}, a);
    std::vector<std::pair<CyclicWord, Rational>> again(direct.terms().begin(),
                                                       direct.terms().end());
    CHECK(canonicalize_terms(again, a).terms() == direct.terms());
    CHECK(direct.terms() == conj.terms());
    for (int k = 1; k <= 4; ++k) {
      std::string power;
      for (int j = 0; j < k; ++j) power += w;
      Word pw = Word::parse(power, a);
      if (pw.empty()) continue;
      Chain powered = canonicalize_chain({{power, 1}}, a);
      CHECK(powered.terms() == direct.scaled(Rational(k)).terms());
    }
  }
}

TEST_CASE("is_null_homologous checks weighted exponent sums") {
  Alphabet a = ab();
  CHECK(is_null_homologous(canonicalize_chain({{"abAB", 1}}, a)));
  CHECK_FALSE(is_null_homologous(canonicalize_chain({{"a", 1}}, a)));
  CHECK(is_null_homologous(canonicalize_chain({{"ab", 1}, {"A", 1}, {"B", 1}}, a)));
}

TEST_CASE("chain_inverse_normalize folds negatives onto inverse words") {
  Alphabet a = ab();
  Chain c = canonicalize_chain({{"abAB", -1}}, a);
  Chain n = chain_inverse_normalize(c);
  REQUIRE(n.terms().size() == 1);
  CHECK(n.terms().begin()->first.render(a) == "aBAb");
  CHECK(n.terms().begin()->second == Rational(1));

  Chain pos = canonicalize_chain({{"a", 2}}, a);
  CHECK(chain_inverse_normalize(pos).terms() == pos.terms());
  Chain empty(a);
  CHECK(chain_inverse_normalize(empty).empty());
}

TEST_CASE("is_null_homologous invariant under canonicalization detail") {
  Alphabet a = ab();
  std::mt19937 rng(13);
  for (int i = 0; i < 50; ++i) {
    Chain c = sclkit::testing::random_null_homologous_chain(rng, 8);
    CHECK(is_null_homologous(chain_inverse_normalize(c)));
  }
}

TEST_CASE("chain expression grammar") {
  Alphabet a = ab();
  Chain c = parse_chain_expression("abAB + 1/2*bb - aB", a);
  REQUIRE(c.terms().size() == 3);
  CHECK(c.terms().at(cyclic_reduce(Word::parse("abAB", a)).word) == Rational(1));
  CHECK(c.terms().at(cyclic_reduce(Word::parse("b", a)).word) == Rational(1));
  // -1 * aB stored on the smaller of (aB)^-1 = bA -> canonical rotation Ab.
  CyclicWord ab_inv = cyclic_reduce(Word::parse("aB", a)).word;
  CyclicWord key = ab_inv < ab_inv.inverse() ? ab_inv : ab_inv.inverse();
  CHECK(c.terms().count(key) == 1);

  CHECK(parse_chain_expression("a + A", a).empty());
  CHECK_THROWS_AS(parse_chain_expression("", a), ParseError);
  CHECK_THROWS_AS(parse_chain_expression("3/2*", a), ParseError);
  CHECK(parse_chain_expression("2*a - a - a", a).empty());
}
