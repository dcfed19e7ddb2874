#pragma once

#include <random>
#include <string>
#include <vector>

#include "sclkit/words.hpp"

namespace sclkit::testing {

inline Alphabet ab() { return Alphabet::from_list("a,b"); }

inline std::string random_word_text(std::mt19937& rng, int len, int rank = 2) {
  static const char* lower = "abcdefgh";
  static const char* upper = "ABCDEFGH";
  std::uniform_int_distribution<int> gen(0, 2 * rank - 1);
  std::string s;
  for (int i = 0; i < len; ++i) {
    int g = gen(rng);
    s.push_back(g < rank ? lower[g] : upper[g - rank]);
  }
  return s;
}

// Random nonempty cyclically reducible word (rejection sampled).
inline std::string random_nontrivial_word(std::mt19937& rng, int len, int rank = 2) {
  while (true) {
    std::string s = random_word_text(rng, len, rank);
    try {
      Word w = Word::parse(s, rank == 2 ? ab() : Alphabet::from_list("a,b,c"));
      if (!w.empty()) return s;
    } catch (...) {
    }
  }
}

// Random null-homologous chain over <a,b> with total length <= max_total.
inline Chain random_null_homologous_chain(std::mt19937& rng, int max_total) {
  Alphabet alphabet = ab();
  std::uniform_int_distribution<int> nterms(1, 2);
  std::uniform_int_distribution<int> coeff(1, 2);
  while (true) {
    int terms = nterms(rng);
    std::vector<std::pair<std::string, Rational>> raw;
    int total = 0;
    for (int t = 0; t < terms; ++t) {
      std::uniform_int_distribution<int> len(2, std::max(2, max_total - total - 2 * (terms - t - 1)));
      int l = len(rng);
      raw.emplace_back(random_nontrivial_word(rng, l), Rational(coeff(rng)));
      total += l;
    }
    try {
      Chain c = canonicalize_chain(raw, alphabet);
      if (!c.empty() && is_null_homologous(c)) return c;
    } catch (...) {
    }
  }
}

}  // namespace sclkit::testing
