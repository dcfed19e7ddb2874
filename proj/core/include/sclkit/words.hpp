#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sclkit/rational.hpp"

namespace sclkit {

// A letter is a signed generator: generator g maps to code 2g (positive)
// and 2g+1 (inverse).  The code order realizes x < x^-1 < y < y^-1 ...
using Letter = int;

inline Letter positive_letter(int gen) { return 2 * gen; }
inline Letter inverse_letter(Letter l) { return l ^ 1; }
inline int generator_of(Letter l) { return l >> 1; }
inline bool is_positive(Letter l) { return (l & 1) == 0; }

class Alphabet {
 public:
  explicit Alphabet(std::vector<char> names);
  static Alphabet from_list(const std::string& comma_separated);  // "a,b"

  int rank() const { return static_cast<int>(names_.size()); }
  char name(int gen) const { return names_[gen]; }
  bool has_char(char c) const;
  Letter letter_of_char(char c) const;  // throws UnknownSymbolError
  char char_of_letter(Letter l) const;
  const std::vector<char>& names() const { return names_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<char> names_;
};

// Freely reduced word.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);  // reduces

  static Word parse(const std::string& text, const Alphabet& alphabet);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  std::string render(const Alphabet& alphabet) const;

  Word inverse() const;
  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

 private:
  std::vector<Letter> letters_;  // no adjacent x x^-1
};

// Cyclically reduced nonempty word stored in its lexicographically minimal
// rotation; the canonical representative of a conjugacy class.
class CyclicWord {
 public:
  explicit CyclicWord(std::vector<Letter> letters);  // must be cyclically reduced

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  Letter letter(std::size_t i) const { return letters_[i]; }
  std::string render(const Alphabet& alphabet) const;

  CyclicWord inverse() const;
  CyclicWord power(int k) const;  // k >= 1

  // Largest k with *this = root^k; k = 1 iff primitive.
  std::pair<CyclicWord, int> primitive_root() const;

  friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) {
    return a.letters_ < b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  CyclicWord word;
  Word conjugator;  // input = conjugator * word * conjugator^-1
};

// Throws EmptyWordError when w reduces to the identity.
CyclicReduction cyclic_reduce(const Word& w);

// Finite rational combination of conjugacy classes.  Keys are canonical
// primitive cyclic words; no key pair (w, w^-1) coexists; coefficients are
// nonzero but may have either sign.
class Chain {
 public:
  explicit Chain(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const { return alphabet_; }
  const std::map<CyclicWord, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Chain scaled(const Rational& k) const;
  friend Chain operator+(const Chain& a, const Chain& b);

  std::string render() const;

 private:
  friend Chain canonicalize_terms(std::vector<std::pair<CyclicWord, Rational>>, const Alphabet&);
  friend Chain chain_inverse_normalize(const Chain&);
  std::map<CyclicWord, Rational> terms_;
  Alphabet alphabet_;
};

// Reduce a raw term list modulo conjugation, proper powers and inversion.
Chain canonicalize_chain(const std::vector<std::pair<std::string, Rational>>& raw,
                         const Alphabet& alphabet);
Chain canonicalize_terms(std::vector<std::pair<CyclicWord, Rational>> terms,
                         const Alphabet& alphabet);

bool is_null_homologous(const Chain& c);

// Fold negative coefficients onto inverse words; all coefficients positive.
Chain chain_inverse_normalize(const Chain& c);

// CLI chain grammar: term (+- term)*, term = [coeff '*'] word.
Chain parse_chain_expression(const std::string& text, const Alphabet& alphabet);

}  // namespace sclkit
