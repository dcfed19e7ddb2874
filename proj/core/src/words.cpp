#include "sclkit/words.hpp"

#include <algorithm>
#include <cctype>

#include "sclkit/errors.hpp"

namespace sclkit {

Alphabet::Alphabet(std::vector<char> names) : names_(std::move(names)) {
  if (names_.empty()) throw ParseError("alphabet must have positive rank");
  for (char c : names_) {
    if (!std::islower(static_cast<unsigned char>(c)))
      throw ParseError(std::string("generator name must be a lowercase letter, got '") + c + "'");
  }
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError("generator names must be distinct");
}

Alphabet Alphabet::from_list(const std::string& comma_separated) {
  std::vector<char> names;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw ParseError("empty generator name in alphabet list");
    if (cur.size() != 1) throw ParseError("generator names are single letters, got '" + cur + "'");
    names.push_back(cur[0]);
    cur.clear();
  };
  for (char c : comma_separated) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  flush();
  return Alphabet(names);
}

bool Alphabet::has_char(char c) const {
  char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::find(names_.begin(), names_.end(), lower) != names_.end();
}

Letter Alphabet::letter_of_char(char c) const {
  char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto it = std::find(names_.begin(), names_.end(), lower);
  if (it == names_.end()) throw UnknownSymbolError(c);
  int gen = static_cast<int>(it - names_.begin());
  return std::isupper(static_cast<unsigned char>(c)) ? inverse_letter(positive_letter(gen))
                                                     : positive_letter(gen);
}

char Alphabet::char_of_letter(Letter l) const {
  char c = names_[generator_of(l)];
  return is_positive(l) ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

namespace {

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == inverse_letter(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

std::vector<Letter> free_reduce(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (Letter l : in) push_reduced(out, l);
  return out;
}

bool cyclically_reduced(const std::vector<Letter>& v) {
  if (v.empty()) return false;
  if (free_reduce(v).size() != v.size()) return false;
  return v.front() != inverse_letter(v.back()) || v.size() == 1;
}

std::vector<Letter> minimal_rotation(std::vector<Letter> v) {
  std::vector<Letter> best = v;
  for (std::size_t k = 1; k < v.size(); ++k) {
    std::rotate(v.begin(), v.begin() + 1, v.end());
    if (v < best) best = v;
  }
  return best;
}

}  // namespace

Word::Word(std::vector<Letter> letters) : letters_(free_reduce(letters)) {}

Word Word::parse(const std::string& text, const Alphabet& alphabet) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(alphabet.letter_of_char(c));
  return Word(std::move(letters));
}

std::string Word::render(const Alphabet& alphabet) const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(alphabet.char_of_letter(l));
  return s;
}

Word Word::inverse() const {
  std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
  for (Letter& l : rev) l = inverse_letter(l);
  Word w;
  w.letters_ = std::move(rev);  // inverse of a reduced word is reduced
  return w;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  for (Letter l : b.letters_) push_reduced(out, l);
  Word w;
  w.letters_ = std::move(out);
  return w;
}

CyclicWord::CyclicWord(std::vector<Letter> letters) {
  if (!cyclically_reduced(letters))
    throw Error("internal: CyclicWord requires a cyclically reduced nonempty word");
  letters_ = minimal_rotation(std::move(letters));
}

std::string CyclicWord::render(const Alphabet& alphabet) const {
  std::string s;
  for (Letter l : letters_) s.push_back(alphabet.char_of_letter(l));
  return s;
}

CyclicWord CyclicWord::inverse() const {
  std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
  for (Letter& l : rev) l = inverse_letter(l);
  return CyclicWord(std::move(rev));
}

CyclicWord CyclicWord::power(int k) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() * k);
  for (int i = 0; i < k; ++i) out.insert(out.end(), letters_.begin(), letters_.end());
  return CyclicWord(std::move(out));
}

std::pair<CyclicWord, int> CyclicWord::primitive_root() const {
  // Smallest divisor period wins; equivalent to matching the word inside
  // its double at the offset.
  const std::size_t n = letters_.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool period = true;
    for (std::size_t i = 0; i + p < n && period; ++i)
      period = letters_[i] == letters_[i + p];
    if (period) {
      std::vector<Letter> root(letters_.begin(), letters_.begin() + static_cast<long>(p));
      return {CyclicWord(std::move(root)), static_cast<int>(n / p)};
    }
  }
  return {*this, 1};
}

CyclicReduction cyclic_reduce(const Word& w) {
  std::vector<Letter> v = w.letters();
  std::vector<Letter> conj;
  while (v.size() >= 2 && v.front() == inverse_letter(v.back())) {
    conj.push_back(v.front());
    v.erase(v.begin());
    v.pop_back();
  }
  if (v.empty()) throw EmptyWordError();
  // Rotating to the canonical representative conjugates by the rotated-out
  // prefix, which gets absorbed into the conjugator.
  std::vector<Letter> canonical = minimal_rotation(v);
  std::size_t shift = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    bool match = true;
    for (std::size_t i = 0; i < v.size() && match; ++i)
      match = v[(k + i) % v.size()] == canonical[i];
    if (match) {
      shift = k;
      break;
    }
  }
  conj.insert(conj.end(), v.begin(), v.begin() + static_cast<long>(shift));
  return {CyclicWord(std::move(canonical)), Word(std::move(conj))};
}

Chain canonicalize_terms(std::vector<std::pair<CyclicWord, Rational>> terms,
                         const Alphabet& alphabet) {
  Chain c(alphabet);
  for (auto& [w, coeff] : terms) {
    if (coeff.is_zero()) continue;
    auto [root, power] = w.primitive_root();
    Rational scaled = coeff * Rational(power);
    CyclicWord inv = root.inverse();
    // Store on the smaller of (w, w^-1); the inverse carries the negated
    // coefficient, realizing g^-1 = -g modulo H.
    if (inv < root) {
      root = inv;
      scaled = -scaled;
    }
    auto it = c.terms_.find(root);
    if (it == c.terms_.end()) {
      c.terms_.emplace(std::move(root), scaled);
    } else {
      it->second += scaled;
      if (it->second.is_zero()) c.terms_.erase(it);
    }
  }
  return c;
}

Chain canonicalize_chain(const std::vector<std::pair<std::string, Rational>>& raw,
                         const Alphabet& alphabet) {
  std::vector<std::pair<CyclicWord, Rational>> terms;
  terms.reserve(raw.size());
  for (const auto& [text, coeff] : raw) {
    Word w = Word::parse(text, alphabet);
    if (w.empty()) throw TrivialWordError();
    CyclicReduction red = [&] {
      try {
        return cyclic_reduce(w);
      } catch (const EmptyWordError&) {
        throw TrivialWordError();
      }
    }();
    terms.emplace_back(red.word, coeff);
  }
  return canonicalize_terms(std::move(terms), alphabet);
}

bool is_null_homologous(const Chain& c) {
  std::vector<Rational> sums(c.alphabet().rank());
  for (const auto& [w, coeff] : c.terms()) {
    for (Letter l : w.letters()) {
      sums[generator_of(l)] += is_positive(l) ? coeff : -coeff;
    }
  }
  return std::all_of(sums.begin(), sums.end(), [](const Rational& r) { return r.is_zero(); });
}

Chain chain_inverse_normalize(const Chain& c) {
  Chain out(c.alphabet());
  for (const auto& [w, coeff] : c.terms()) {
    if (coeff.sign() > 0) {
      out.terms_.emplace(w, coeff);
    } else {
      out.terms_.emplace(w.inverse(), -coeff);
    }
  }
  return out;
}

Chain Chain::scaled(const Rational& k) const {
  std::vector<std::pair<CyclicWord, Rational>> terms;
  for (const auto& [w, coeff] : terms_) terms.emplace_back(w, coeff * k);
  return canonicalize_terms(std::move(terms), alphabet_);
}

Chain operator+(const Chain& a, const Chain& b) {
  std::vector<std::pair<CyclicWord, Rational>> terms;
  for (const auto& t : a.terms()) terms.emplace_back(t);
  for (const auto& t : b.terms()) terms.emplace_back(t);
  return canonicalize_terms(std::move(terms), a.alphabet());
}

std::string Chain::render() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, coeff] : terms_) {
    Rational a = coeff.abs();
    if (first) {
      if (coeff.sign() < 0) s += "-";
      first = false;
    } else {
      s += coeff.sign() < 0 ? " - " : " + ";
    }
    if (a != Rational(1)) s += a.str() + "*";
    s += w.render(alphabet_);
  }
  return s;
}

Chain parse_chain_expression(const std::string& text, const Alphabet& alphabet) {
  std::vector<std::pair<std::string, Rational>> raw;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  if (i == text.size()) throw ParseError("empty chain expression");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  while (true) {
    skip_space();
    // term: [coeff '*'] word
    std::string num;
    std::size_t save = i;
    while (i < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
      num.push_back(text[i++]);
    skip_space();
    Rational coeff(1);
    if (!num.empty() && i < text.size() && text[i] == '*') {
      coeff = Rational::parse(num);
      ++i;
      skip_space();
    } else {
      i = save;  // no '*', the digits (if any) were not a coefficient
    }
    std::string word;
    while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i])))
      word.push_back(text[i++]);
    if (word.empty()) throw ParseError("expected a word in chain expression at offset " +
                                       std::to_string(i));
    raw.emplace_back(word, negative ? -coeff : coeff);
    skip_space();
    if (i == text.size()) break;
    if (text[i] == '+') {
      negative = false;
    } else if (text[i] == '-') {
      negative = true;
    } else {
      throw ParseError(std::string("unexpected character '") + text[i] + "' in chain expression");
    }
    ++i;
  }
  return canonicalize_chain(raw, alphabet);
}

}  // namespace sclkit
