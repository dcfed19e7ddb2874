#include "sclkit/oracle.hpp"

#include <algorithm>
#include <set>

#include "sclkit/errors.hpp"

namespace sclkit {

namespace {

// Deliberately independent of the LP encoding: positions of n copies of the
// chain, an involution sigma pairing inverse letters, and polygon counting
// via cycles of p -> sigma(next(p)).
struct Enumerator {
  std::vector<Letter> letter;     // per copied position
  std::vector<int> next;          // cyclic successor within the copy
  std::vector<int> base;          // copied position -> base position
  std::vector<int> sigma;
  long examined = 0;
  long limit;
  int best_cycles = -1;
  std::vector<int> best_sigma;

  explicit Enumerator(long cap) : limit(cap) {}

  void complete() {
    ++examined;
    if (examined > limit) throw LimitExceededError("oracle enumeration cap exceeded");
    const int n = static_cast<int>(letter.size());
    std::vector<char> seen(n, 0);
    int cycles = 0;
    for (int p = 0; p < n; ++p) {
      if (seen[p]) continue;
      ++cycles;
      int q = p;
      while (!seen[q]) {
        seen[q] = 1;
        q = sigma[next[q]];
      }
    }
    if (cycles > best_cycles) {
      best_cycles = cycles;
      best_sigma = sigma;
    }
  }

  void search(int from) {
    int p = from;
    while (p < static_cast<int>(letter.size()) && sigma[p] >= 0) ++p;
    if (p == static_cast<int>(letter.size())) {
      complete();
      return;
    }
    for (int q = p + 1; q < static_cast<int>(letter.size()); ++q) {
      if (sigma[q] >= 0 || letter[q] != inverse_letter(letter[p])) continue;
      sigma[p] = q;
      sigma[q] = p;
      search(p + 1);
      sigma[p] = -1;
      sigma[q] = -1;
    }
  }
};

}  // namespace

OracleResult oracle_scl(const PositiveChain& c, int degree, long limit) {
  if (degree < 1) throw Error("oracle degree must be >= 1");
  Enumerator en(limit);
  std::vector<int> base_offset;
  {
    int off = 0;
    for (const auto& [w, coeff] : c.terms) {
      base_offset.push_back(off);
      off += static_cast<int>(w.size());
    }
  }
  for (int w = 0; w < static_cast<int>(c.terms.size()); ++w) {
    const CyclicWord& word = c.terms[w].first;
    long copies = c.terms[w].second.get_si() * degree;
    for (long copy = 0; copy < copies; ++copy) {
      int start = static_cast<int>(en.letter.size());
      for (int i = 0; i < static_cast<int>(word.size()); ++i) {
        en.letter.push_back(word.letter(i));
        en.next.push_back(start + (i + 1) % static_cast<int>(word.size()));
        en.base.push_back(base_offset[w] + i);
      }
    }
  }
  // Pairings exist only for null-homologous chains.
  {
    std::set<Letter> support(en.letter.begin(), en.letter.end());
    for (Letter l : support) {
      long a = std::count(en.letter.begin(), en.letter.end(), l);
      long b = std::count(en.letter.begin(), en.letter.end(), inverse_letter(l));
      if (a != b) throw NotNullHomologousError();
    }
  }
  en.sigma.assign(en.letter.size(), -1);
  en.search(0);
  if (en.best_cycles < 0) throw NotNullHomologousError();

  OracleResult out;
  out.pairings_examined = en.examined;
  out.best_cycles = en.best_cycles;
  const long rects = static_cast<long>(en.letter.size()) / 2;
  out.bound = Rational(Integer(rects - en.best_cycles), Integer(2 * degree));

  // Rebuild the best pairing as rectangle/polygon instances over base
  // positions, cross-checkable against the assembled surface.
  std::vector<int> rect_of(en.letter.size(), -1);
  std::vector<int> side_of(en.letter.size(), -1);
  for (int p = 0; p < static_cast<int>(en.letter.size()); ++p) {
    int q = en.best_sigma[p];
    if (p > q) continue;
    rect_of[p] = rect_of[q] = static_cast<int>(out.best_rects.size());
    // Instances store base positions in increasing order; side 0 follows the
    // smaller one.  Pairs across copies may reverse the base order.
    if (en.base[p] < en.base[q]) {
      side_of[p] = 0;
      side_of[q] = 1;
      out.best_rects.emplace_back(en.base[p], en.base[q]);
    } else {
      side_of[p] = 1;
      side_of[q] = 0;
      out.best_rects.emplace_back(en.base[q], en.base[p]);
    }
  }
  std::vector<char> seen(en.letter.size(), 0);
  for (int p = 0; p < static_cast<int>(en.letter.size()); ++p) {
    if (seen[p]) continue;
    std::vector<std::pair<int, int>> poly;
    int q = p;
    while (!seen[q]) {
      seen[q] = 1;
      poly.emplace_back(rect_of[q], side_of[q]);
      q = en.best_sigma[en.next[q]];
    }
    out.best_polygons.push_back(std::move(poly));
  }
  return out;
}

CorpusReport corpus_check(const std::vector<Chain>& chains, int n_max, long limit) {
  CorpusReport report;
  for (const auto& c : chains) {
    CorpusEntry entry;
    entry.chain = c.render();
    SclValue v = scl(c);
    if (v.infinite) throw NotNullHomologousError();
    entry.lp_value = v.value;
    Integer d;
    PositiveChain pc = to_positive_chain(c, &d);
    for (int n = 1; n <= n_max; ++n) {
      OracleResult r = oracle_scl(pc, n, limit);
      Rational bound = r.bound / Rational(d);
      entry.oracle_bounds.push_back(bound);
      if (bound < entry.lp_value) entry.dominated = false;
      if (bound == entry.lp_value && !entry.equality_degree) entry.equality_degree = n;
    }
    report.all_dominated = report.all_dominated && entry.dominated;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::vector<CyclicWord> enumerate_null_homologous_classes(const Alphabet& alphabet, int max_len) {
  std::set<CyclicWord> classes;
  const int symbols = 2 * alphabet.rank();
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> word(len, 0);
    while (true) {
      std::vector<Letter> letters(word.begin(), word.end());
      bool reduced = true;
      for (int i = 0; i < len && reduced; ++i)
        reduced = letters[i] != inverse_letter(letters[(i + 1) % len]);
      if (reduced || len == 1) {
        std::vector<int> sums(alphabet.rank(), 0);
        for (Letter l : letters) sums[generator_of(l)] += is_positive(l) ? 1 : -1;
        if (std::all_of(sums.begin(), sums.end(), [](int s) { return s == 0; }))
          classes.insert(CyclicWord(letters));
      }
      int i = len - 1;
      while (i >= 0 && word[i] == symbols - 1) word[i--] = 0;
      if (i < 0) break;
      word[i] += 1;
    }
  }
  return {classes.begin(), classes.end()};
}

}  // namespace sclkit
