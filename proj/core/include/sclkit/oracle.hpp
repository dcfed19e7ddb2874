#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sclkit/scl.hpp"
#include "sclkit/words.hpp"

namespace sclkit {

// Best bounded-degree normal-form surface found by exhausting fixed-point
// free involutions that pair inverse letters of n formal copies of a chain.
struct OracleResult {
  Rational bound;           // min over pairings of (#rect - #cycles) / (2n)
  long pairings_examined = 0;
  // Best pairing in the form assemble_instances consumes (base positions).
  std::vector<std::pair<int, int>> best_rects;
  std::vector<std::vector<std::pair<int, int>>> best_polygons;
  int best_cycles = 0;
};

OracleResult oracle_scl(const PositiveChain& c, int degree, long limit = 10000000);

struct CorpusEntry {
  std::string chain;
  Rational lp_value;
  std::vector<Rational> oracle_bounds;  // per degree 1..n_max
  bool dominated = true;                // every bound >= lp value
  std::optional<int> equality_degree;   // smallest degree attaining the LP value
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;
  bool all_dominated = true;
};

CorpusReport corpus_check(const std::vector<Chain>& chains, int n_max, long limit = 10000000);

// All null-homologous cyclically reduced conjugacy classes of length <= max_len.
std::vector<CyclicWord> enumerate_null_homologous_classes(const Alphabet& alphabet, int max_len);

}  // namespace sclkit
