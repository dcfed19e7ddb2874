#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sclkit/errors.hpp"
#include "sclkit/gluing.hpp"
#include "sclkit/graph_of_groups.hpp"
#include "sclkit/oracle.hpp"
#include "sclkit/scl.hpp"
#include "sclkit/surface.hpp"

namespace {

using namespace sclkit;

constexpr int kExitParse = 2;
constexpr int kExitInfinite = 3;
constexpr int kExitNotInKernel = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Class literals: "e1.from=1,e1.to=-1"; unnamed ends default to zero.
std::vector<Rational> parse_class(const GraphOfGroups& g, const std::string& text) {
  std::vector<Rational> a(g.num_edge_ends(), Rational(0));
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    auto dot = item.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ParseError("bad class literal '" + item + "' (want edge.end=value)");
    std::string edge = item.substr(0, dot);
    std::string end = item.substr(dot + 1, eq - dot - 1);
    Rational value = Rational::parse(item.substr(eq + 1));
    int idx = -1;
    for (std::size_t e = 0; e < g.edges().size(); ++e)
      if (g.edges()[e].name == edge) idx = static_cast<int>(e);
    if (idx < 0) throw ParseError("unknown edge '" + edge + "' in class literal");
    if (end == "from")
      a[2 * idx] = value;
    else if (end == "to")
      a[2 * idx + 1] = value;
    else
      throw ParseError("end must be 'from' or 'to' in class literal");
  }
  return a;
}

std::string render_class(const GraphOfGroups& g, const IntVector& v) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    for (int side = 0; side < 2; ++side) {
      const Integer& x = v[2 * e + side];
      if (x == 0) continue;
      if (!first) out << ", ";
      out << g.edges()[e].name << "." << (side == 0 ? "from" : "to") << "=" << x.get_str();
      first = false;
    }
  }
  if (first) out << "0";
  return out.str();
}

std::vector<Rational> resolve_class(const GraphOfGroups& g,
                                    const std::vector<std::string>& literals,
                                    const std::vector<int>& basis_indices) {
  std::vector<std::vector<Rational>> classes;
  for (const auto& text : literals) classes.push_back(parse_class(g, text));
  if (!basis_indices.empty()) {
    auto basis = h2_lattice(g);
    for (int k : basis_indices) {
      if (k < 0 || k >= static_cast<int>(basis.size()))
        throw ParseError("class basis index " + std::to_string(k) + " out of range (rank " +
                         std::to_string(basis.size()) + ")");
      classes.emplace_back(basis[k].begin(), basis[k].end());
    }
  }
  if (classes.size() != 1) throw ParseError("expected exactly one class");
  return classes.front();
}

int cmd_scl(const std::string& gens, const std::string& expr, bool json, bool full_surface) {
  Alphabet alphabet = Alphabet::from_list(gens);
  Chain chain = parse_chain_expression(expr, alphabet);
  if (!is_null_homologous(chain)) {
    if (json)
      std::cout << nlohmann::json{{"infinite", true}}.dump(2) << "\n";
    else
      std::cout << "scl = infinity (not null-homologous)\n";
    return kExitInfinite;
  }
  if (chain.empty()) {
    if (json)
      std::cout << nlohmann::json{{"infinite", false}, {"scl", "0"}}.dump(2) << "\n";
    else
      std::cout << "scl = 0\ntrivial chain: empty extremal surface\n";
    return 0;
  }
  Integer d;
  PositiveChain pc = to_positive_chain(chain, &d);
  SclProblem problem = SclProblem::build(pc);
  SclResult res = solve_scl(problem);
  Rational value = res.value / Rational(d);
  CombinatorialSurface surface = assemble(problem, res.extremal);
  Integer degree = res.extremal.degree * d;
  if (json) {
    nlohmann::json j;
    j["infinite"] = false;
    j["scl"] = value.str();
    j["dual_value"] = value.str();
    j["dual_certified"] = res.dual_certified;
    j["extremal"] = {{"degree", degree.get_str()},
                     {"chi", surface.euler_characteristic()},
                     {"boundary_components", surface.boundary().size()}};
    if (full_surface) j["surface"] = nlohmann::json::parse(surface_to_json(surface));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "scl = " << value.str() << "\n";
    std::cout << "dual certificate: value " << value.str()
              << (res.dual_certified ? " (certified)" : " (UNCERTIFIED)") << "\n";
    auto comps = surface.components();
    std::cout << "extremal surface: chi = " << surface.euler_characteristic()
              << ", degree n = " << degree.get_str()
              << ", boundary components = " << surface.boundary().size()
              << ", components = " << comps.size() << "\n";
    for (const auto& c : comps)
      std::cout << "  component: chi = " << c.chi << ", genus = " << c.genus
                << ", boundary = " << c.boundary_count << "\n";
  }
  return 0;
}

int cmd_surface(const std::string& gens, const std::string& expr, bool json) {
  Alphabet alphabet = Alphabet::from_list(gens);
  Chain chain = parse_chain_expression(expr, alphabet);
  if (!is_null_homologous(chain)) {
    std::cout << "scl = infinity (not null-homologous)\n";
    return kExitInfinite;
  }
  if (chain.empty()) {
    std::cout << (json ? "{}\n" : "trivial chain: empty surface\n");
    return 0;
  }
  PositiveChain pc = to_positive_chain(chain);
  SclProblem problem = SclProblem::build(pc);
  SclResult res = solve_scl(problem);
  CombinatorialSurface surface = assemble(problem, res.extremal);
  if (json) {
    std::cout << surface_to_json(surface) << "\n";
  } else {
    std::cout << "extremal surface for " << chain.render()
              << ": chi = " << surface.euler_characteristic()
              << ", degree n = " << res.extremal.degree.get_str() << "\n";
    for (const auto& bc : surface.boundary())
      std::cout << "  boundary: word " << surface.words()[bc.word].text << ", degree "
                << bc.degree << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& gens, const std::string& expr, int degree, long limit,
               int corpus_maxlen, bool json) {
  Alphabet alphabet = Alphabet::from_list(gens);
  if (corpus_maxlen > 0) {
    std::vector<Chain> chains;
    for (const auto& w : enumerate_null_homologous_classes(alphabet, corpus_maxlen))
      chains.push_back(canonicalize_terms({{w, Rational(1)}}, alphabet));
    CorpusReport report = corpus_check(chains, degree, limit);
    if (json) {
      nlohmann::json j;
      j["all_dominated"] = report.all_dominated;
      j["entries"] = nlohmann::json::array();
      for (const auto& e : report.entries) {
        nlohmann::json bounds = nlohmann::json::array();
        for (const auto& b : e.oracle_bounds) bounds.push_back(b.str());
        j["entries"].push_back({{"chain", e.chain},
                                {"scl", e.lp_value.str()},
                                {"oracle_bounds", bounds},
                                {"dominated", e.dominated},
                                {"equality_degree",
                                 e.equality_degree ? nlohmann::json(*e.equality_degree)
                                                   : nlohmann::json(nullptr)}});
      }
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& e : report.entries) {
        std::cout << e.chain << ": scl = " << e.lp_value.str() << ", oracle bounds:";
        for (const auto& b : e.oracle_bounds) std::cout << " " << b.str();
        if (e.equality_degree) std::cout << " (equality at degree " << *e.equality_degree << ")";
        std::cout << "\n";
      }
      std::cout << (report.all_dominated ? "all oracle bounds dominate the LP values\n"
                                         : "DOMINANCE VIOLATION\n");
    }
    return report.all_dominated ? 0 : 1;
  }
  if (expr.empty()) throw ParseError("oracle needs a chain or --corpus-maxlen");
  Chain chain = parse_chain_expression(expr, alphabet);
  Integer d;
  PositiveChain pc = to_positive_chain(chain, &d);
  OracleResult r = oracle_scl(pc, degree, limit);
  Rational bound = r.bound / Rational(d);
  if (json) {
    std::cout << nlohmann::json{{"bound", bound.str()},
                                {"degree", degree},
                                {"pairings_examined", r.pairings_examined}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "oracle bound = " << bound.str() << " at degree " << degree << " ("
              << r.pairings_examined << " pairings examined)\n";
  }
  return 0;
}

int cmd_h2(const std::string& file, bool json) {
  GraphOfGroups g = GraphOfGroups::parse(read_file(file));
  auto basis = h2_lattice(g);
  if (json) {
    nlohmann::json j;
    j["rank"] = basis.size();
    j["basis"] = nlohmann::json::array();
    for (const auto& v : basis) {
      nlohmann::json vec = nlohmann::json::array();
      for (const auto& x : v) vec.push_back(x.get_str());
      j["basis"].push_back(vec);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "H2 rank = " << basis.size() << "\n";
    for (std::size_t k = 0; k < basis.size(); ++k)
      std::cout << "basis[" << k << "]: " << render_class(g, basis[k]) << "\n";
  }
  return 0;
}

int cmd_norm(const std::string& file, const std::vector<std::string>& class_literals,
             const std::vector<int>& basis_indices, int jobs, bool json) {
  GraphOfGroups g = GraphOfGroups::parse(read_file(file));
  std::vector<Rational> a = resolve_class(g, class_literals, basis_indices);
  Rational n = gt_norm(g, a, jobs);
  if (json)
    std::cout << nlohmann::json{{"norm", n.str()}}.dump(2) << "\n";
  else
    std::cout << "norm = " << n.str() << "\n";
  return 0;
}

int cmd_ball(const std::string& file, const std::vector<std::string>& class_literals,
             const std::vector<int>& basis_indices, int depth, bool json) {
  GraphOfGroups g = GraphOfGroups::parse(read_file(file));
  std::vector<std::vector<Rational>> classes;
  for (const auto& text : class_literals) classes.push_back(parse_class(g, text));
  if (!basis_indices.empty()) {
    auto basis = h2_lattice(g);
    for (int k : basis_indices) {
      if (k < 0 || k >= static_cast<int>(basis.size()))
        throw ParseError("class basis index out of range");
      classes.emplace_back(basis[k].begin(), basis[k].end());
    }
  }
  if (classes.size() != 2) throw ParseError("ball needs exactly two classes");
  NormBallFan fan = unit_ball_2d(g, classes[0], classes[1], depth);
  if (json) {
    std::cout << fan_to_json(fan) << "\n";
    return 0;
  }
  std::cout << "fan rays (x, y, norm):\n";
  for (const auto& r : fan.rays)
    std::cout << "  (" << r.x.get_str() << ", " << r.y.get_str() << ")  N = " << r.norm.str()
              << (r.lineality ? "  [lineality]" : "") << "\n";
  if (fan.unbounded) {
    std::cout << "ball: unbounded (pseudo-norm with lineality directions)\n";
  } else {
    std::cout << "ball vertices:\n";
    for (const auto& [x, y] : fan.ball_vertices)
      std::cout << "  (" << x.str() << ", " << y.str() << ")\n";
  }
  return 0;
}

int cmd_glue(const std::string& file, const std::vector<std::string>& class_literals,
             const std::vector<int>& basis_indices, bool json, bool plan) {
  GraphOfGroups g = GraphOfGroups::parse(read_file(file));
  std::vector<Rational> a = resolve_class(g, class_literals, basis_indices);
  GlueOutcome out = build_closed_surface(g, a);
  if (plan) {
    std::cout << out.plan;
    return 0;
  }
  if (json) {
    std::cout << glue_outcome_to_json(out) << "\n";
    return 0;
  }
  switch (out.kind) {
    case GlueOutcome::Kind::closed: {
      const auto& r = *out.closed;
      std::cout << "closed surface:";
      for (const auto& c : r.components) std::cout << " genus " << c.genus << ",";
      std::cout << " n = " << r.n.get_str() << ", certificate "
                << (r.certificate_ok ? "OK" : "FAIL") << " (" << r.certificate_lhs.str()
                << " = " << r.certificate_rhs.str() << ")\n";
      break;
    }
    case GlueOutcome::Kind::witness:
      std::cout << "witness: " << (out.witness->zxz() ? "Z x Z" : "Baumslag-Solitar") << " BS("
                << out.witness->p.get_str() << "," << out.witness->q.get_str() << ") at edge "
                << out.witness->edge << "\n"
                << out.witness->explanation << "\n";
      break;
    case GlueOutcome::Kind::norm_zero:
      std::cout << "norm zero: the class has vanishing Gromov-Thurston norm; "
                   "no extremal gluing is attempted\n";
      break;
  }
  return 0;
}

int cmd_present(const std::string& file) {
  std::cout << presentation(GraphOfGroups::parse(read_file(file))) << "\n";
  return 0;
}

int cmd_check(unsigned seed, int sizes, long limit, bool self_test_fail) {
  if (sizes <= 0) {
    std::cout << "check: nothing to do\n";
    return 0;
  }
  std::mt19937 rng(seed);
  Alphabet alphabet = Alphabet::from_list("a,b");
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      std::cout << "FAIL: " << what << "\n";
    }
  };
  auto random_word = [&](int n) {
    static const char* sym = "abAB";
    std::uniform_int_distribution<int> d(0, 3);
    std::string s;
    for (int i = 0; i < n; ++i) s.push_back(sym[d(rng)]);
    return s;
  };
  std::uniform_int_distribution<int> len(2, 6);
  int done = 0;
  Chain previous(alphabet);
  while (done < sizes) {
    std::vector<std::pair<std::string, Rational>> raw;
    raw.emplace_back(random_word(len(rng)), Rational(1 + done % 2));
    if (done % 2) raw.emplace_back(random_word(len(rng)), Rational(1));
    Chain c(alphabet);
    try {
      c = canonicalize_chain(raw, alphabet);
    } catch (const Error&) {
      continue;
    }
    if (c.empty() || !is_null_homologous(c)) continue;
    ++done;
    SclValue base = scl(c);
    expect(!base.infinite && base.value >= Rational(0), "scl nonnegative on " + c.render());
    for (int k = 2; k <= 3; ++k)
      expect(scl(c.scaled(Rational(k))).value == base.value * Rational(k),
             "homogeneity x" + std::to_string(k) + " on " + c.render());
    std::vector<std::pair<std::string, Rational>> conj;
    for (const auto& [w, coeff] : c.terms()) {
      Word h = Word::parse(random_word(2), alphabet);
      conj.emplace_back((h * Word(w.letters()) * h.inverse()).render(alphabet), coeff);
    }
    try {
      expect(scl(canonicalize_chain(conj, alphabet)).value == base.value,
             "conjugacy invariance on " + c.render());
    } catch (const TrivialWordError&) {
    }
    std::vector<std::pair<CyclicWord, Rational>> inv;
    for (const auto& [w, coeff] : c.terms()) inv.emplace_back(w.inverse(), coeff);
    expect(scl(canonicalize_terms(inv, alphabet)).value == base.value,
           "inverse symmetry on " + c.render());
    // Subadditivity against the previous chain.
    if (!previous.empty())
      expect(scl(c + previous).value <= base.value + scl(previous).value,
             "subadditivity on " + c.render() + " + " + previous.render());
    previous = c;
    Integer d;
    PositiveChain pc = to_positive_chain(c, &d);
    try {
      OracleResult o = oracle_scl(pc, 1, limit);
      expect(o.bound / Rational(d) >= base.value, "oracle dominance on " + c.render());
    } catch (const LimitExceededError&) {
    }
  }
  if (self_test_fail) expect(false, "deliberate self-test failure");
  std::cout << (failures ? "check: FAILURES = " + std::to_string(failures)
                         : "check: all property suites passed")
            << " (seed " << seed << ", sizes " << sizes << ")\n";
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact stable commutator length, Gromov-Thurston norms and surface gluing "
               "for graphs of free groups amalgamated over cyclic subgroups"};
  app.require_subcommand(1);

  std::string gens = "a,b", expr, file;
  std::vector<std::string> class_literals;
  std::vector<int> basis_indices;
  bool json = false, full = false, plan = false, self_test_fail = false;
  int degree = 1, depth = 64, jobs = 1, sizes = 25, corpus_maxlen = 0;
  long limit = 10000000;
  unsigned seed = 1;

  auto* s_scl = app.add_subcommand("scl", "exact scl of a chain");
  s_scl->add_option("--gens", gens, "alphabet, e.g. a,b");
  s_scl->add_option("chain", expr, "chain expression, e.g. \"abAB + 1/2*bb\"")->required();
  s_scl->add_flag("--json", json);
  s_scl->add_flag("--surface", full, "include the extremal surface in --json output");

  auto* s_surface = app.add_subcommand("surface", "extremal surface of a chain");
  s_surface->add_option("--gens", gens);
  s_surface->add_option("chain", expr)->required();
  s_surface->add_flag("--json", json);

  auto* s_oracle = app.add_subcommand("oracle", "brute-force normal-form upper bound");
  s_oracle->add_option("--gens", gens);
  s_oracle->add_option("chain", expr);
  s_oracle->add_option("--degree", degree);
  s_oracle->add_option("--limit", limit);
  s_oracle->add_option("--corpus-maxlen", corpus_maxlen,
                       "run the exhaustive word corpus up to this length instead");
  s_oracle->add_flag("--json", json);

  auto* s_h2 = app.add_subcommand("h2", "H2 kernel lattice of a graph of groups");
  s_h2->add_option("file", file)->required();
  s_h2->add_flag("--json", json);

  auto* s_norm = app.add_subcommand("norm", "Gromov-Thurston norm of a class");
  s_norm->add_option("file", file)->required();
  s_norm->add_option("--class", class_literals);
  s_norm->add_option("--class-basis", basis_indices);
  s_norm->add_option("--jobs", jobs);
  s_norm->add_flag("--json", json);

  auto* s_ball = app.add_subcommand("ball", "2d unit ball fan");
  s_ball->add_option("file", file)->required();
  s_ball->add_option("--class", class_literals);
  s_ball->add_option("--class-basis", basis_indices);
  s_ball->add_option("--depth", depth);
  s_ball->add_flag("--json", json);

  auto* s_glue = app.add_subcommand("glue", "closed surface from the gluing construction");
  s_glue->add_option("file", file)->required();
  s_glue->add_option("--class", class_literals);
  s_glue->add_option("--class-basis", basis_indices);
  s_glue->add_flag("--json", json);
  s_glue->add_flag("--plan", plan, "print the dry-run construction log");

  auto* s_present = app.add_subcommand("present", "presentation of the fundamental group");
  s_present->add_option("file", file)->required();

  auto* s_check = app.add_subcommand("check", "randomized property suites");
  s_check->add_option("--seed", seed);
  s_check->add_option("--sizes", sizes);
  s_check->add_option("--limit", limit);
  s_check->add_flag("--self-test-fail", self_test_fail)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (s_scl->parsed()) return cmd_scl(gens, expr, json, full);
    if (s_surface->parsed()) return cmd_surface(gens, expr, json);
    if (s_oracle->parsed()) return cmd_oracle(gens, expr, degree, limit, corpus_maxlen, json);
    if (s_h2->parsed()) return cmd_h2(file, json);
    if (s_norm->parsed()) return cmd_norm(file, class_literals, basis_indices, jobs, json);
    if (s_ball->parsed()) return cmd_ball(file, class_literals, basis_indices, depth, json);
    if (s_glue->parsed()) return cmd_glue(file, class_literals, basis_indices, json, plan);
    if (s_present->parsed()) return cmd_present(file);
    if (s_check->parsed()) return cmd_check(seed, sizes, limit, self_test_fail);
  } catch (const NotInKernelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotInKernel;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
