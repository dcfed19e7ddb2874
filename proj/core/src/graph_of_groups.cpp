#include "sclkit/graph_of_groups.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sclkit/errors.hpp"
#include "sclkit/scl.hpp"

namespace sclkit {

namespace {

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& tokens,
                                            std::size_t from, const std::string& line) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    auto eq = tokens[i].find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in line: " + line);
    kv[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
  }
  return kv;
}

CyclicWord parse_attaching_word(const std::string& text, const Alphabet& alphabet,
                                const std::string& edge) {
  Word w = Word::parse(text, alphabet);
  if (w.empty()) throw TrivialAttachingWordError(edge);
  try {
    return cyclic_reduce(w).word;
  } catch (const EmptyWordError&) {
    throw TrivialAttachingWordError(edge);
  }
}

}  // namespace

GraphOfGroups GraphOfGroups::parse(const std::string& text) {
  GraphOfGroups g;
  std::istringstream in(text);
  std::string line;
  struct RawEdge {
    std::string name, from, to, wfrom, wto;
  };
  std::vector<RawEdge> raw_edges;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens[0] == "vertex") {
      if (tokens.size() < 3) throw ParseError("vertex line needs a name and gens=: " + line);
      auto kv = parse_kv(tokens, 2, line);
      if (!kv.count("gens")) throw ParseError("vertex line missing gens=: " + line);
      g.vertices_.emplace_back(tokens[1], Alphabet::from_list(kv.at("gens")));
    } else if (tokens[0] == "edge") {
      if (tokens.size() < 3) throw ParseError("edge line needs a name: " + line);
      auto kv = parse_kv(tokens, 2, line);
      for (const char* key : {"from", "to", "wfrom", "wto"})
        if (!kv.count(key)) throw ParseError(std::string("edge line missing ") + key + "=");
      raw_edges.push_back({tokens[1], kv.at("from"), kv.at("to"), kv.at("wfrom"), kv.at("wto")});
    } else {
      throw ParseError("unknown directive '" + tokens[0] + "'");
    }
  }
  if (g.vertices_.empty()) throw ParseError("graph needs at least one vertex");
  std::sort(g.vertices_.begin(), g.vertices_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i + 1 < g.vertices_.size(); ++i)
    if (g.vertices_[i].first == g.vertices_[i + 1].first)
      throw ParseError("duplicate vertex '" + g.vertices_[i].first + "'");
  std::set<char> all_gens;
  for (const auto& [name, alphabet] : g.vertices_)
    for (char c : alphabet.names())
      if (!all_gens.insert(c).second)
        throw ParseError(std::string("generator '") + c + "' used by two vertices");
  std::set<std::string> edge_names;
  for (const auto& e : raw_edges) {
    if (!edge_names.insert(e.name).second) throw ParseError("duplicate edge '" + e.name + "'");
    if (e.name.size() == 1 && all_gens.count(e.name[0]))
      throw ParseError("edge name '" + e.name + "' collides with a generator");
    if (!g.has_vertex(e.from)) throw UnknownVertexError(e.from);
    if (!g.has_vertex(e.to)) throw UnknownVertexError(e.to);
    GraphEdge edge{e.name, e.from, e.to,
                   parse_attaching_word(e.wfrom, g.alphabet_of(e.from), e.name),
                   parse_attaching_word(e.wto, g.alphabet_of(e.to), e.name)};
    g.edges_.push_back(std::move(edge));
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return a.name < b.name; });

  // Connectivity of the underlying graph.
  std::map<std::string, int> index;
  for (const auto& [name, alphabet] : g.vertices_)
    index.emplace(name, static_cast<int>(index.size()));
  std::vector<int> parent(g.vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges_) parent[find(index.at(e.from))] = find(index.at(e.to));
  std::set<int> roots;
  for (std::size_t v = 0; v < parent.size(); ++v) roots.insert(find(static_cast<int>(v)));
  if (roots.size() > 1) throw DisconnectedGraphError();
  return g;
}

const Alphabet& GraphOfGroups::alphabet_of(const std::string& vertex) const {
  for (const auto& [name, alphabet] : vertices_)
    if (name == vertex) return alphabet;
  throw UnknownVertexError(vertex);
}

bool GraphOfGroups::has_vertex(const std::string& name) const {
  return std::any_of(vertices_.begin(), vertices_.end(),
                     [&](const auto& v) { return v.first == name; });
}

const std::string& GraphOfGroups::end_vertex(int end) const {
  const GraphEdge& e = edges_[end / 2];
  return end % 2 == 0 ? e.from : e.to;
}

const CyclicWord& GraphOfGroups::end_word(int end) const {
  const GraphEdge& e = edges_[end / 2];
  return end % 2 == 0 ? e.wfrom : e.wto;
}

std::string presentation(const GraphOfGroups& g) {
  // Maximal subtree by breadth-first search from the first vertex.
  std::set<std::string> visited{g.vertices().front().first};
  std::vector<std::string> queue{g.vertices().front().first};
  std::set<std::string> tree;
  while (!queue.empty()) {
    std::string v = queue.front();
    queue.erase(queue.begin());
    for (const auto& e : g.edges()) {
      std::string other;
      if (e.from == v && !visited.count(e.to))
        other = e.to;
      else if (e.to == v && !visited.count(e.from))
        other = e.from;
      else
        continue;
      tree.insert(e.name);
      visited.insert(other);
      queue.push_back(other);
    }
  }
  std::ostringstream out;
  out << "< ";
  bool first = true;
  for (const auto& [name, alphabet] : g.vertices())
    for (char c : alphabet.names()) {
      if (!first) out << ", ";
      out << c;
      first = false;
    }
  for (const auto& e : g.edges())
    if (!tree.count(e.name)) {
      if (!first) out << ", ";
      out << e.name;
      first = false;
    }
  out << " | ";
  first = true;
  for (const auto& e : g.edges()) {
    if (!first) out << ", ";
    first = false;
    std::string wf = e.wfrom.render(g.alphabet_of(e.from));
    std::string wt = e.wto.render(g.alphabet_of(e.to));
    if (tree.count(e.name))
      out << wf << " = " << wt;
    else
      out << e.name << " " << wf << " " << e.name << "^-1 = " << wt;
  }
  out << " >";
  return out.str();
}

IntMatrix mayer_vietoris_matrix(const GraphOfGroups& g) {
  std::map<std::string, int> block;
  int rows = 0;
  for (const auto& [name, alphabet] : g.vertices()) {
    block[name] = rows;
    rows += alphabet.rank();
  }
  const int core0 = rows;
  rows += static_cast<int>(g.edges().size());
  IntMatrix m(rows, IntVector(g.num_edge_ends(), 0));
  for (int end = 0; end < g.num_edge_ends(); ++end) {
    const std::string& v = g.end_vertex(end);
    const CyclicWord& w = g.end_word(end);
    for (Letter l : w.letters())
      m[block.at(v) + generator_of(l)][end] += is_positive(l) ? 1 : -1;
    m[core0 + end / 2][end] += 1;
  }
  return m;
}

std::vector<IntVector> h2_lattice(const GraphOfGroups& g) {
  if (g.edges().empty()) return {};
  return kernel_lattice_basis(mayer_vietoris_matrix(g));
}

bool in_kernel(const GraphOfGroups& g, const std::vector<Rational>& a) {
  if (static_cast<int>(a.size()) != g.num_edge_ends()) return false;
  IntMatrix m = mayer_vietoris_matrix(g);
  for (const auto& row : m) {
    Rational sum = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (row[j] != 0) sum += Rational(row[j]) * a[j];
    if (!sum.is_zero()) return false;
  }
  return true;
}

Chain boundary_chain(const GraphOfGroups& g, const std::vector<Rational>& a,
                     const std::string& vertex) {
  if (!in_kernel(g, a)) throw NotInKernelError();
  const Alphabet& alphabet = g.alphabet_of(vertex);
  std::vector<std::pair<CyclicWord, Rational>> terms;
  for (int end = 0; end < g.num_edge_ends(); ++end) {
    if (g.end_vertex(end) != vertex || a[end].is_zero()) continue;
    terms.emplace_back(g.end_word(end), a[end]);
  }
  return canonicalize_terms(std::move(terms), alphabet);
}

Rational gt_norm(const GraphOfGroups& g, const std::vector<Rational>& a, int jobs) {
  std::vector<Chain> chains;
  for (const auto& [name, alphabet] : g.vertices())
    chains.push_back(boundary_chain(g, a, name));
  std::vector<Rational> values(chains.size());
  auto eval = [&](std::size_t i) {
    SclValue v = scl(chains[i]);
    if (v.infinite) throw Error("internal: kernel class with non-bounding vertex chain");
    values[i] = v.value;
  };
  if (jobs > 1 && chains.size() > 1) {
    std::vector<std::future<void>> tasks;
    for (std::size_t i = 0; i < chains.size(); ++i)
      tasks.push_back(std::async(std::launch::async, eval, i));
    for (auto& t : tasks) t.get();
  } else {
    for (std::size_t i = 0; i < chains.size(); ++i) eval(i);
  }
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total * Rational(4);
}

namespace {

struct RayKey {
  Integer x, y;
  bool operator<(const RayKey& o) const { return x < o.x || (x == o.x && y < o.y); }
};

RayKey primitive(Integer x, Integer y) {
  Integer g = gcd(x < 0 ? Integer(-x) : x, y < 0 ? Integer(-y) : y);
  if (g == 0) throw Error("zero ray");
  return {x / g, y / g};
}

}  // namespace

NormBallFan unit_ball_2d(const GraphOfGroups& g, const std::vector<Rational>& a1,
                         const std::vector<Rational>& a2, int max_depth) {
  if (!in_kernel(g, a1) || !in_kernel(g, a2)) throw NotInKernelError();
  {
    RationalMatrix m(2, a1.size());
    for (std::size_t j = 0; j < a1.size(); ++j) {
      m.at(0, j) = a1[j];
      m.at(1, j) = a2[j];
    }
    if (m.rank() != 2) throw IndependenceViolationError();
  }

  std::map<RayKey, Rational> cache;
  auto norm = [&](const RayKey& r) {
    auto it = cache.find(r);
    if (it != cache.end()) return it->second;
    std::vector<Rational> cls(a1.size());
    for (std::size_t j = 0; j < a1.size(); ++j)
      cls[j] = Rational(r.x) * a1[j] + Rational(r.y) * a2[j];
    Rational value = gt_norm(g, cls);
    cache.emplace(r, value);
    return value;
  };

  std::vector<RayKey> seeds = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  std::vector<RayKey> rays;
  // Subdivide cone(u, v) at the mediant until the norm is exactly additive.
  std::function<void(RayKey, RayKey, int)> refine = [&](RayKey u, RayKey v, int depth) {
    if (depth > max_depth) throw DepthExceededError();
    if (norm(u) + norm(v) == norm(primitive(u.x + v.x, u.y + v.y))) return;
    RayKey w = primitive(u.x + v.x, u.y + v.y);
    refine(u, w, depth + 1);
    rays.push_back(w);
    refine(w, v, depth + 1);
  };
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    rays.push_back(seeds[i]);
    refine(seeds[i], seeds[(i + 1) % seeds.size()], 0);
  }

  NormBallFan fan;
  for (const auto& r : rays) fan.rays.push_back({r.x, r.y, norm(r), norm(r).is_zero()});
  const int R = static_cast<int>(fan.rays.size());
  for (int i = 0; i < R; ++i) {
    const auto& u = fan.rays[i];
    const auto& v = fan.rays[(i + 1) % R];
    // Solve fx*ux + fy*uy = N(u), fx*vx + fy*vy = N(v).
    Rational det = Rational(u.x) * Rational(v.y) - Rational(u.y) * Rational(v.x);
    if (det.is_zero()) throw Error("internal: degenerate fan cone");
    Rational fx = (u.norm * Rational(v.y) - v.norm * Rational(u.y)) / det;
    Rational fy = (Rational(u.x) * v.norm - Rational(v.x) * u.norm) / det;
    fan.cones.push_back({i, (i + 1) % R, fx, fy});
    fan.unbounded = fan.unbounded || u.lineality;
  }
  for (int i = 0; i < R; ++i) {
    const auto& prev = fan.cones[(i + R - 1) % R];
    const auto& next = fan.cones[i];
    const auto& r = fan.rays[i];
    if (r.lineality) continue;
    if (prev.fx == next.fx && prev.fy == next.fy) continue;  // interior of a face
    fan.ball_vertices.emplace_back(Rational(r.x) / r.norm, Rational(r.y) / r.norm);
  }
  return fan;
}

std::string fan_to_json(const NormBallFan& fan) {
  nlohmann::json j;
  j["unbounded"] = fan.unbounded;
  j["rays"] = nlohmann::json::array();
  for (const auto& r : fan.rays)
    j["rays"].push_back({{"x", r.x.get_str()},
                         {"y", r.y.get_str()},
                         {"norm", r.norm.str()},
                         {"lineality", r.lineality}});
  j["cones"] = nlohmann::json::array();
  for (const auto& c : fan.cones)
    j["cones"].push_back(
        {{"rays", {c.ray_a, c.ray_b}}, {"fx", c.fx.str()}, {"fy", c.fy.str()}});
  j["ball_vertices"] = nlohmann::json::array();
  for (const auto& [x, y] : fan.ball_vertices)
    j["ball_vertices"].push_back({{"x", x.str()}, {"y", y.str()}});
  return j.dump(2);
}

NormBallFan fan_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  NormBallFan fan;
  fan.unbounded = j.at("unbounded");
  for (const auto& jr : j.at("rays"))
    fan.rays.push_back({Integer(jr.at("x").get<std::string>()),
                        Integer(jr.at("y").get<std::string>()),
                        Rational::parse(jr.at("norm").get<std::string>()),
                        jr.at("lineality").get<bool>()});
  for (const auto& jc : j.at("cones"))
    fan.cones.push_back({jc.at("rays")[0], jc.at("rays")[1],
                         Rational::parse(jc.at("fx").get<std::string>()),
                         Rational::parse(jc.at("fy").get<std::string>())});
  for (const auto& jv : j.at("ball_vertices"))
    fan.ball_vertices.emplace_back(Rational::parse(jv.at("x").get<std::string>()),
                                   Rational::parse(jv.at("y").get<std::string>()));
  return fan;
}

}  // namespace sclkit
