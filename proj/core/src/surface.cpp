#include "sclkit/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "sclkit/errors.hpp"
#include "sclkit/linalg.hpp"

namespace sclkit {

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

std::pair<int, int> step_endpoints(const SurfaceEdge& e, bool forward) {
  return forward ? std::pair{e.tail, e.head} : std::pair{e.head, e.tail};
}

}  // namespace

CombinatorialSurface::CombinatorialSurface(int vertices, std::vector<SurfaceEdge> edges,
                                           std::vector<SurfaceFace> faces,
                                           std::vector<SurfaceWord> words)
    : vertices_(vertices),
      edges_(std::move(edges)),
      faces_(std::move(faces)),
      words_(std::move(words)) {
  validate_and_trace();
}

void CombinatorialSurface::validate_and_trace() {
  incidences_.assign(edges_.size(), {});
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    const auto& walk = faces_[f].walk;
    if (walk.empty()) throw Error("face with empty walk");
    for (int k = 0; k < static_cast<int>(walk.size()); ++k) {
      const WalkStep& s = walk[k];
      if (s.edge < 0 || s.edge >= static_cast<int>(edges_.size()))
        throw Error("face walk references a missing edge");
      auto [from, to] = step_endpoints(edges_[s.edge], s.forward);
      const WalkStep& nxt = walk[(k + 1) % walk.size()];
      auto [nfrom, nto] = step_endpoints(edges_[nxt.edge], nxt.forward);
      (void)from;
      (void)nto;
      if (to != nfrom) throw Error("face walk is not a closed edge path");
      incidences_[s.edge].emplace_back(f, k);
    }
  }
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    if (edges_[e].tail < 0 || edges_[e].tail >= vertices_ || edges_[e].head < 0 ||
        edges_[e].head >= vertices_)
      throw Error("edge endpoint out of range");
    const auto& inc = incidences_[e];
    if (inc.empty() || inc.size() > 2) throw Error("every edge bounds one or two face corners");
    if (inc.size() == 2) {
      bool f0 = faces_[inc[0].first].walk[inc[0].second].forward;
      bool f1 = faces_[inc[1].first].walk[inc[1].second].forward;
      if (f0 == f1) throw Error("orientation: interior edge traversed twice the same way");
    }
  }

  // Connected components over vertices.
  UnionFind uf(vertices_);
  for (const auto& e : edges_) uf.unite(e.tail, e.head);
  vertex_component_.assign(vertices_, -1);
  component_count_ = 0;
  for (int v = 0; v < vertices_; ++v) {
    int r = uf.find(v);
    if (vertex_component_[r] < 0) vertex_component_[r] = component_count_++;
    vertex_component_[v] = vertex_component_[r];
  }

  // Boundary traversal: from a boundary dart, the successor walks forward in
  // the face and hops across interior edges until the next boundary edge.
  auto next_in_face = [&](std::pair<int, int> d) {
    const auto& walk = faces_[d.first].walk;
    return std::pair{d.first, (d.second + 1) % static_cast<int>(walk.size())};
  };
  auto twin = [&](std::pair<int, int> d) {
    const auto& inc = incidences_[faces_[d.first].walk[d.second].edge];
    return inc[0] == d ? inc[1] : inc[0];
  };
  std::set<std::pair<int, int>> boundary_darts;
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (incidences_[e].size() == 1) boundary_darts.insert(incidences_[e][0]);

  boundary_.clear();
  std::set<std::pair<int, int>> visited;
  for (const auto& start : boundary_darts) {
    if (visited.count(start)) continue;
    BoundaryComponent bc;
    std::pair<int, int> d = start;
    do {
      visited.insert(d);
      bc.darts.push_back(d);
      d = next_in_face(d);
      while (incidences_[faces_[d.first].walk[d.second].edge].size() == 2)
        d = next_in_face(twin(d));
    } while (d != start);

    // Read the traced word off the labeled edges.
    int word = -1;
    int prev_index = -1;
    int labeled = 0;
    for (const auto& dart : bc.darts) {
      const WalkStep& s = faces_[dart.first].walk[dart.second];
      const EdgeLabel& lab = edges_[s.edge].label;
      if (lab.kind != EdgeLabel::Kind::word) continue;
      if (!s.forward) throw Error("internal: boundary reads a word edge backwards");
      if (word < 0) word = lab.word;
      if (lab.word != word) throw Error("internal: boundary mixes words");
      int len = static_cast<int>(words_[word].word.size());
      if (prev_index >= 0 && lab.index != (prev_index + 1) % len)
        throw Error("internal: boundary skips a letter");
      prev_index = lab.index;
      ++labeled;
    }
    if (word < 0) throw Error("internal: boundary circle without word labels");
    int len = static_cast<int>(words_[word].word.size());
    if (labeled % len != 0) throw Error("internal: boundary traces a fractional power");
    bc.word = word;
    bc.degree = labeled / len;
    boundary_.push_back(std::move(bc));
  }
}

int CombinatorialSurface::euler_characteristic() const {
  return vertices_ - static_cast<int>(edges_.size()) + static_cast<int>(faces_.size());
}

std::vector<CombinatorialSurface::ComponentInfo> CombinatorialSurface::components() const {
  std::vector<ComponentInfo> out(component_count_);
  for (int v = 0; v < vertices_; ++v) out[vertex_component_[v]].chi += 1;
  for (const auto& e : edges_) out[vertex_component_[e.tail]].chi -= 1;
  for (const auto& f : faces_) {
    int v = step_endpoints(edges_[f.walk[0].edge], f.walk[0].forward).first;
    out[vertex_component_[v]].chi += 1;
  }
  for (int b = 0; b < static_cast<int>(boundary_.size()); ++b)
    out[component_of_boundary(b)].boundary_count += 1;
  for (auto& c : out) {
    int doubled = 2 - c.chi - c.boundary_count;
    if (doubled < 0 || doubled % 2 != 0) throw Error("internal: non-integral genus");
    c.genus = doubled / 2;
  }
  return out;
}

int CombinatorialSurface::component_of_boundary(int circle) const {
  const auto& dart = boundary_[circle].darts.front();
  const WalkStep& s = faces_[dart.first].walk[dart.second];
  return vertex_component_[edges_[s.edge].tail];
}

int CombinatorialSurface::chi_minus() const {
  int total = 0;
  for (const auto& c : components()) total += std::min(0, c.chi);
  return total;
}

int CombinatorialSurface::genus() const {
  if (!connected()) throw Error("genus of a disconnected surface is per component");
  return components().front().genus;
}

std::size_t CombinatorialSurface::h1_rank() const {
  const std::size_t E = edges_.size();
  RationalMatrix d1(vertices_, E);
  for (std::size_t e = 0; e < E; ++e) {
    d1.at(edges_[e].head, e) += 1;
    d1.at(edges_[e].tail, e) -= 1;
  }
  RationalMatrix d2(E, faces_.size());
  for (std::size_t f = 0; f < faces_.size(); ++f)
    for (const auto& s : faces_[f].walk) d2.at(s.edge, f) += s.forward ? 1 : -1;
  std::size_t cycle_dim = E - d1.rank();
  return cycle_dim - d2.rank();
}

namespace {

// Shared cover builder: delta is an edge cocycle mod N with zero sum around
// every face; the cover has cells x Z/N.
SurfaceTransform build_cover(const CombinatorialSurface& s, const Integer& n,
                             const std::vector<Integer>& delta) {
  const int V = s.num_vertices();
  const int E = static_cast<int>(s.edges().size());
  const int F = static_cast<int>(s.faces().size());
  long N = n.get_si();

  auto mod = [&](Integer x) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return r.get_si();
  };

  std::vector<SurfaceEdge> edges(static_cast<std::size_t>(N) * E);
  for (long lev = 0; lev < N; ++lev)
    for (int e = 0; e < E; ++e) {
      const SurfaceEdge& base = s.edges()[e];
      long head_lev = mod(lev + delta[e]);
      edges[lev * E + e] = {static_cast<int>(lev * V + base.tail),
                           static_cast<int>(head_lev * V + base.head), base.label};
    }
  std::vector<SurfaceFace> faces;
  faces.reserve(static_cast<std::size_t>(N) * F);
  for (int f = 0; f < F; ++f)
    for (long lev0 = 0; lev0 < N; ++lev0) {
      SurfaceFace face;
      face.kind = s.faces()[f].kind;
      long lev = lev0;
      for (const WalkStep& st : s.faces()[f].walk) {
        if (st.forward) {
          face.walk.push_back({static_cast<int>(lev * E + st.edge), true});
          lev = mod(lev + delta[st.edge]);
        } else {
          long src = mod(lev - delta[st.edge]);
          face.walk.push_back({static_cast<int>(src * E + st.edge), false});
          lev = src;
        }
      }
      if (lev != lev0) throw Error("internal: cover face walk does not close");
      faces.push_back(std::move(face));
    }

  CombinatorialSurface cover(static_cast<int>(N) * V, std::move(edges), std::move(faces),
                             s.words());

  // Provenance: a cover circle lies over the base circle of any of its edges.
  std::vector<int> edge_circle(E, -1);
  for (int b = 0; b < static_cast<int>(s.boundary().size()); ++b)
    for (const auto& dart : s.boundary()[b].darts)
      edge_circle[s.faces()[dart.first].walk[dart.second].edge] = b;
  std::vector<int> base;
  for (const auto& bc : cover.boundary()) {
    const auto& dart = bc.darts.front();
    int e = cover.faces()[dart.first].walk[dart.second].edge % E;
    if (edge_circle[e] < 0) throw Error("internal: cover boundary over interior edge");
    base.push_back(edge_circle[e]);
  }
  return {std::move(cover), std::move(base)};
}

}  // namespace

SurfaceTransform cyclic_cover(const CombinatorialSurface& s, const CoverSpec& spec) {
  const int B = static_cast<int>(s.boundary().size());
  if (static_cast<int>(spec.phi.size()) != B) throw Error("cover spec size mismatch");
  if (spec.modulus < 1) throw Error("cover modulus must be positive");
  const Integer& N = spec.modulus;
  // Balance must hold on every connected component: the extension to a
  // homomorphism lives on each component's fundamental group.
  {
    std::map<int, Integer> sums;
    for (int b = 0; b < B; ++b) sums[s.component_of_boundary(b)] += spec.phi[b];
    for (const auto& [comp, sum] : sums)
      if (sum % N != 0) throw UnbalancedAssignmentError();
  }
  if (N == 1) {
    std::vector<int> id(B);
    std::iota(id.begin(), id.end(), 0);
    return {s, std::move(id)};
  }

  const int E = static_cast<int>(s.edges().size());
  const int F = static_cast<int>(s.faces().size());
  std::vector<Integer> delta(E, 0);
  bool all_zero = std::all_of(spec.phi.begin(), spec.phi.end(),
                              [&](const Integer& x) { return x % N == 0; });
  if (!all_zero) {
    // Extend the boundary assignment to an edge cocycle: zero around faces,
    // phi around boundary circles.
    IntMatrix m(F + B, IntVector(E, 0));
    IntVector rhs(F + B, 0);
    for (int f = 0; f < F; ++f)
      for (const auto& st : s.faces()[f].walk) m[f][st.edge] += st.forward ? 1 : -1;
    for (int b = 0; b < B; ++b) {
      for (const auto& dart : s.boundary()[b].darts) {
        const WalkStep& st = s.faces()[dart.first].walk[dart.second];
        m[F + b][st.edge] += st.forward ? 1 : -1;
      }
      rhs[F + b] = spec.phi[b];
    }
    auto sol = solve_mod_n(m, rhs, N);
    if (!sol) throw Error("internal: cover cocycle system unsolvable");
    delta = *sol;
  }

  SurfaceTransform out = build_cover(s, N, delta);

  // Each boundary preimage wraps with degree = order of phi in Z/N, and the
  // preimage count per base circle is N / order.
  std::vector<Integer> expected_count(B, 0);
  for (std::size_t c = 0; c < out.boundary_base.size(); ++c) {
    int b = out.boundary_base[c];
    Integer g = gcd(spec.phi[b], N);
    Integer ord = N / g;
    if (Integer(out.surface.boundary()[c].degree) != Integer(s.boundary()[b].degree) * ord)
      throw Error("internal: cover boundary degree violates the covering contract");
    expected_count[b] += 1;
  }
  for (int b = 0; b < B; ++b) {
    Integer g = gcd(spec.phi[b], N);
    if (expected_count[b] != g) throw Error("internal: cover preimage count mismatch");
  }
  return out;
}

SurfaceTransform disjoint_copies(const CombinatorialSurface& s, int k) {
  if (k < 1) throw Error("copy count must be >= 1");
  const int V = s.num_vertices();
  const int E = static_cast<int>(s.edges().size());
  std::vector<SurfaceEdge> edges;
  std::vector<SurfaceFace> faces;
  for (int j = 0; j < k; ++j) {
    for (const auto& e : s.edges())
      edges.push_back({e.tail + j * V, e.head + j * V, e.label});
    for (const auto& f : s.faces()) {
      SurfaceFace face;
      face.kind = f.kind;
      for (const auto& st : f.walk) face.walk.push_back({st.edge + j * E, st.forward});
      faces.push_back(std::move(face));
    }
  }
  CombinatorialSurface copy(k * V, std::move(edges), std::move(faces), s.words());
  std::vector<int> edge_circle(E, -1);
  for (int b = 0; b < static_cast<int>(s.boundary().size()); ++b)
    for (const auto& dart : s.boundary()[b].darts)
      edge_circle[s.faces()[dart.first].walk[dart.second].edge] = b;
  std::vector<int> base;
  for (const auto& bc : copy.boundary()) {
    const auto& dart = bc.darts.front();
    base.push_back(edge_circle[copy.faces()[dart.first].walk[dart.second].edge % E]);
  }
  return {std::move(copy), std::move(base)};
}

namespace {

// Kernel basis of the mod-2 system (faces and all boundary circles sum to
// zero), in free-column order.
std::vector<std::vector<uint8_t>> gf2_cocycle_kernel(const CombinatorialSurface& s) {
  const int E = static_cast<int>(s.edges().size());
  std::vector<std::vector<uint8_t>> rows;
  auto add_row = [&](const std::vector<int>& net) {
    std::vector<uint8_t> r(E, 0);
    for (int e = 0; e < E; ++e) r[e] = static_cast<uint8_t>(((net[e] % 2) + 2) % 2);
    rows.push_back(std::move(r));
  };
  for (const auto& f : s.faces()) {
    std::vector<int> net(E, 0);
    for (const auto& st : f.walk) net[st.edge] += st.forward ? 1 : -1;
    add_row(net);
  }
  for (const auto& bc : s.boundary()) {
    std::vector<int> net(E, 0);
    for (const auto& dart : bc.darts) {
      const WalkStep& st = s.faces()[dart.first].walk[dart.second];
      net[st.edge] += st.forward ? 1 : -1;
    }
    add_row(net);
  }

  std::vector<int> pivot_of_col(E, -1);
  int r = 0;
  for (int c = 0; c < E && r < static_cast<int>(rows.size()); ++c) {
    int p = r;
    while (p < static_cast<int>(rows.size()) && rows[p][c] == 0) ++p;
    if (p == static_cast<int>(rows.size())) continue;
    std::swap(rows[r], rows[p]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      for (int j = 0; j < E; ++j) rows[i][j] ^= rows[r][j];
    }
    pivot_of_col[c] = r;
    ++r;
  }
  std::vector<std::vector<uint8_t>> kernel;
  for (int c = 0; c < E; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<uint8_t> v(E, 0);
    v[c] = 1;
    for (int c2 = 0; c2 < E; ++c2)
      if (pivot_of_col[c2] >= 0 && rows[pivot_of_col[c2]][c]) v[c2] = 1;
    kernel.push_back(std::move(v));
  }
  return kernel;
}

bool is_coboundary_mod2(const CombinatorialSurface& s, const std::vector<uint8_t>& delta) {
  const int V = s.num_vertices();
  std::vector<int> val(V, -1);
  for (int start = 0; start < V; ++start) {
    if (val[start] >= 0) continue;
    val[start] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e = 0; e < static_cast<int>(s.edges().size()); ++e) {
        const auto& edge = s.edges()[e];
        int other = -1, want = -1;
        if (edge.tail == v) {
          other = edge.head;
          want = val[v] ^ delta[e];
        } else if (edge.head == v) {
          other = edge.tail;
          want = val[v] ^ delta[e];
        } else {
          continue;
        }
        if (val[other] < 0) {
          val[other] = want;
          stack.push_back(other);
        } else if (val[other] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

SurfaceTransform pairing_cover(const CombinatorialSurface& s) {
  if (!s.connected()) throw Error("pairing cover needs a connected surface");
  if (s.genus() < 1) throw NoGenusError();
  for (const auto& delta2 : gf2_cocycle_kernel(s)) {
    if (std::all_of(delta2.begin(), delta2.end(), [](uint8_t x) { return x == 0; })) continue;
    if (is_coboundary_mod2(s, delta2)) continue;
    std::vector<Integer> delta(delta2.begin(), delta2.end());
    SurfaceTransform out = build_cover(s, 2, delta);
    std::vector<int> count(s.boundary().size(), 0);
    for (std::size_t c = 0; c < out.boundary_base.size(); ++c) {
      if (out.surface.boundary()[c].degree != s.boundary()[out.boundary_base[c]].degree)
        throw Error("internal: pairing cover changed a boundary degree");
      count[out.boundary_base[c]] += 1;
    }
    for (int n : count)
      if (n != 2) throw Error("internal: pairing cover must double each boundary circle");
    return out;
  }
  throw NoGenusError();
}

SurfaceTransform ensure_positive_genus(const CombinatorialSurface& s, int max_modulus) {
  if (!s.connected()) throw Error("positive-genus search needs a connected surface");
  if (s.euler_characteristic() >= 0) throw Error("positive-genus search needs chi < 0");
  if (s.genus() >= 1) {
    std::vector<int> id(s.boundary().size());
    std::iota(id.begin(), id.end(), 0);
    return {s, std::move(id)};
  }
  const int b = static_cast<int>(s.boundary().size());
  for (int n = 2; n <= max_modulus; ++n) {
    std::vector<std::vector<Integer>> candidates;
    std::set<std::vector<Integer>> seen;
    auto push = [&](std::vector<Integer> phi) {
      Integer sum = 0;
      for (const auto& x : phi) sum += x;
      if (sum % n != 0) return;
      if (std::all_of(phi.begin(), phi.end(), [](const Integer& x) { return x == 0; })) return;
      if (seen.insert(phi).second) candidates.push_back(std::move(phi));
    };
    push(std::vector<Integer>(b, 1));
    {
      std::vector<Integer> phi(b, 1);
      phi[b - 1] = ((1 - b) % n + n) % n;
      push(phi);
    }
    long total = 1;
    for (int i = 0; i < b - 1 && total <= 20000; ++i) total *= n;
    if (total <= 20000) {
      std::vector<Integer> phi(b, 0);
      while (true) {
        Integer sum = 0;
        for (int i = 0; i < b - 1; ++i) sum += phi[i];
        phi[b - 1] = ((-sum) % n + n) % n;
        push(phi);
        int i = b - 2;
        while (i >= 0 && phi[i] == n - 1) phi[i--] = 0;
        if (i < 0) break;
        phi[i] += 1;
      }
    }
    for (const auto& phi : candidates) {
      SurfaceTransform cover = cyclic_cover(s, {Integer(n), phi});
      if (cover.surface.connected() && cover.surface.genus() >= 1) return cover;
    }
  }
  throw SearchExhaustedError("no positive-genus cyclic cover up to modulus " +
                             std::to_string(max_modulus));
}

CombinatorialSurface assemble_instances(
    const std::vector<std::pair<CyclicWord, Integer>>& words, const Alphabet& alphabet,
    const Integer& degree, const std::vector<std::pair<int, int>>& rect_instances,
    const std::vector<std::vector<std::pair<int, int>>>& polygons,
    const std::string& vertex_tag) {
  std::vector<int> offset;
  std::vector<Letter> letters;
  std::vector<std::pair<int, int>> pos_of;  // (word, index)
  for (int w = 0; w < static_cast<int>(words.size()); ++w) {
    offset.push_back(static_cast<int>(letters.size()));
    for (int i = 0; i < static_cast<int>(words[w].first.size()); ++i) {
      letters.push_back(words[w].first.letter(i));
      pos_of.emplace_back(w, i);
    }
  }
  std::vector<Integer> coverage(letters.size(), 0);
  for (const auto& [a, b] : rect_instances) {
    if (a < 0 || b < 0 || a >= static_cast<int>(letters.size()) ||
        b >= static_cast<int>(letters.size()) || a >= b)
      throw MalformedSolutionError("rectangle instance positions out of order");
    if (letters[a] != inverse_letter(letters[b]))
      throw MalformedSolutionError("rectangle pairs non-inverse letters");
    coverage[a] += 1;
    coverage[b] += 1;
  }
  for (std::size_t p = 0; p < letters.size(); ++p)
    if (coverage[p] != degree * words[pos_of[p].first].second)
      throw MalformedSolutionError("rectangle coverage does not match the chain");
  std::vector<std::array<int, 2>> slot_used(rect_instances.size(), {0, 0});
  for (const auto& poly : polygons)
    for (const auto& [inst, side] : poly) {
      if (inst < 0 || inst >= static_cast<int>(rect_instances.size()) || side < 0 || side > 1)
        throw MalformedSolutionError("polygon slot out of range");
      slot_used[inst][side] += 1;
    }
  for (const auto& u : slot_used)
    if (u[0] != 1 || u[1] != 1)
      throw MalformedSolutionError("every rectangle side must be glued exactly once");

  std::vector<SurfaceEdge> edges;
  std::vector<SurfaceFace> faces;
  const int R = static_cast<int>(rect_instances.size());
  // Rectangle i: vertices 4i..4i+3; edges 4i + {0: top, 1: right, 2: bottom, 3: left}.
  for (int i = 0; i < R; ++i) {
    auto [a, b] = rect_instances[i];
    EdgeLabel top{EdgeLabel::Kind::word, pos_of[a].first, pos_of[a].second};
    EdgeLabel bottom{EdgeLabel::Kind::word, pos_of[b].first, pos_of[b].second};
    edges.push_back({4 * i + 0, 4 * i + 1, top});
    edges.push_back({4 * i + 1, 4 * i + 2, {EdgeLabel::Kind::vertical, -1, -1}});
    edges.push_back({4 * i + 2, 4 * i + 3, bottom});
    edges.push_back({4 * i + 3, 4 * i + 0, {EdgeLabel::Kind::vertical, -1, -1}});
    SurfaceFace f;
    f.kind = SurfaceFace::Kind::rectangle;
    f.walk = {{4 * i + 0, true}, {4 * i + 1, true}, {4 * i + 2, true}, {4 * i + 3, true}};
    faces.push_back(std::move(f));
  }
  auto slot_edge = [&](int inst, int side) { return 4 * inst + (side == 0 ? 1 : 3); };
  auto slot_end = [&](int inst, int side) { return side == 0 ? 4 * inst + 1 : 4 * inst + 3; };
  auto slot_start = [&](int inst, int side) { return side == 0 ? 4 * inst + 2 : 4 * inst + 0; };
  for (const auto& poly : polygons) {
    SurfaceFace f;
    f.kind = SurfaceFace::Kind::polygon;
    const int L = static_cast<int>(poly.size());
    for (int k = 0; k < L; ++k) {
      auto [inst, side] = poly[k];
      auto [ninst, nside] = poly[(k + 1) % L];
      f.walk.push_back({slot_edge(inst, side), false});
      int corner = static_cast<int>(edges.size());
      edges.push_back({slot_end(inst, side), slot_start(ninst, nside),
                       {EdgeLabel::Kind::corner, -1, -1}});
      f.walk.push_back({corner, true});
    }
    faces.push_back(std::move(f));
  }
  std::vector<SurfaceWord> table;
  for (const auto& [w, c] : words) table.push_back({vertex_tag, w.render(alphabet), w});
  return CombinatorialSurface(4 * R, std::move(edges), std::move(faces), std::move(table));
}

CombinatorialSurface assemble(const SclProblem& p, const SclExtremal& extremal,
                              const std::string& vertex_tag) {
  const int R = p.num_rectangles();
  if (static_cast<int>(extremal.rect_weights.size()) != R)
    throw MalformedSolutionError("weight vector size mismatch");
  std::vector<int> start(R, 0);
  std::vector<std::pair<int, int>> instances;
  for (int r = 0; r < R; ++r) {
    start[r] = static_cast<int>(instances.size());
    if (extremal.rect_weights[r] < 0) throw MalformedSolutionError("negative rectangle weight");
    for (Integer c = 0; c < extremal.rect_weights[r]; ++c)
      instances.emplace_back(p.rectangles()[r].a, p.rectangles()[r].b);
  }
  std::vector<Integer> counter(p.num_nodes(), 0);
  std::vector<std::vector<std::pair<int, int>>> polygons;
  for (const auto& [cycle, weight] : extremal.cycles) {
    if (weight < 0) throw MalformedSolutionError("negative polygon weight");
    for (Integer c = 0; c < weight; ++c) {
      std::vector<std::pair<int, int>> poly;
      for (int v : cycle) {
        int r = p.rectangle_of_node(v);
        int side = v % 2;
        Integer idx = counter[v]++;
        if (idx >= extremal.rect_weights[r])
          throw MalformedSolutionError("polygon slots exceed rectangle copies");
        poly.emplace_back(start[r] + static_cast<int>(idx.get_si()), side);
      }
      polygons.push_back(std::move(poly));
    }
  }
  for (int v = 0; v < p.num_nodes(); ++v)
    if (counter[v] != extremal.rect_weights[p.rectangle_of_node(v)])
      throw MalformedSolutionError("unfilled rectangle side");
  CombinatorialSurface s = assemble_instances(p.chain().terms, p.chain().alphabet,
                                              extremal.degree, instances, polygons, vertex_tag);
  for (const auto& c : s.components())
    if (c.chi > 0 || c.closed())
      throw MalformedSolutionError("assembled surface has a closed or positive component");
  return s;
}

CombinatorialSurface merge_surfaces(const std::vector<CombinatorialSurface>& pieces,
                                    std::vector<std::vector<int>>* circle_map) {
  int voff = 0, eoff = 0;
  std::vector<SurfaceEdge> edges;
  std::vector<SurfaceFace> faces;
  std::vector<SurfaceWord> words;
  std::vector<int> face_off, word_off;
  for (const auto& s : pieces) {
    face_off.push_back(static_cast<int>(faces.size()));
    word_off.push_back(static_cast<int>(words.size()));
    for (const auto& e : s.edges()) {
      SurfaceEdge ne{e.tail + voff, e.head + voff, e.label};
      if (ne.label.kind == EdgeLabel::Kind::word) ne.label.word += word_off.back();
      edges.push_back(ne);
    }
    for (const auto& f : s.faces()) {
      SurfaceFace nf;
      nf.kind = f.kind;
      for (const auto& st : f.walk) nf.walk.push_back({st.edge + eoff, st.forward});
      faces.push_back(std::move(nf));
    }
    for (const auto& w : s.words()) words.push_back(w);
    voff += s.num_vertices();
    eoff += static_cast<int>(s.edges().size());
  }
  CombinatorialSurface merged(voff, std::move(edges), std::move(faces), std::move(words));
  if (circle_map) {
    circle_map->clear();
    std::map<std::pair<int, int>, int> dart_to_circle;
    for (int c = 0; c < static_cast<int>(merged.boundary().size()); ++c)
      for (const auto& d : merged.boundary()[c].darts) dart_to_circle[d] = c;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      std::vector<int> m;
      for (const auto& bc : pieces[i].boundary()) {
        auto d = bc.darts.front();
        m.push_back(dart_to_circle.at({d.first + face_off[i], d.second}));
      }
      circle_map->push_back(std::move(m));
    }
  }
  return merged;
}

CombinatorialSurface glue_through_cylinder(const CombinatorialSurface& s, int circle_a,
                                           int circle_b, std::vector<int>* remaining_map) {
  if (circle_a == circle_b) throw Error("cannot glue a circle to itself");
  const auto& A = s.boundary()[circle_a];
  const auto& B = s.boundary()[circle_b];
  std::vector<SurfaceEdge> edges = s.edges();
  std::vector<SurfaceFace> faces = s.faces();

  auto dart_step = [&](std::pair<int, int> d) { return s.faces()[d.first].walk[d.second]; };
  auto traversal_start = [&](std::pair<int, int> d) {
    const WalkStep& st = dart_step(d);
    return step_endpoints(s.edges()[st.edge], st.forward).first;
  };
  int xa = traversal_start(A.darts.front());
  int xb = traversal_start(B.darts.front());
  int seam = static_cast<int>(edges.size());
  edges.push_back({xa, xb, {EdgeLabel::Kind::seam, -1, -1}});

  SurfaceFace cyl;
  cyl.kind = SurfaceFace::Kind::cylinder;
  for (auto it = A.darts.rbegin(); it != A.darts.rend(); ++it) {
    const WalkStep& st = dart_step(*it);
    cyl.walk.push_back({st.edge, !st.forward});
  }
  cyl.walk.push_back({seam, true});
  for (auto it = B.darts.rbegin(); it != B.darts.rend(); ++it) {
    const WalkStep& st = dart_step(*it);
    cyl.walk.push_back({st.edge, !st.forward});
  }
  cyl.walk.push_back({seam, false});
  faces.push_back(std::move(cyl));

  CombinatorialSurface glued(s.num_vertices(), std::move(edges), std::move(faces), s.words());
  if (remaining_map) {
    remaining_map->assign(s.boundary().size(), -1);
    std::map<std::pair<int, int>, int> dart_to_circle;
    for (int c = 0; c < static_cast<int>(glued.boundary().size()); ++c)
      for (const auto& d : glued.boundary()[c].darts) dart_to_circle[d] = c;
    for (int c = 0; c < static_cast<int>(s.boundary().size()); ++c) {
      if (c == circle_a || c == circle_b) continue;
      (*remaining_map)[c] = dart_to_circle.at(s.boundary()[c].darts.front());
    }
  }
  return glued;
}

namespace {

using nlohmann::json;

json label_to_json(const EdgeLabel& l) {
  switch (l.kind) {
    case EdgeLabel::Kind::word:
      return {{"kind", "word"}, {"word", l.word}, {"index", l.index}};
    case EdgeLabel::Kind::vertical:
      return {{"kind", "vertical"}};
    case EdgeLabel::Kind::corner:
      return {{"kind", "corner"}};
    case EdgeLabel::Kind::seam:
      return {{"kind", "seam"}};
  }
  return {};
}

EdgeLabel label_from_json(const json& j) {
  EdgeLabel l;
  std::string kind = j.at("kind");
  if (kind == "word") {
    l.kind = EdgeLabel::Kind::word;
    l.word = j.at("word");
    l.index = j.at("index");
  } else if (kind == "vertical") {
    l.kind = EdgeLabel::Kind::vertical;
  } else if (kind == "corner") {
    l.kind = EdgeLabel::Kind::corner;
  } else if (kind == "seam") {
    l.kind = EdgeLabel::Kind::seam;
  } else {
    throw ParseError("unknown edge label kind '" + kind + "'");
  }
  return l;
}

std::string face_kind_name(SurfaceFace::Kind k) {
  switch (k) {
    case SurfaceFace::Kind::rectangle: return "rectangle";
    case SurfaceFace::Kind::polygon: return "polygon";
    case SurfaceFace::Kind::cylinder: return "cylinder";
  }
  return "";
}

}  // namespace

std::string surface_to_json(const CombinatorialSurface& s) {
  json j;
  j["vertices"] = s.num_vertices();
  j["edges"] = json::array();
  for (const auto& e : s.edges())
    j["edges"].push_back({{"tail", e.tail}, {"head", e.head}, {"label", label_to_json(e.label)}});
  j["faces"] = json::array();
  for (const auto& f : s.faces()) {
    json walk = json::array();
    for (const auto& st : f.walk) walk.push_back({{"edge", st.edge}, {"forward", st.forward}});
    j["faces"].push_back({{"kind", face_kind_name(f.kind)}, {"walk", walk}});
  }
  j["words"] = json::array();
  for (const auto& w : s.words()) {
    j["words"].push_back(
        {{"vertex", w.vertex}, {"text", w.text}, {"letters", w.word.letters()}});
  }
  j["boundary"] = json::array();
  for (const auto& b : s.boundary())
    j["boundary"].push_back({{"word", b.word}, {"degree", b.degree}});
  j["components"] = json::array();
  for (const auto& c : s.components())
    j["components"].push_back(
        {{"chi", c.chi}, {"boundary", c.boundary_count}, {"genus", c.genus}});
  j["chi"] = s.euler_characteristic();
  return j.dump(2);
}

CombinatorialSurface surface_from_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<SurfaceEdge> edges;
  for (const auto& je : j.at("edges"))
    edges.push_back({je.at("tail"), je.at("head"), label_from_json(je.at("label"))});
  std::vector<SurfaceFace> faces;
  for (const auto& jf : j.at("faces")) {
    SurfaceFace f;
    std::string kind = jf.at("kind");
    if (kind == "rectangle")
      f.kind = SurfaceFace::Kind::rectangle;
    else if (kind == "polygon")
      f.kind = SurfaceFace::Kind::polygon;
    else if (kind == "cylinder")
      f.kind = SurfaceFace::Kind::cylinder;
    else
      throw ParseError("unknown face kind '" + kind + "'");
    for (const auto& js : jf.at("walk")) f.walk.push_back({js.at("edge"), js.at("forward")});
    faces.push_back(std::move(f));
  }
  std::vector<SurfaceWord> words;
  for (const auto& jw : j.at("words")) {
    std::vector<Letter> letters = jw.at("letters").get<std::vector<Letter>>();
    words.push_back({jw.at("vertex"), jw.at("text"), CyclicWord(std::move(letters))});
  }
  return CombinatorialSurface(j.at("vertices"), std::move(edges), std::move(faces),
                              std::move(words));
}

}  // namespace sclkit
