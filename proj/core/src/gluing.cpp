#include "sclkit/gluing.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sclkit/errors.hpp"
#include "sclkit/scl.hpp"

namespace sclkit {

namespace {

struct FaceTag {
  std::string edge;  // cylinder faces carry the glued edge
  Integer wrap = 0;  // core degree of that annulus
};

struct Piece {
  CombinatorialSurface s;
  std::vector<FaceTag> tags;  // parallel to s.faces()
};

struct PoolKey {
  std::string vertex;
  CyclicWord word;
  bool operator<(const PoolKey& o) const {
    return vertex < o.vertex || (vertex == o.vertex && word < o.word);
  }
  bool operator==(const PoolKey& o) const { return vertex == o.vertex && word == o.word; }
};

struct PoolCircle {
  int piece = 0;
  int circle = 0;
  int degree = 0;
};

// Split a surface into its connected pieces, carrying face tags along.
std::vector<Piece> split_components(const Piece& piece) {
  const CombinatorialSurface& s = piece.s;
  auto comps = s.components();
  if (comps.size() == 1) return {piece};
  // Component of each vertex via edges.
  std::vector<int> comp_of_vertex(s.num_vertices(), -1);
  {
    std::vector<int> parent(s.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : s.edges()) parent[find(e.tail)] = find(e.head);
    std::map<int, int> index;
    for (int v = 0; v < s.num_vertices(); ++v) {
      int r = find(v);
      if (!index.count(r)) index[r] = static_cast<int>(index.size());
      comp_of_vertex[v] = index[r];
    }
  }
  int count = 0;
  for (int v = 0; v < s.num_vertices(); ++v) count = std::max(count, comp_of_vertex[v] + 1);
  std::vector<Piece> out;
  for (int c = 0; c < count; ++c) {
    std::vector<int> vmap(s.num_vertices(), -1), emap(s.edges().size(), -1);
    int nv = 0;
    for (int v = 0; v < s.num_vertices(); ++v)
      if (comp_of_vertex[v] == c) vmap[v] = nv++;
    std::vector<SurfaceEdge> edges;
    for (std::size_t e = 0; e < s.edges().size(); ++e) {
      if (comp_of_vertex[s.edges()[e].tail] != c) continue;
      emap[e] = static_cast<int>(edges.size());
      edges.push_back({vmap[s.edges()[e].tail], vmap[s.edges()[e].head], s.edges()[e].label});
    }
    std::vector<SurfaceFace> faces;
    std::vector<FaceTag> tags;
    for (std::size_t f = 0; f < s.faces().size(); ++f) {
      const auto& face = s.faces()[f];
      int tail = face.walk[0].forward ? s.edges()[face.walk[0].edge].tail
                                      : s.edges()[face.walk[0].edge].head;
      if (comp_of_vertex[tail] != c) continue;
      SurfaceFace nf;
      nf.kind = face.kind;
      for (const auto& st : face.walk) nf.walk.push_back({emap[st.edge], st.forward});
      faces.push_back(std::move(nf));
      tags.push_back(piece.tags[f]);
    }
    out.push_back({CombinatorialSurface(nv, std::move(edges), std::move(faces), s.words()),
                   std::move(tags)});
  }
  return out;
}

class Gluer {
 public:
  Gluer(const GraphOfGroups& g, std::vector<Integer> a, const GluingConfig& cfg)
      : g_(g), a_(std::move(a)), cfg_(cfg) {}

  GlueOutcome run() {
    GlueOutcome outcome;
    if (auto w = prescan()) {
      outcome.kind = GlueOutcome::Kind::witness;
      outcome.witness = *w;
      log_ << "witness: " << w->explanation << "\n";
      outcome.plan = log_.str();
      return outcome;
    }
    std::vector<Rational> ar(a_.begin(), a_.end());
    if (!in_kernel(g_, ar)) throw NotInKernelError();
    if (std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; }))
      throw Error("class must be nonzero");
    norm_ = gt_norm(g_, ar);
    log_ << "gt_norm = " << norm_.str() << "\n";
    if (norm_.is_zero()) {
      outcome.kind = GlueOutcome::Kind::norm_zero;
      outcome.norm = norm_;
      log_ << "norm zero: no extremal gluing is attempted\n";
      outcome.plan = log_.str();
      return outcome;
    }

    build_vertex_pieces();
    equalize_degrees();
    for (const auto& e : g_.edges()) {
      if (auto w = process_edge(e)) {
        outcome.kind = GlueOutcome::Kind::witness;
        outcome.witness = *w;
        log_ << "witness: " << w->explanation << "\n";
        outcome.plan = log_.str();
        return outcome;
      }
    }

    outcome.kind = GlueOutcome::Kind::closed;
    outcome.norm = norm_;
    outcome.closed = finish();
    outcome.plan = log_.str();
    return outcome;
  }

 private:
  std::optional<NonHyperbolicWitness> prescan() const {
    for (const auto& e : g_.edges()) {
      if (e.from != e.to) continue;
      auto [r1, k1] = e.wfrom.primitive_root();
      auto [r2, k2] = e.wto.primitive_root();
      std::optional<Integer> q;
      if (r1 == r2)
        q = Integer(k2);
      else if (r1 == r2.inverse())
        q = Integer(-k2);
      if (!q) continue;
      NonHyperbolicWitness w;
      w.p = k1;
      w.q = *q;
      w.edge = e.name;
      std::ostringstream ex;
      ex << "self-edge '" << e.name << "' conjugates u^" << w.p.get_str() << " to u^"
         << w.q.get_str() << " for a common root u, so the group contains "
         << (w.zxz() ? "Z x Z" : "BS(" + w.p.get_str() + "," + w.q.get_str() + ")");
      w.explanation = ex.str();
      return w;
    }
    return std::nullopt;
  }

  PoolKey end_key(int end) const {
    const CyclicWord& w = g_.end_word(end);
    return {g_.end_vertex(end), a_[end] > 0 ? w : w.inverse()};
  }

  void build_vertex_pieces() {
    for (const auto& [vname, alphabet] : g_.vertices()) {
      std::map<CyclicWord, Integer> demand;
      for (int end = 0; end < g_.num_edge_ends(); ++end) {
        if (g_.end_vertex(end) != vname || a_[end] == 0) continue;
        Integer amt = a_[end] > 0 ? a_[end] : -a_[end];
        demand[end_key(end).word] += amt;
      }
      if (demand.empty()) continue;
      PositiveChain pc{alphabet, {demand.begin(), demand.end()}};
      SclProblem problem = SclProblem::build(pc);
      SclResult res = solve_scl(problem);
      CombinatorialSurface s = assemble(problem, res.extremal, vname);
      vertex_degree_[vname] = res.extremal.degree;
      log_ << "vertex " << vname << ": scl contribution " << res.value.str() << ", surface chi "
           << s.euler_characteristic() << " at degree " << res.extremal.degree.get_str() << "\n";
      Piece p{s, std::vector<FaceTag>(s.faces().size())};
      for (auto& q : split_components(p)) pieces_.push_back(std::move(q));
    }
  }

  void equalize_degrees() {
    n_ = 1;
    for (const auto& [v, d] : vertex_degree_) n_ = lcm(n_, d);
    std::vector<Piece> next;
    // Pieces inherit the vertex they were built for via their word tags.
    for (auto& p : pieces_) {
      std::string v = p.s.words().front().vertex;
      Integer copies = n_ / vertex_degree_.at(v);
      for (Integer c = 0; c < copies; ++c) next.push_back(p);
    }
    pieces_ = std::move(next);
    log_ << "global degree n = " << n_.get_str() << " after equalization\n";
  }

  std::vector<PoolCircle> pool(const PoolKey& key) const {
    std::vector<PoolCircle> out;
    for (int p = 0; p < static_cast<int>(pieces_.size()); ++p) {
      const auto& s = pieces_[p].s;
      for (int c = 0; c < static_cast<int>(s.boundary().size()); ++c) {
        const auto& w = s.words()[s.boundary()[c].word];
        if (w.vertex == key.vertex && w.word == key.word)
          out.push_back({p, c, s.boundary()[c].degree});
      }
    }
    return out;
  }

  void replicate_all_except(const std::set<int>& covered, const Integer& factor,
                            std::vector<Piece>& out) {
    for (int p = 0; p < static_cast<int>(pieces_.size()); ++p) {
      if (covered.count(p)) continue;
      for (Integer c = 0; c < factor; ++c) out.push_back(pieces_[p]);
    }
  }

  // Apply per-piece covers atomically: each covered piece is scaled by its
  // modulus and padded with copies up to the common factor; untouched pieces
  // are copied the full factor; the global degree multiplies once.
  void apply_covers(const std::map<int, std::function<SurfaceTransform(const Piece&)>>& ops,
                    const std::map<int, Integer>& moduli) {
    if (ops.empty()) return;
    Integer f = 1;
    for (const auto& [p, m] : moduli) f = lcm(f, m);
    std::vector<Piece> next;
    std::set<int> covered;
    for (const auto& [p, op] : ops) {
      covered.insert(p);
      SurfaceTransform t = op(pieces_[p]);
      Integer m = moduli.at(p);
      // Face tags replicate per lifted face; build_cover orders faces
      // face-major, so tag f*m + level maps to base tag f.
      std::vector<FaceTag> tags;
      for (std::size_t bf = 0; bf < pieces_[p].tags.size(); ++bf)
        for (Integer lev = 0; lev < m; ++lev) tags.push_back(pieces_[p].tags[bf]);
      if (tags.size() != t.surface.faces().size())
        throw Error("internal: cover face count mismatch");
      Piece covered_piece{std::move(t.surface), std::move(tags)};
      Integer pad = f / m;
      for (Integer c = 0; c < pad; ++c)
        for (auto& q : split_components(covered_piece)) next.push_back(q);
    }
    replicate_all_except(covered, f, next);
    pieces_ = std::move(next);
    n_ *= f;
  }

  void replicate_everything(const Integer& factor) {
    if (factor == 1) return;
    std::vector<Piece> next;
    replicate_all_except({}, factor, next);
    pieces_ = std::move(next);
    n_ *= factor;
  }

  bool is_annular(int piece) const { return pieces_[piece].s.euler_characteristic() == 0; }

  std::optional<NonHyperbolicWitness> process_edge(const GraphEdge& e) {
    int end_v = -1, end_w = -1;
    for (int end = 0; end < g_.num_edge_ends(); ++end)
      if (end / 2 == &e - g_.edges().data()) (end % 2 == 0 ? end_v : end_w) = end;
    if (a_[end_v] == 0 && a_[end_w] == 0) {
      log_ << "edge " << e.name << ": class does not cross, skipped\n";
      return std::nullopt;
    }
    PoolKey key_v = end_key(end_v), key_w = end_key(end_w);
    if (key_v == key_w) throw Error("internal: coincident edge pools escaped the witness scan");

    auto degrees_of = [](const std::vector<PoolCircle>& pool) {
      std::set<int> d;
      for (const auto& c : pool) d.insert(c.degree);
      return d;
    };

    {
      // A single annulus whose two boundaries feed both sides of one edge
      // closes onto itself: a Baumslag-Solitar certificate.
      auto pv = pool(key_v);
      auto pw = pool(key_w);
      if (pv.size() == 1 && pw.size() == 1 && pv[0].piece == pw[0].piece &&
          is_annular(pv[0].piece))
        return make_dynamic_witness(e, pv[0].degree, pw[0].degree);
      // An annulus serving both sides with unequal degrees can never be
      // covered to matching degrees.
      for (const auto& cv : pv)
        for (const auto& cw : pw)
          if (cv.piece == cw.piece && is_annular(cv.piece) && cv.degree != cw.degree)
            return make_dynamic_witness(e, cv.degree, cw.degree);
    }

    auto pv = pool(key_v);
    auto pw = pool(key_w);
    std::set<int> degs = degrees_of(pv);
    degs.merge(degrees_of(pw));
    bool needs_covers = degs.size() > 1;
    Integer target = 1;
    for (int d : degs) target = lcm(target, Integer(d));

    if (needs_covers) {
      // Positive genus and paired boundaries first, so the equalizing
      // assignment can cancel in +-d pairs.
      std::map<int, std::function<SurfaceTransform(const Piece&)>> ops;
      std::map<int, Integer> moduli;
      std::set<int> touched;
      for (const auto& c : pv) touched.insert(c.piece);
      for (const auto& c : pw) touched.insert(c.piece);
      for (int p : touched) {
        if (is_annular(p)) continue;
        Integer modulus = 2;
        bool need_genus = pieces_[p].s.genus() == 0;
        if (need_genus) {
          SurfaceTransform probe = ensure_positive_genus(pieces_[p].s, cfg_.genus_cover_bound);
          modulus *= probe.surface.num_vertices() / pieces_[p].s.num_vertices();
        }
        moduli[p] = modulus;
        int bound = cfg_.genus_cover_bound;
        ops[p] = [need_genus, bound](const Piece& piece) {
          SurfaceTransform t = need_genus
                                   ? ensure_positive_genus(piece.s, bound)
                                   : SurfaceTransform{piece.s, {}};
          return pairing_cover(t.surface);
        };
        log_ << "edge " << e.name << ": piece prepared (genus fix "
             << (need_genus ? "yes" : "no") << " + pairing)\n";
      }
      apply_covers(ops, moduli);
    }

    pv = pool(key_v);
    pw = pool(key_w);
    degs = degrees_of(pv);
    degs.merge(degrees_of(pw));
    target = 1;
    for (int d : degs) target = lcm(target, Integer(d));
    Integer demand = n_ * (a_[end_v] > 0 ? a_[end_v] : -a_[end_v]);
    Integer bump = target / gcd(target, demand);
    if (bump > 1) {
      log_ << "edge " << e.name << ": degree bump x" << bump.get_str() << "\n";
      replicate_everything(bump);
      demand *= bump;
    }

    if (degs.size() > 1 || (degs.size() == 1 && Integer(*degs.begin()) != target)) {
      std::map<int, std::function<SurfaceTransform(const Piece&)>> ops;
      std::map<int, Integer> moduli;
      std::map<int, std::vector<std::pair<int, int>>> pooled;  // piece -> (circle, degree)
      pv = pool(key_v);
      pw = pool(key_w);
      for (const auto& c : pv) pooled[c.piece].emplace_back(c.circle, c.degree);
      for (const auto& c : pw) pooled[c.piece].emplace_back(c.circle, c.degree);
      for (auto& [p, circles] : pooled) {
        bool uniform = std::all_of(circles.begin(), circles.end(), [&](const auto& cd) {
          return Integer(cd.second) == target;
        });
        if (uniform) continue;
        if (is_annular(p)) {
          // Connected annulus cover scales both circles equally.
          Integer t = target / Integer(circles.front().second);
          moduli[p] = t;
          long tl = t.get_si();
          ops[p] = [tl](const Piece& piece) {
            CoverSpec spec{Integer(tl), {Integer(1), Integer(tl - 1)}};
            if (piece.s.boundary().size() != 2)
              throw Error("internal: annular piece without two boundary circles");
            return cyclic_cover(piece.s, spec);
          };
        } else {
          moduli[p] = target;
          auto selected = circles;
          long tl = target.get_si();
          ops[p] = [selected, tl](const Piece& piece) {
            CoverSpec spec{Integer(tl),
                           std::vector<Integer>(piece.s.boundary().size(), Integer(0))};
            // Pair pooled circles of equal degree and assign +-d.
            std::map<int, std::vector<int>> by_degree;
            for (const auto& [circle, degree] : selected) by_degree[degree].push_back(circle);
            for (auto& [degree, list] : by_degree) {
              if (degree == tl) continue;
              if (list.size() % 2 != 0)
                throw Error("internal: unpaired boundary circle in equalizing cover");
              std::sort(list.begin(), list.end());
              for (std::size_t i = 0; i < list.size(); i += 2) {
                spec.phi[list[i]] = Integer(degree);
                spec.phi[list[i + 1]] = Integer(((-degree) % tl + tl) % tl);
              }
            }
            return cyclic_cover(piece.s, spec);
          };
        }
        log_ << "edge " << e.name << ": equalizing cover modulus " << moduli[p].get_str()
             << "\n";
      }
      apply_covers(ops, moduli);
    }

    // All relevant circles now map with the common degree; glue in pairs.
    Integer ne = target;
    demand = n_ * (a_[end_v] > 0 ? a_[end_v] : -a_[end_v]);
    pv = pool(key_v);
    pw = pool(key_w);
    for (const auto& c : pv)
      if (Integer(c.degree) != ne) throw Error("internal: unequalized circle degree");
    for (const auto& c : pw)
      if (Integer(c.degree) != ne) throw Error("internal: unequalized circle degree");
    Integer expected = demand / ne;
    if (Integer(static_cast<long>(pv.size())) < expected ||
        Integer(static_cast<long>(pw.size())) < expected)
      throw Error("internal: pool undersupply at gluing");
    pv.resize(expected.get_si());
    pw.resize(expected.get_si());
    if (pv.size() != pw.size()) throw Error("internal: boundary family count mismatch");
    log_ << "edge " << e.name << ": N = " << ne.get_str() << ", gluing " << pv.size()
         << " annulus pair(s)\n";

    // Matching that never closes an annular piece onto itself.
    std::vector<int> match(pv.size(), -1);
    {
      std::vector<char> used(pw.size(), 0);
      std::function<bool(std::size_t)> assign = [&](std::size_t i) {
        if (i == pv.size()) return true;
        for (std::size_t j = 0; j < pw.size(); ++j) {
          if (used[j]) continue;
          if (pv[i].piece == pw[j].piece && is_annular(pv[i].piece)) continue;
          used[j] = 1;
          match[i] = static_cast<int>(j);
          if (assign(i + 1)) return true;
          used[j] = 0;
        }
        return false;
      };
      if (!assign(0)) {
        // Only possible when the families are a single annulus family
        // forced onto itself.
        return make_dynamic_witness(e, static_cast<int>(ne.get_si()),
                                    static_cast<int>(ne.get_si()));
      }
    }

    // Glue pair by pair, tracking circle identities through merges.
    struct Handle {
      int piece, circle;
    };
    std::vector<std::pair<Handle, Handle>> jobs;
    for (std::size_t i = 0; i < pv.size(); ++i)
      jobs.push_back({{pv[i].piece, pv[i].circle}, {pw[match[i]].piece, pw[match[i]].circle}});
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      auto [ha, hb] = jobs[j];
      int pa = ha.piece, pb = hb.piece;
      int ca = ha.circle, cb = hb.circle;
      if (pa != pb) {
        std::vector<std::vector<int>> cmap;
        CombinatorialSurface merged =
            merge_surfaces({pieces_[pa].s, pieces_[pb].s}, &cmap);
        std::vector<FaceTag> tags = pieces_[pa].tags;
        tags.insert(tags.end(), pieces_[pb].tags.begin(), pieces_[pb].tags.end());
        int keep = std::min(pa, pb), drop = std::max(pa, pb);
        pieces_[keep] = {std::move(merged), std::move(tags)};
        pieces_.erase(pieces_.begin() + drop);
        auto remap = [&](Handle& h) {
          if (h.piece == pa)
            h = {keep, cmap[0][h.circle]};
          else if (h.piece == pb)
            h = {keep, cmap[1][h.circle]};
          else if (h.piece > drop)
            h.piece -= 1;
        };
        for (std::size_t k = j; k < jobs.size(); ++k) {
          remap(jobs[k].first);
          remap(jobs[k].second);
        }
        std::tie(pa, ca) = std::pair{jobs[j].first.piece, jobs[j].first.circle};
        std::tie(pb, cb) = std::pair{jobs[j].second.piece, jobs[j].second.circle};
      }
      std::vector<int> rmap;
      CombinatorialSurface glued = glue_through_cylinder(pieces_[pa].s, ca, cb, &rmap);
      std::vector<FaceTag> tags = pieces_[pa].tags;
      tags.push_back({e.name, ne});
      pieces_[pa] = {std::move(glued), std::move(tags)};
      for (std::size_t k = j + 1; k < jobs.size(); ++k) {
        for (Handle* h : {&jobs[k].first, &jobs[k].second}) {
          if (h->piece == pa) {
            if (rmap[h->circle] < 0) throw Error("internal: circle reused across gluings");
            h->circle = rmap[h->circle];
          }
        }
      }
    }
    return std::nullopt;
  }

  NonHyperbolicWitness make_dynamic_witness(const GraphEdge& e, int p, int q) const {
    NonHyperbolicWitness w;
    w.p = p;
    w.q = q;
    w.edge = e.name;
    std::ostringstream ex;
    ex << "gluing edge '" << e.name << "' would close an annulus family onto itself with "
       << "degrees (" << p << "," << q << "); the group contains "
       << (w.zxz() ? "Z x Z" : "BS(" + std::to_string(p) + "," + std::to_string(q) + ")");
    w.explanation = ex.str();
    return w;
  }

  ClosedSurfaceResult finish() {
    for (const auto& p : pieces_)
      if (!p.s.boundary().empty()) {
        std::ostringstream what;
        what << "internal: glued surface is not closed; free circles:";
        for (const auto& bc : p.s.boundary())
          what << " (" << p.s.words()[bc.word].vertex << ", "
               << p.s.words()[bc.word].text << ", deg " << bc.degree << ")";
        throw Error(what.str());
      }
    std::vector<CombinatorialSurface> parts;
    for (const auto& p : pieces_) parts.push_back(p.s);

    ClosedSurfaceResult r{.components = {},
                          .n = n_,
                          .chi_total = 0,
                          .certificate_lhs = 0,
                          .certificate_rhs = norm_,
                          .certificate_ok = false,
                          .edge_wrapping_total = {},
                          .surface = merge_surfaces(parts)};
    int chi_minus = 0;
    for (const auto& p : pieces_) {
      ClosedComponent c;
      c.chi = p.s.euler_characteristic();
      c.genus = p.s.genus();
      for (std::size_t f = 0; f < p.tags.size(); ++f)
        if (!p.tags[f].edge.empty()) c.edge_wrapping[p.tags[f].edge] += p.tags[f].wrap;
      r.chi_total += c.chi;
      chi_minus += std::min(0, c.chi);
      for (const auto& [edge, wrap] : c.edge_wrapping) r.edge_wrapping_total[edge] += wrap;
      r.components.push_back(std::move(c));
    }
    for (std::size_t e = 0; e < g_.edges().size(); ++e) {
      Integer expect = n_ * (a_[2 * e] > 0 ? a_[2 * e] : -a_[2 * e]);
      Integer got = 0;
      auto it = r.edge_wrapping_total.find(g_.edges()[e].name);
      if (it != r.edge_wrapping_total.end()) got = it->second;
      if (got != expect) throw Error("internal: edge wrapping does not match n * class");
    }
    r.certificate_lhs = Rational(Integer(-2 * chi_minus), n_);
    r.certificate_ok = r.certificate_lhs == r.certificate_rhs;
    log_ << "closed surface: chi = " << r.chi_total << ", n = " << n_.get_str()
         << ", certificate " << r.certificate_lhs.str() << " vs " << r.certificate_rhs.str()
         << (r.certificate_ok ? " OK" : " FAIL") << "\n";
    return r;
  }

  const GraphOfGroups& g_;
  std::vector<Integer> a_;
  GluingConfig cfg_;
  std::vector<Piece> pieces_;
  std::map<std::string, Integer> vertex_degree_;
  Integer n_ = 1;
  Rational norm_;
  std::ostringstream log_;
};

}  // namespace

GlueOutcome build_closed_surface(const GraphOfGroups& g, const std::vector<Rational>& a,
                                 const GluingConfig& cfg) {
  if (static_cast<int>(a.size()) != g.num_edge_ends())
    throw Error("class length must be twice the edge count");
  std::vector<Integer> ai;
  for (const auto& x : a) {
    if (!x.is_integer()) throw Error("gluing needs an integral class");
    ai.push_back(x.num());
  }
  return Gluer(g, std::move(ai), cfg).run();
}

bool certify(const ClosedSurfaceResult& r, const GraphOfGroups& g,
             const std::vector<Rational>& a) {
  int chi_minus = r.surface.chi_minus();
  Rational lhs = Rational(Integer(-2 * chi_minus), r.n);
  return lhs == gt_norm(g, a);
}

std::string glue_plan_report(const GraphOfGroups& g, const std::vector<Rational>& a,
                             const GluingConfig& cfg) {
  return build_closed_surface(g, a, cfg).plan;
}

std::string glue_outcome_to_json(const GlueOutcome& outcome) {
  nlohmann::json j;
  switch (outcome.kind) {
    case GlueOutcome::Kind::closed: {
      const auto& r = *outcome.closed;
      j["kind"] = "closed";
      j["n"] = r.n.get_str();
      j["chi"] = r.chi_total;
      j["certificate"] = {{"lhs", r.certificate_lhs.str()},
                          {"rhs", r.certificate_rhs.str()},
                          {"ok", r.certificate_ok}};
      j["components"] = nlohmann::json::array();
      for (const auto& c : r.components) {
        nlohmann::json wrap = nlohmann::json::object();
        for (const auto& [e, w] : c.edge_wrapping) wrap[e] = w.get_str();
        j["components"].push_back({{"genus", c.genus}, {"chi", c.chi}, {"wrapping", wrap}});
      }
      nlohmann::json wrap = nlohmann::json::object();
      for (const auto& [e, w] : r.edge_wrapping_total) wrap[e] = w.get_str();
      j["edge_wrapping"] = wrap;
      j["surface"] = nlohmann::json::parse(surface_to_json(r.surface));
      break;
    }
    case GlueOutcome::Kind::witness: {
      const auto& w = *outcome.witness;
      j["kind"] = "witness";
      j["family"] = w.zxz() ? "ZxZ" : "BS";
      j["p"] = w.p.get_str();
      j["q"] = w.q.get_str();
      j["edge"] = w.edge;
      j["explanation"] = w.explanation;
      break;
    }
    case GlueOutcome::Kind::norm_zero:
      j["kind"] = "norm_zero";
      j["norm"] = outcome.norm.str();
      break;
  }
  return j.dump(2);
}

GlueOutcome glue_outcome_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GlueOutcome out;
  std::string kind = j.at("kind");
  if (kind == "closed") {
    out.kind = GlueOutcome::Kind::closed;
    ClosedSurfaceResult r{
        .components = {},
        .n = Integer(j.at("n").get<std::string>()),
        .chi_total = j.at("chi"),
        .certificate_lhs = Rational::parse(j.at("certificate").at("lhs").get<std::string>()),
        .certificate_rhs = Rational::parse(j.at("certificate").at("rhs").get<std::string>()),
        .certificate_ok = j.at("certificate").at("ok"),
        .edge_wrapping_total = {},
        .surface = surface_from_json(j.at("surface").dump())};
    for (const auto& jc : j.at("components")) {
      ClosedComponent c;
      c.genus = jc.at("genus");
      c.chi = jc.at("chi");
      for (const auto& [e, w] : jc.at("wrapping").items())
        c.edge_wrapping[e] = Integer(w.get<std::string>());
      r.components.push_back(std::move(c));
    }
    for (const auto& [e, w] : j.at("edge_wrapping").items())
      r.edge_wrapping_total[e] = Integer(w.get<std::string>());
    out.norm = r.certificate_rhs;
    out.closed = std::move(r);
  } else if (kind == "witness") {
    out.kind = GlueOutcome::Kind::witness;
    NonHyperbolicWitness w;
    w.p = Integer(j.at("p").get<std::string>());
    w.q = Integer(j.at("q").get<std::string>());
    w.edge = j.at("edge");
    w.explanation = j.at("explanation");
    out.witness = std::move(w);
  } else if (kind == "norm_zero") {
    out.kind = GlueOutcome::Kind::norm_zero;
    out.norm = Rational::parse(j.at("norm").get<std::string>());
  } else {
    throw ParseError("unknown outcome kind '" + kind + "'");
  }
  return out;
}

}  // namespace sclkit
