#pragma once

#include <map>
#include <string>
#include <vector>

#include "sclkit/linalg.hpp"
#include "sclkit/words.hpp"

namespace sclkit {

struct GraphEdge {
  std::string name;
  std::string from, to;
  CyclicWord wfrom, wto;  // attaching words, cyclically reduced
};

// Finite connected graph with free vertex groups and cyclic edge groups;
// both attaching circles wrap the edge annulus core with degree +1.
class GraphOfGroups {
 public:
  static GraphOfGroups parse(const std::string& text);

  const std::vector<std::pair<std::string, Alphabet>>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const Alphabet& alphabet_of(const std::string& vertex) const;
  bool has_vertex(const std::string& name) const;

  int num_edge_ends() const { return 2 * static_cast<int>(edges_.size()); }
  // End 2e is the `from` end of edge e; end 2e+1 the `to` end.
  const std::string& end_vertex(int end) const;
  const CyclicWord& end_word(int end) const;

 private:
  std::vector<std::pair<std::string, Alphabet>> vertices_;  // sorted by name
  std::vector<GraphEdge> edges_;                            // sorted by name
};

std::string presentation(const GraphOfGroups& g);

// Map Z^{2E} -> (sum_v H1(G_v)) + Z^E sending an edge end to the
// abelianization of its attaching word plus the core coordinate of its edge.
IntMatrix mayer_vietoris_matrix(const GraphOfGroups& g);

std::vector<IntVector> h2_lattice(const GraphOfGroups& g);

bool in_kernel(const GraphOfGroups& g, const std::vector<Rational>& a);

Chain boundary_chain(const GraphOfGroups& g, const std::vector<Rational>& a,
                     const std::string& vertex);

Rational gt_norm(const GraphOfGroups& g, const std::vector<Rational>& a, int jobs = 1);

struct NormBallFan {
  struct Ray {
    Integer x, y;  // primitive direction in the (a1, a2) plane
    Rational norm;
    bool lineality = false;
  };
  struct Cone {
    int ray_a = 0, ray_b = 0;  // adjacent ray indices
    Rational fx, fy;           // certified linear functional on the cone
  };
  std::vector<Ray> rays;    // cyclic counterclockwise order
  std::vector<Cone> cones;  // cone i spans rays i, i+1 (mod size)
  std::vector<std::pair<Rational, Rational>> ball_vertices;
  bool unbounded = false;
};

NormBallFan unit_ball_2d(const GraphOfGroups& g, const std::vector<Rational>& a1,
                         const std::vector<Rational>& a2, int max_depth = 64);

std::string fan_to_json(const NormBallFan& fan);
NormBallFan fan_from_json(const std::string& text);

}  // namespace sclkit
