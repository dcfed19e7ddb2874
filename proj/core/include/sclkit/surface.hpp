#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sclkit/scl.hpp"
#include "sclkit/words.hpp"

namespace sclkit {

struct EdgeLabel {
  enum class Kind { word, vertical, corner, seam };
  Kind kind = Kind::corner;
  int word = -1;   // for Kind::word: index into the surface word table
  int index = -1;  // letter index within that word
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct SurfaceEdge {
  int tail = 0, head = 0;
  EdgeLabel label;
  friend bool operator==(const SurfaceEdge&, const SurfaceEdge&) = default;
};

struct WalkStep {
  int edge = 0;
  bool forward = true;
  friend bool operator==(const WalkStep&, const WalkStep&) = default;
};

struct SurfaceFace {
  enum class Kind { rectangle, polygon, cylinder };
  Kind kind = Kind::polygon;
  std::vector<WalkStep> walk;  // closed walk bounding a disc
  friend bool operator==(const SurfaceFace&, const SurfaceFace&) = default;
};

struct SurfaceWord {
  std::string vertex;  // graph-of-groups vertex tag; empty for plain chains
  std::string text;    // rendered form
  CyclicWord word;
  friend bool operator==(const SurfaceWord& a, const SurfaceWord& b) {
    return a.vertex == b.vertex && a.text == b.text && a.word == b.word;
  }
};

struct BoundaryComponent {
  int word = -1;  // index into the word table
  int degree = 0;
  std::vector<std::pair<int, int>> darts;  // (face, walk position) traversal order
};

// Oriented compact surface presented by cells: explicit vertices, directed
// edges, and disc faces given by closed walks.  Interior edges are traversed
// once in each direction across their two face incidences; edges traversed
// once lie on the boundary.
class CombinatorialSurface {
 public:
  CombinatorialSurface(int vertices, std::vector<SurfaceEdge> edges,
                       std::vector<SurfaceFace> faces, std::vector<SurfaceWord> words);

  int num_vertices() const { return vertices_; }
  const std::vector<SurfaceEdge>& edges() const { return edges_; }
  const std::vector<SurfaceFace>& faces() const { return faces_; }
  const std::vector<SurfaceWord>& words() const { return words_; }

  int euler_characteristic() const;
  int chi_minus() const;

  struct ComponentInfo {
    int chi = 0;
    int boundary_count = 0;
    int genus = 0;
    bool closed() const { return boundary_count == 0; }
  };
  std::vector<ComponentInfo> components() const;
  bool connected() const { return components().size() == 1; }
  int component_of_boundary(int circle) const;
  int genus() const;  // connected surfaces

  const std::vector<BoundaryComponent>& boundary() const { return boundary_; }

  // Independent homology count used by verification: rank H1 from the exact
  // boundary maps of the cell structure.
  std::size_t h1_rank() const;

  friend bool operator==(const CombinatorialSurface& a, const CombinatorialSurface& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.faces_ == b.faces_ &&
           a.words_ == b.words_;
  }

 private:
  void validate_and_trace();

  int vertices_ = 0;
  std::vector<SurfaceEdge> edges_;
  std::vector<SurfaceFace> faces_;
  std::vector<SurfaceWord> words_;
  std::vector<BoundaryComponent> boundary_;
  std::vector<std::vector<std::pair<int, int>>> incidences_;  // per edge: (face, walk pos)
  std::vector<int> vertex_component_;
  int component_count_ = 0;
};

struct CoverSpec {
  Integer modulus = 1;
  std::vector<Integer> phi;  // one value per boundary component
};

struct SurfaceTransform {
  CombinatorialSurface surface;
  std::vector<int> boundary_base;  // new boundary circle -> source circle
};

// Regular Z/N cover determined by a boundary assignment summing to zero.
SurfaceTransform cyclic_cover(const CombinatorialSurface& s, const CoverSpec& spec);

SurfaceTransform disjoint_copies(const CombinatorialSurface& s, int k);

// Degree-2 cover trivial on every boundary class and nontrivial on a genus
// handle; boundary circles come back in pairs of equal degree.
SurfaceTransform pairing_cover(const CombinatorialSurface& s);

// Returns the surface itself at positive genus, else searches cyclic covers
// of modulus up to max_modulus for a connected positive-genus cover.
SurfaceTransform ensure_positive_genus(const CombinatorialSurface& s, int max_modulus = 12);

// Build the normal-form surface from explicit rectangle and polygon
// instances.  Positions are flattened word-letter indices; polygons list
// (rectangle instance, side) slots.
CombinatorialSurface assemble_instances(
    const std::vector<std::pair<CyclicWord, Integer>>& words, const Alphabet& alphabet,
    const Integer& degree, const std::vector<std::pair<int, int>>& rect_instances,
    const std::vector<std::vector<std::pair<int, int>>>& polygons,
    const std::string& vertex_tag = "");

// Instantiate an integral extremal solution.
CombinatorialSurface assemble(const SclProblem& p, const SclExtremal& extremal,
                              const std::string& vertex_tag = "");

// Disjoint union; emits (piece, circle) -> merged circle index.
CombinatorialSurface merge_surfaces(const std::vector<CombinatorialSurface>& pieces,
                                    std::vector<std::vector<int>>* circle_map = nullptr);

// Glue two distinct boundary circles through an annular face; the circles
// disappear from the boundary.  remaining_map sends old circle indices to
// new ones (-1 for the consumed pair).
CombinatorialSurface glue_through_cylinder(const CombinatorialSurface& s, int circle_a,
                                           int circle_b, std::vector<int>* remaining_map = nullptr);

std::string surface_to_json(const CombinatorialSurface& s);
CombinatorialSurface surface_from_json(const std::string& text);

}  // namespace sclkit
