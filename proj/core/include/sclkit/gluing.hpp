#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sclkit/graph_of_groups.hpp"
#include "sclkit/surface.hpp"

namespace sclkit {

struct GluingConfig {
  int genus_cover_bound = 12;
};

struct NonHyperbolicWitness {
  Integer p, q;  // t u^p t^-1 = u^q; Z x Z when |p| = |q| = 1
  std::string edge;
  std::string explanation;
  bool zxz() const { return (p == 1 || p == -1) && (q == 1 || q == -1); }
};

struct ClosedComponent {
  int genus = 0;
  int chi = 0;
  std::map<std::string, Integer> edge_wrapping;  // unsigned annulus multiplicity per edge
};

struct ClosedSurfaceResult {
  std::vector<ClosedComponent> components;
  Integer n = 1;  // the surface represents n * A
  int chi_total = 0;
  Rational certificate_lhs;  // -2 chi^- / n
  Rational certificate_rhs;  // gt_norm(A)
  bool certificate_ok = false;
  std::map<std::string, Integer> edge_wrapping_total;
  CombinatorialSurface surface;
};

struct GlueOutcome {
  enum class Kind { closed, witness, norm_zero };
  Kind kind = Kind::closed;
  std::optional<ClosedSurfaceResult> closed;
  std::optional<NonHyperbolicWitness> witness;
  Rational norm;
  std::string plan;  // per-edge construction log
};

// The full construction: per-vertex extremal surfaces, degree equalization,
// per-edge covers and annulus gluings; produces a certified closed surface
// representing a multiple of the class, a non-hyperbolicity witness, or the
// norm-zero outcome.
GlueOutcome build_closed_surface(const GraphOfGroups& g, const std::vector<Rational>& a,
                                 const GluingConfig& cfg = {});

bool certify(const ClosedSurfaceResult& r, const GraphOfGroups& g,
             const std::vector<Rational>& a);

std::string glue_plan_report(const GraphOfGroups& g, const std::vector<Rational>& a,
                             const GluingConfig& cfg = {});

std::string glue_outcome_to_json(const GlueOutcome& outcome);
GlueOutcome glue_outcome_from_json(const std::string& text);

}  // namespace sclkit
