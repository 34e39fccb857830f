#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vtc/complex.hpp"
#include "vtc/face_lattice.hpp"
#include "vtc/rational.hpp"

namespace vtc {

// Convex Euclidean polytope with exact rational vertex coordinates relative
// to the projective unit-ball model: ideal vertices on the unit sphere,
// hyperideal vertices strictly outside the closed ball.
struct EuclideanFellow {
  FaceLattice lattice;
  std::vector<RationalPoint> coords;
  std::vector<VertexTag> tags;

  int dim() const { return lattice.dim; }
};

struct FellowConditionResult {
  bool checked = false;  // false when vacuous in this dimension
  bool passed = true;
  std::vector<ValidationIssue> violations;
};

struct FellowReport {
  FellowConditionResult tags_consistent;   // one tag per vertex, coords well-formed
  FellowConditionResult ideal_on_sphere;   // |v|^2 = 1
  FellowConditionResult hyperideal_outside;// |v|^2 > 1
  FellowConditionResult convex_supporting; // facets flat and strictly supporting
  FellowConditionResult ridges_meet_ball;  // min |x|^2 over codim-2 faces <= 1 (dim >= 3)
  std::vector<ValidationIssue> notes;      // e.g. truncation planes crossing inside the ball

  bool clean() const;
};

FellowReport validate_fellow(const EuclideanFellow& fellow);

// Polar hyperplane {x : <x, pole> = 1} of a hyperideal vertex. A unit-sphere
// point x lies on it exactly when the segment from x to the pole is tangent
// to the sphere at x.
struct TruncationPlane {
  RationalPoint pole;

  bool contains(const RationalPoint& x) const { return dot(x, pole) == 1; }
};

// Throws std::invalid_argument ("not hyperideal") when |v|^2 <= 1.
TruncationPlane truncation_plane(const RationalPoint& v);

struct OrthogonalityEntry {
  int vertex = -1;
  int facet = -1;
  bool degenerate_pole = false;  // facet hyperplane through the origin
  Rat residual;                  // <v, pole(facet)> - 1; must be exactly 0
};

struct OrthogonalityReport {
  std::vector<OrthogonalityEntry> entries;
  bool all_zero = true;
};

// For every hyperideal vertex and every incident facet: the facet hyperplane
// written as {x : <x, a> = 1} must satisfy <v, a> = 1 exactly, which is the
// Minkowski-orthogonality of the truncation plane H(v) and the lateral
// hyperplane. Requires a fellow whose validate_fellow report is clean.
OrthogonalityReport check_orthogonality(const EuclideanFellow& fellow);

struct GeometricSimplex {
  std::vector<RationalPoint> vertices;  // dim + 1 points
  std::vector<VertexTag> tags;
};

struct VolumeLedger {
  std::vector<Rat> simplex_volumes;  // unsigned
  Rat subdivision_total = 0;
  Rat polytope_volume = 0;           // centroid-fan oracle
  bool balanced = false;
};

// Realizes a combinatorial subdivision (tuples of the fellow's vertex ids)
// as straight simplices and balances the exact volume ledger against an
// independent centroid-fan decomposition of the polytope. Degenerate
// simplices and ledger mismatches throw std::invalid_argument. Only the
// coordinate data is consulted; tags ride along for reporting.
std::pair<std::vector<GeometricSimplex>, VolumeLedger> realize_subdivision(
    const EuclideanFellow& fellow, const std::vector<std::vector<int>>& simplices);

// --- exact helpers (also used by tests as oracles) ---

// Signed volume of the simplex spanned by points[0..n] in R^n.
Rat simplex_signed_volume(const std::vector<RationalPoint>& points);

// Exact volume of the polytope via recursive centroid fans.
Rat exact_polytope_volume(const FaceLattice& lattice, const std::vector<RationalPoint>& coords);

// Exact minimum of |x|^2 over the convex hull of `points`.
Rat min_norm_squared_over_hull(const std::vector<RationalPoint>& points);

}  // namespace vtc
