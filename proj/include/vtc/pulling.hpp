#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtc/complex.hpp"

namespace vtc {

// Total order on the vertex classes of a complex; rank 0 is coned first.
// Requires the complex to have no returning diagonal, so the order restricts
// injectively to each polyhedron's vertices.
struct VertexOrdering {
  std::vector<int> class_rank;  // class id -> rank
};

// Default order is by class id; a seed order (class ids listed in cone order)
// permutes it. Throws std::invalid_argument naming a returning diagonal if
// one exists.
VertexOrdering order_vertices(const PolyhedralComplex& complex, const std::vector<int>* seed_order = nullptr);

// Iterated coning of one polyhedron: stage j cones every current cell
// containing the j-th vertex of `cone_sequence` to that vertex, replacing the
// cell by pyramids over its facets missing the vertex. Returns the final
// simplices as sorted local vertex tuples. Stage audits (cells stay inside
// the polyhedron, every wall is a boundary wall or shared by exactly two
// cells) throw std::logic_error on violation. `cone_sequence` must list all
// vertices of the polyhedron exactly once.
std::vector<std::vector<int>> cone_subdivide(const Polyhedron& poly, const std::vector<int>& cone_sequence);

struct Certificate {
  bool distinct_classes = false;   // every simplex has dim+1 distinct vertex classes
  bool pairings_simplicial = false;
  bool tiling_ok = false;
  bool volumes_balanced = true;    // vacuously true without coordinates
  std::vector<std::pair<int, std::string>> polyhedron_volumes;  // (poly, exact fraction)
  std::vector<ValidationIssue> failures;

  bool clean() const { return distinct_classes && pairings_simplicial && tiling_ok && volumes_balanced; }
  std::string summary() const;
};

struct Triangulation {
  struct Simplex {
    int source_poly = -1;
    std::vector<int> local_vertices;   // ascending local ids in the source polyhedron
    std::vector<int> vertex_classes;   // classes of those vertices, same positions
  };

  // Facet identification between two simplices; facets are named by the
  // opposite vertex position. position_map maps vertex positions of src to
  // positions of dst and sends src_opposite to dst_opposite.
  struct FacetGluing {
    int src_simplex = -1;
    int src_opposite = -1;
    int dst_simplex = -1;
    int dst_opposite = -1;
    std::vector<int> position_map;
    int origin_pairing = -1;  // base pairing index, or -1 for a wall interior to a polyhedron
  };

  int dim = 0;
  std::vector<Simplex> simplices;
  std::vector<FacetGluing> gluings;
  Certificate certificate;
};

// Pulls the whole complex: cone_subdivide per polyhedron under the global
// ordering, then matches the induced facet subdivisions across every pairing
// (a mismatch is a fatal std::logic_error naming the pairing). The returned
// triangulation carries the certificate produced by verify_triangulation.
Triangulation subdivide_complex(const PolyhedralComplex& complex, const VertexOrdering& ordering);

// Independent re-verification of a triangulation against the complex it
// claims to subdivide: class distinctness, simpliciality of every gluing,
// a recursive tiling audit per polyhedron, and, when the complex carries
// coordinates, an exact volume ledger per polyhedron.
Certificate verify_triangulation(const Triangulation& t, const PolyhedralComplex& complex);

// The triangulation as a polyhedral complex of its own: one simplex per
// polyhedron, gluings as pairings. Coordinates and tags are inherited.
PolyhedralComplex triangulation_to_complex(const Triangulation& t, const PolyhedralComplex& complex);

}  // namespace vtc
