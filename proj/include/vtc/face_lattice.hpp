#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vtc {

// Vertex sets are bitmasks over a polyhedron's local vertex ids (< 64).
using VSet = std::uint64_t;

inline VSet vbit(int v) { return VSet{1} << v; }
inline bool vtest(VSet s, int v) { return (s >> v) & 1; }
inline int vcount(VSet s) { return __builtin_popcountll(s); }

// Local vertex ids of a set, ascending.
std::vector<int> vset_members(VSet s);

struct LatticeIssue {
  std::string code;
  std::string message;
};

// Combinatorial face lattice of a convex polytope. Input is vertices plus
// facet vertex sets; every intermediate face is recovered as an intersection
// of facets (the maximal sets at each rank). faces[k] holds the rank-k faces
// as sorted bitmasks, k = 0..dim, with faces[dim] = {all vertices}.
struct FaceLattice {
  int dim = 0;
  int vertex_count = 0;
  std::vector<std::vector<VSet>> faces;

  VSet top() const { return faces[dim][0]; }
  const std::vector<VSet>& facets() const { return faces[dim - 1]; }

  // Index of `face` among faces[rank], or -1.
  int face_index(int rank, VSet face) const;

  // Rank of `face` if it is a face of the lattice, else -1.
  int rank_of(VSet face) const;

  // Sub-lattice of a rank-k face, as a lattice of dimension k over the same
  // vertex ids (vertex_count unchanged; absent vertices simply unused).
  FaceLattice restrict_to(int rank, VSet face) const;
};

struct LatticeBuild {
  bool ok = false;
  FaceLattice lattice;
  std::vector<LatticeIssue> issues;
};

// Builds and validates the lattice. On failure `issues` explains why; a
// partially built lattice is not returned.
LatticeBuild build_face_lattice(int dim, int vertex_count, const std::vector<std::vector<int>>& facet_vertices);

// True if `map` (vertex -> vertex, -1 outside the face) carries the faces of
// `src`'s sub-lattice at `src_face` exactly onto those of `dst_face` in `dst`.
bool is_face_isomorphism(const FaceLattice& src, int src_rank, VSet src_face, const FaceLattice& dst, VSet dst_face,
                         const std::vector<int>& map);

// Applies a vertex map to a set; asserts every member is mapped.
VSet vset_apply(VSet s, const std::vector<int>& map);

}  // namespace vtc
