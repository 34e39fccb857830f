// Programmatic fixtures shared across the test suites. The named gluing
// tables (figure-eight, Whitehead) also exist as files under fixtures/; the
// builders here must stay in sync with those files (test_io checks this).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vtc/complex.hpp"
#include "vtc/rational.hpp"

namespace vtc::fixtures {

inline Polyhedron make_polyhedron(int dim, int vertices, const std::vector<std::vector<int>>& facets,
                                  VertexTag tag = VertexTag::Ideal) {
  auto built = build_face_lattice(dim, vertices, facets);
  if (!built.ok) throw std::runtime_error("fixture lattice failed: " + built.issues.front().message);
  Polyhedron poly;
  poly.lattice = std::move(built.lattice);
  poly.tags.assign(vertices, tag);
  return poly;
}

inline Polyhedron simplex_poly(int dim, VertexTag tag = VertexTag::Ideal) {
  std::vector<std::vector<int>> facets;
  for (int skip = 0; skip <= dim; ++skip) {
    std::vector<int> facet;
    for (int v = 0; v <= dim; ++v) {
      if (v != skip) facet.push_back(v);
    }
    facets.push_back(facet);
  }
  return make_polyhedron(dim, dim + 1, facets, tag);
}

// Cube with the usual binary vertex labels (bit i = coordinate i).
inline Polyhedron cube_poly(VertexTag tag = VertexTag::Hyperideal) {
  std::vector<std::vector<int>> facets;
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      std::vector<int> facet;
      for (int v = 0; v < 8; ++v) {
        if (((v >> axis) & 1) == side) facet.push_back(v);
      }
      facets.push_back(facet);
    }
  }
  return make_polyhedron(3, 8, facets, tag);
}

// Octahedron with vertices 0..5 = +x, -x, +y, -y, +z, -z.
inline Polyhedron octahedron_poly(VertexTag tag = VertexTag::Ideal) {
  std::vector<std::vector<int>> facets;
  for (int sx = 0; sx < 2; ++sx) {
    for (int sy = 0; sy < 2; ++sy) {
      for (int sz = 0; sz < 2; ++sz) {
        facets.push_back({sx, 2 + sy, 4 + sz});
      }
    }
  }
  return make_polyhedron(3, 6, facets, tag);
}

inline Polyhedron regular_ideal_octahedron() {
  Polyhedron poly = octahedron_poly(VertexTag::Ideal);
  std::vector<RationalPoint> coords;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {+1, -1}) {
      RationalPoint p(3, Rat(0));
      p[axis] = sign;
      coords.push_back(p);
    }
  }
  poly.coords = std::move(coords);
  return poly;
}

// n-gon (dim 2) with edges (i, i+1 mod n).
inline Polyhedron polygon_poly(int n, VertexTag tag = VertexTag::Ideal) {
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n});
  return make_polyhedron(2, n, facets, tag);
}

// Prism over an n-gon: vertices 0..n-1 bottom, n..2n-1 top.
inline Polyhedron prism_poly(int n, VertexTag tag = VertexTag::Hyperideal) {
  std::vector<std::vector<int>> facets;
  std::vector<int> bottom, top;
  for (int i = 0; i < n; ++i) {
    bottom.push_back(i);
    top.push_back(n + i);
  }
  facets.push_back(bottom);
  facets.push_back(top);
  for (int i = 0; i < n; ++i) {
    facets.push_back({i, (i + 1) % n, n + i, n + (i + 1) % n});
  }
  return make_polyhedron(3, 2 * n, facets, tag);
}

// Pyramid over an n-gon: base 0..n-1, apex n.
inline Polyhedron pyramid_poly(int n, VertexTag tag = VertexTag::Hyperideal) {
  std::vector<std::vector<int>> facets;
  std::vector<int> base;
  for (int i = 0; i < n; ++i) base.push_back(i);
  facets.push_back(base);
  for (int i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n, n});
  return make_polyhedron(3, n + 1, facets, tag);
}

inline PolyhedralComplex build_or_throw(ComplexData data, bool allow_free_boundary = false) {
  BuildOptions options;
  options.allow_free_boundary = allow_free_boundary;
  auto built = PolyhedralComplex::build(std::move(data), options);
  if (!built.complex) throw std::runtime_error("fixture build failed:\n" + built.report.summary());
  return std::move(*built.complex);
}

// Two copies of one polyhedron glued facet-by-facet; `relabel` permutes the
// second copy's vertex ids (identity when empty).
inline PolyhedralComplex double_complex(const Polyhedron& poly, std::vector<int> relabel = {}) {
  if (relabel.empty()) {
    relabel.resize(poly.vertex_count());
    for (int v = 0; v < poly.vertex_count(); ++v) relabel[v] = v;
  }
  ComplexData data;
  data.dim = poly.lattice.dim;
  Polyhedron copy = poly;
  // Rebuild the copy's lattice over relabeled vertex ids.
  std::vector<std::vector<int>> facets;
  for (VSet f : poly.lattice.facets()) {
    std::vector<int> facet;
    for (int v : vset_members(f)) facet.push_back(relabel[v]);
    facets.push_back(facet);
  }
  auto rebuilt = build_face_lattice(poly.lattice.dim, poly.vertex_count(), facets);
  if (!rebuilt.ok) throw std::runtime_error("double_complex relabel failed");
  copy.lattice = std::move(rebuilt.lattice);
  copy.tags.assign(poly.vertex_count(), VertexTag::Ideal);
  for (int v = 0; v < poly.vertex_count(); ++v) copy.tags[relabel[v]] = poly.tags[v];
  if (poly.coords) {
    std::vector<RationalPoint> coords(poly.vertex_count());
    for (int v = 0; v < poly.vertex_count(); ++v) coords[relabel[v]] = (*poly.coords)[v];
    copy.coords = std::move(coords);
  }
  data.polyhedra.push_back(poly);
  data.polyhedra.push_back(std::move(copy));
  for (size_t f = 0; f < poly.lattice.facets().size(); ++f) {
    FacetPairing pr;
    pr.src = {0, static_cast<int>(f)};
    VSet image = 0;
    for (int v : vset_members(poly.lattice.facets()[f])) image |= vbit(relabel[v]);
    pr.dst = {1, data.polyhedra[1].lattice.face_index(data.dim - 1, image)};
    for (int v : vset_members(poly.lattice.facets()[f])) pr.vertex_map.emplace_back(v, relabel[v]);
    data.pairings.push_back(std::move(pr));
  }
  return build_or_throw(std::move(data));
}

// Square torus: one square, left-right and bottom-top edge gluings.
// Vertices 0,1,2,3 counterclockwise: 0 bottom-left, 1 bottom-right,
// 2 top-right, 3 top-left.
inline PolyhedralComplex square_torus() {
  ComplexData data;
  data.dim = 2;
  data.polyhedra.push_back(make_polyhedron(2, 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  FacetPairing left_right;  // edge 3-0 -> edge 1-2 (x translation)
  left_right.src = {0, 0};
  left_right.dst = {0, 0};
  // facet ids come from the sorted lattice order; resolve them by content.
  auto facet_id = [&](int a, int b) {
    return data.polyhedra[0].lattice.face_index(1, vbit(a) | vbit(b));
  };
  left_right.src = {0, facet_id(3, 0)};
  left_right.dst = {0, facet_id(1, 2)};
  left_right.vertex_map = {{0, 1}, {3, 2}};
  FacetPairing bottom_top;  // edge 0-1 -> edge 3-2 (y translation)
  bottom_top.src = {0, facet_id(0, 1)};
  bottom_top.dst = {0, facet_id(3, 2)};
  bottom_top.vertex_map = {{0, 3}, {1, 2}};
  data.pairings.push_back(left_right);
  data.pairings.push_back(bottom_top);
  return build_or_throw(std::move(data));
}

// The two-tetrahedra figure-eight-complement pattern and the one-octahedron
// Whitehead pattern; gluing tables derived once by exhaustive search over
// self-gluings filtered by the published invariants (class counts and sizes,
// torus vertex links, first homology) and frozen here. test_complex and
// test_presentation re-check those invariants.
PolyhedralComplex figure_eight_complex(VertexTag tag = VertexTag::Ideal);
PolyhedralComplex whitehead_complex(VertexTag tag = VertexTag::Ideal);

}  // namespace vtc::fixtures
