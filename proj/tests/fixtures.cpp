#include "fixtures.hpp"

namespace vtc::fixtures {

namespace {

struct TableRow {
  int src_poly;
  int src_facet;
  int dst_poly;
  int dst_facet;
  std::vector<std::pair<int, int>> map;
};

PolyhedralComplex from_table(const std::vector<Polyhedron>& polys, const std::vector<TableRow>& table) {
  ComplexData data;
  data.dim = polys[0].lattice.dim;
  data.polyhedra = polys;
  for (const TableRow& row : table) {
    FacetPairing pr;
    pr.src = {row.src_poly, row.src_facet};
    pr.dst = {row.dst_poly, row.dst_facet};
    pr.vertex_map = row.map;
    data.pairings.push_back(std::move(pr));
  }
  return build_or_throw(std::move(data));
}

}  // namespace

PolyhedralComplex figure_eight_complex(VertexTag tag) {
  // Two ideal tetrahedra; facet ids follow the sorted lattice order
  // 0={0,1,2} 1={0,1,3} 2={0,2,3} 3={1,2,3}. One vertex class, two edge
  // classes of size six.
  Polyhedron tet = simplex_poly(3, tag);
  return from_table({tet, tet}, {
                                    {0, 0, 1, 0, {{0, 0}, {1, 1}, {2, 2}}},
                                    {0, 1, 1, 2, {{0, 0}, {1, 3}, {3, 2}}},
                                    {0, 2, 1, 3, {{0, 1}, {2, 3}, {3, 2}}},
                                    {0, 3, 1, 1, {{1, 1}, {2, 3}, {3, 0}}},
                                });
}

PolyhedralComplex whitehead_complex(VertexTag tag) {
  // One ideal octahedron (vertices 0..5 = +x,-x,+y,-y,+z,-z), eight faces in
  // four self-pairings. Two vertex classes of sizes four and two, three edge
  // classes of size four.
  Polyhedron oct = octahedron_poly(tag);
  return from_table({oct}, {
                               {0, 0, 0, 3, {{0, 1}, {2, 4}, {4, 3}}},
                               {0, 1, 0, 7, {{1, 1}, {2, 5}, {4, 3}}},
                               {0, 2, 0, 4, {{0, 0}, {3, 5}, {4, 2}}},
                               {0, 5, 0, 6, {{1, 0}, {2, 5}, {5, 3}}},
                           });
}

}  // namespace vtc::fixtures
