#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "vtc/face_lattice.hpp"

using namespace vtc;

TEST_CASE("tetrahedron lattice has the binomial profile") {
  auto built = build_face_lattice(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  REQUIRE(built.ok);
  CHECK(built.lattice.faces[0].size() == 4);
  CHECK(built.lattice.faces[1].size() == 6);
  CHECK(built.lattice.faces[2].size() == 4);
  CHECK(built.lattice.faces[3].size() == 1);
  CHECK(built.lattice.top() == 0b1111);
}

TEST_CASE("cube lattice recovers edges as facet intersections") {
  Polyhedron cube = fixtures::cube_poly();
  CHECK(cube.lattice.faces[0].size() == 8);
  CHECK(cube.lattice.faces[1].size() == 12);
  CHECK(cube.lattice.faces[2].size() == 6);
  // every edge is in exactly two facets (ridge condition)
  for (VSet edge : cube.lattice.faces[1]) {
    int count = 0;
    for (VSet facet : cube.lattice.facets()) {
      if ((edge & facet) == edge) ++count;
    }
    CHECK(count == 2);
  }
}

TEST_CASE("octahedron, prisms, pyramids, polygons build") {
  CHECK(fixtures::octahedron_poly().lattice.faces[1].size() == 12);
  CHECK(fixtures::prism_poly(5).lattice.faces[1].size() == 15);
  CHECK(fixtures::pyramid_poly(6).lattice.faces[1].size() == 12);
  CHECK(fixtures::polygon_poly(7).lattice.faces[1].size() == 7);
  CHECK(fixtures::simplex_poly(4).lattice.faces[2].size() == 10);
}

TEST_CASE("segment is the valid dim-1 lattice") {
  auto built = build_face_lattice(1, 2, {{0}, {1}});
  REQUIRE(built.ok);
  CHECK(built.lattice.faces[0].size() == 2);
}

TEST_CASE("malformed inputs are rejected with codes") {
  CHECK(!build_face_lattice(3, 4, {}).ok);
  CHECK(build_face_lattice(3, 4, {{0, 1, 9}}).issues.front().code == "dangling-vertex-id");
  // square declared as dim 3
  CHECK(build_face_lattice(3, 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}).issues.front().code == "rank-mismatch");
  // nested facets
  auto nested = build_face_lattice(3, 4, {{0, 1, 2}, {0, 1}, {0, 2, 3}, {1, 2, 3}});
  CHECK(!nested.ok);
  // isolated vertex
  CHECK(build_face_lattice(2, 4, {{0, 1}, {1, 2}, {2, 0}}).issues.front().code == "isolated-vertex");
  // a vertex lying in every facet never forms an atom
  CHECK(!build_face_lattice(2, 3, {{0, 1, 2}, {0, 1}, {0, 2}}).ok);
}

TEST_CASE("restriction of a cube facet is a square lattice") {
  Polyhedron cube = fixtures::cube_poly();
  VSet facet = cube.lattice.facets()[0];
  FaceLattice sub = cube.lattice.restrict_to(2, facet);
  CHECK(sub.faces[0].size() == 4);
  CHECK(sub.faces[1].size() == 4);
  CHECK(sub.faces[2].size() == 1);
}

TEST_CASE("face isomorphism detects the square symmetry and its absence") {
  Polyhedron square = fixtures::polygon_poly(4);
  VSet top = square.lattice.top();
  // rotation 0->1->2->3 is a lattice automorphism
  CHECK(is_face_isomorphism(square.lattice, 2, top, square.lattice, top, {1, 2, 3, 0}));
  // the transposition (1 2) breaks edges
  CHECK(!is_face_isomorphism(square.lattice, 2, top, square.lattice, top, {0, 2, 1, 3}));
}
