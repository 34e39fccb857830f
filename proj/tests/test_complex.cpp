#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vtc/complex.hpp"

using namespace vtc;

TEST_CASE("free-boundary cube validates clean with eight singleton classes") {
  ComplexData data;
  data.dim = 3;
  data.polyhedra.push_back(fixtures::cube_poly());
  BuildOptions options;
  options.allow_free_boundary = true;
  auto built = PolyhedralComplex::build(std::move(data), options);
  REQUIRE(built.complex);
  CHECK(built.report.clean());
  CHECK(built.report.free_boundary);
  CHECK(built.complex->vertex_class_count() == 8);
  // face-class counts 8, 12, 6, 1; with vertex classes deleted the euler
  // characteristic is -12 + 6 - 1
  CHECK(built.complex->face_class_count(0) == 8);
  CHECK(built.complex->face_class_count(1) == 12);
  CHECK(built.complex->face_class_count(2) == 6);
  CHECK(built.complex->face_class_count(3) == 1);
  CHECK(built.complex->euler_characteristic() == -7);
}

TEST_CASE("closed mode rejects the unglued cube") {
  ComplexData data;
  data.dim = 3;
  data.polyhedra.push_back(fixtures::cube_poly());
  auto built = PolyhedralComplex::build(std::move(data), {});
  CHECK(!built.complex);
  CHECK(built.report.errors.front().code == "unpaired-facet");
}

TEST_CASE("figure-eight pattern: classes and euler characteristic") {
  PolyhedralComplex cx = fixtures::figure_eight_complex();
  CHECK(cx.closed());
  CHECK(cx.vertex_class_count() == 1);
  CHECK(cx.vertex_class_members()[0].size() == 8);
  CHECK(cx.face_class_count(1) == 2);  // two edge classes
  CHECK(cx.face_class_count(2) == 4);
  CHECK(cx.face_class_count(3) == 2);
  // the oracle agrees with the union-find classes
  CHECK(oracles::sweep_class_count(cx) == 1);
  // euler characteristic of the complex minus its vertex classes: the cusped
  // manifold value 0 (= -2 + 4 - 2)
  CHECK(cx.euler_characteristic() == 0);
}

TEST_CASE("whitehead pattern: classes of sizes four and two") {
  PolyhedralComplex cx = fixtures::whitehead_complex();
  CHECK(cx.vertex_class_count() == 2);
  std::vector<size_t> sizes;
  for (const auto& members : cx.vertex_class_members()) sizes.push_back(members.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{2, 4});
  CHECK(cx.face_class_count(1) == 3);
  CHECK(oracles::sweep_class_count(cx) == 2);
  CHECK(cx.euler_characteristic() == 0);
}

TEST_CASE("double of a tetrahedron is a closed complex with four classes") {
  PolyhedralComplex cx = fixtures::double_complex(fixtures::simplex_poly(3));
  CHECK(cx.closed());
  CHECK(cx.vertex_class_count() == 4);
  CHECK(cx.euler_characteristic() == -6 + 4 - 2);
}

TEST_CASE("non-bijective pairing map is rejected") {
  ComplexData data;
  data.dim = 3;
  data.polyhedra.push_back(fixtures::simplex_poly(3));
  data.polyhedra.push_back(fixtures::simplex_poly(3));
  FacetPairing pr;
  pr.src = {0, 0};
  pr.dst = {1, 0};
  pr.vertex_map = {{0, 0}, {1, 0}, {2, 2}};  // two sources to one target
  data.pairings.push_back(pr);
  auto built = PolyhedralComplex::build(std::move(data), {});
  CHECK(!built.complex);
  CHECK(built.report.errors.front().code == "non-bijective-pairing");
}

TEST_CASE("pairing that breaks the facet lattice is rejected") {
  // prism squares have a lattice; map a square to itself crossing edges
  ComplexData data;
  data.dim = 3;
  data.polyhedra.push_back(fixtures::prism_poly(4));
  data.polyhedra.push_back(fixtures::prism_poly(4));
  const auto& lat = data.polyhedra[0].lattice;
  // find a square facet
  int square = -1;
  for (size_t f = 0; f < lat.facets().size(); ++f) {
    if (vcount(lat.facets()[f]) == 4) {
      square = static_cast<int>(f);
      break;
    }
  }
  REQUIRE(square >= 0);
  auto verts = vset_members(lat.facets()[square]);
  FacetPairing pr;
  pr.src = {0, square};
  pr.dst = {1, square};
  // swap two adjacent targets to break the edge structure
  pr.vertex_map = {{verts[0], verts[1]}, {verts[1], verts[0]}, {verts[2], verts[2]}, {verts[3], verts[3]}};
  data.pairings.push_back(pr);
  auto built = PolyhedralComplex::build(std::move(data), {});
  if (built.complex) {
    // the swap happened to be an automorphism for this labeling; not a failure
    // of the test intent, but the fixture should be chosen so it is not
    CHECK(false);
  } else {
    CHECK(built.report.errors.front().code == "pairing-not-lattice-iso");
  }
}

TEST_CASE("tag-mismatched pairing is rejected") {
  Polyhedron a = fixtures::simplex_poly(3, VertexTag::Ideal);
  Polyhedron b = fixtures::simplex_poly(3, VertexTag::Hyperideal);
  ComplexData data;
  data.dim = 3;
  data.polyhedra = {a, b};
  FacetPairing pr;
  pr.src = {0, 0};
  pr.dst = {1, 0};
  pr.vertex_map = {{0, 0}, {1, 1}, {2, 2}};
  data.pairings.push_back(pr);
  auto built = PolyhedralComplex::build(std::move(data), {});
  CHECK(!built.complex);
  CHECK(built.report.errors.front().code == "pairing-tag-mismatch");
}

TEST_CASE("dangling pairing ids are reported with locations") {
  ComplexData data;
  data.dim = 3;
  data.polyhedra.push_back(fixtures::simplex_poly(3));
  FacetPairing pr;
  pr.src = {0, 0};
  pr.dst = {3, 0};
  pr.vertex_map = {{0, 0}, {1, 1}, {2, 2}};
  data.pairings.push_back(pr);
  auto built = PolyhedralComplex::build(std::move(data), {});
  CHECK(!built.complex);
  CHECK(built.report.errors.front().code == "dangling-id");
  CHECK(built.report.errors.front().where == "pairing 0");
}

TEST_CASE("vertex classes are independent of pairing order") {
  PolyhedralComplex reference = fixtures::figure_eight_complex();
  std::vector<std::vector<int>> expect;
  for (int p = 0; p < reference.polyhedron_count(); ++p) {
    expect.push_back({});
    for (int v = 0; v < reference.polyhedron(p).vertex_count(); ++v) {
      expect.back().push_back(reference.vertex_class(p, v));
    }
  }
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexData data;
    data.dim = 3;
    data.polyhedra = {fixtures::simplex_poly(3), fixtures::simplex_poly(3)};
    std::vector<FacetPairing> pairings = reference.pairings();
    for (size_t i = pairings.size(); i > 1; --i) std::swap(pairings[i - 1], pairings[rng() % i]);
    data.pairings = pairings;
    PolyhedralComplex shuffled = fixtures::build_or_throw(std::move(data));
    for (int p = 0; p < shuffled.polyhedron_count(); ++p) {
      for (int v = 0; v < shuffled.polyhedron(p).vertex_count(); ++v) {
        CHECK(shuffled.vertex_class(p, v) == expect[p][v]);
      }
    }
  }
}

TEST_CASE("replay_word follows pairings and rejects inapplicable letters") {
  PolyhedralComplex cx = fixtures::figure_eight_complex();
  const FacetPairing& pr = cx.pairings()[0];
  int v = pr.vertex_map[0].first;
  auto landed = replay_word(cx, {1}, {pr.src.poly, v});
  REQUIRE(landed);
  CHECK(landed->poly == pr.dst.poly);
  CHECK(landed->vertex == pr.vertex_map[0].second);
  // inverse letter returns
  auto back = replay_word(cx, {1, -1}, {pr.src.poly, v});
  REQUIRE(back);
  CHECK(*back == VertexInstance{pr.src.poly, v});
  // a vertex off the facet cannot cross
  VSet facet = cx.polyhedron(pr.src.poly).lattice.facets()[pr.src.facet];
  int off = -1;
  for (int u = 0; u < 4; ++u) {
    if (!vtest(facet, u)) off = u;
  }
  CHECK(!replay_word(cx, {1}, {pr.src.poly, off}));
}
