#include "vtc/pulling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vtc/geometry.hpp"

namespace vtc {

VertexOrdering order_vertices(const PolyhedralComplex& complex, const std::vector<int>* seed_order) {
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    const int n = complex.polyhedron(p).vertex_count();
    for (int v = 0; v < n; ++v) {
      for (int w = v + 1; w < n; ++w) {
        if (complex.vertex_class(p, v) == complex.vertex_class(p, w)) {
          throw std::invalid_argument("returning diagonal (polyhedron " + std::to_string(p) + ", vertices " +
                                      std::to_string(v) + "," + std::to_string(w) + "); cover first");
        }
      }
    }
  }
  const int classes = complex.vertex_class_count();
  VertexOrdering ordering;
  ordering.class_rank.resize(classes);
  if (!seed_order) {
    for (int c = 0; c < classes; ++c) ordering.class_rank[c] = c;
    return ordering;
  }
  if (static_cast<int>(seed_order->size()) != classes) {
    throw std::invalid_argument("seed order must list every vertex class exactly once");
  }
  std::vector<bool> seen(classes, false);
  for (int rank = 0; rank < classes; ++rank) {
    int c = (*seed_order)[rank];
    if (c < 0 || c >= classes || seen[c]) {
      throw std::invalid_argument("seed order is not a permutation of the vertex classes");
    }
    seen[c] = true;
    ordering.class_rank[c] = rank;
  }
  return ordering;
}

namespace {

// A cell of the running subdivision, carried as its full face lattice over
// the polyhedron's local vertex ids.
struct Cell {
  std::vector<std::vector<VSet>> faces;  // faces[k] sorted, k = 0..dim

  int dim() const { return static_cast<int>(faces.size()) - 1; }
  VSet verts() const { return faces.back()[0]; }
  const std::vector<VSet>& facets() const { return faces[faces.size() - 2]; }
};

Cell cell_from_lattice(const FaceLattice& lattice) {
  Cell c;
  c.faces = lattice.faces;
  return c;
}

Cell restrict_cell(const Cell& cell, int rank, VSet face) {
  Cell sub;
  sub.faces.assign(rank + 1, {});
  for (int k = 0; k <= rank; ++k) {
    for (VSet f : cell.faces[k]) {
      if ((f & face) == f) sub.faces[k].push_back(f);
    }
  }
  return sub;
}

Cell pyramid(const Cell& base, int apex) {
  const int m = base.dim();
  Cell out;
  out.faces.assign(m + 2, {});
  out.faces[0] = base.faces[0];
  out.faces[0].push_back(vbit(apex));
  std::sort(out.faces[0].begin(), out.faces[0].end());
  for (int k = 1; k <= m + 1; ++k) {
    if (k <= m) out.faces[k] = base.faces[k];
    if (k - 1 <= m) {
      for (VSet f : base.faces[k - 1]) out.faces[k].push_back(f | vbit(apex));
    }
    std::sort(out.faces[k].begin(), out.faces[k].end());
  }
  return out;
}

// Stage audit: cells stay inside the polyhedron and every wall is either a
// boundary wall (inside an original facet) or shared by exactly two cells.
void audit_stage(const std::vector<Cell>& cells, const Polyhedron& poly, int stage) {
  const VSet all = poly.lattice.top();
  std::map<VSet, int> wall_count;
  std::set<VSet> tops;
  for (const Cell& cell : cells) {
    if ((cell.verts() & all) != cell.verts()) {
      throw std::logic_error("stage " + std::to_string(stage) + ": cell leaves the polyhedron");
    }
    if (!tops.insert(cell.verts()).second) {
      throw std::logic_error("stage " + std::to_string(stage) + ": duplicate cell");
    }
    for (VSet wall : cell.facets()) ++wall_count[wall];
  }
  for (const auto& [wall, count] : wall_count) {
    if (count == 2) continue;
    bool boundary = false;
    for (VSet facet : poly.lattice.facets()) {
      if ((wall & facet) == wall) {
        boundary = true;
        break;
      }
    }
    if (!(boundary && count == 1)) {
      throw std::logic_error("stage " + std::to_string(stage) + ": wall shared by " + std::to_string(count) +
                             " cells is not a boundary wall");
    }
  }
}

std::vector<Cell> staged_coning(const Polyhedron& poly, const std::vector<int>& cone_sequence) {
  const int n = poly.lattice.dim;
  {
    std::vector<int> sorted = cone_sequence;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(poly.vertex_count());
    for (int v = 0; v < poly.vertex_count(); ++v) expect[v] = v;
    if (sorted != expect) {
      throw std::invalid_argument("cone sequence must list every vertex of the polyhedron exactly once");
    }
  }

  std::vector<Cell> cells{cell_from_lattice(poly.lattice)};
  for (size_t stage = 0; stage < cone_sequence.size(); ++stage) {
    const int apex = cone_sequence[stage];
    std::vector<Cell> next;
    for (const Cell& cell : cells) {
      if (!vtest(cell.verts(), apex)) {
        next.push_back(cell);
        continue;
      }
      for (VSet facet : cell.facets()) {
        if (vtest(facet, apex)) continue;
        next.push_back(pyramid(restrict_cell(cell, n - 1, facet), apex));
      }
    }
    cells = std::move(next);
    audit_stage(cells, poly, static_cast<int>(stage));
  }

  for (const Cell& cell : cells) {
    if (vcount(cell.verts()) != n + 1) {
      throw std::logic_error("final cell is not a simplex: " + std::to_string(vcount(cell.verts())) + " vertices");
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.verts() < b.verts(); });
  return cells;
}

}  // namespace

std::vector<std::vector<int>> cone_subdivide(const Polyhedron& poly, const std::vector<int>& cone_sequence) {
  std::vector<std::vector<int>> out;
  for (const Cell& cell : staged_coning(poly, cone_sequence)) {
    out.push_back(vset_members(cell.verts()));
  }
  return out;
}

std::string Certificate::summary() const {
  std::ostringstream os;
  os << (clean() ? "clean" : "FAILED") << " (distinct-classes " << (distinct_classes ? "ok" : "FAIL")
     << ", simplicial-pairings " << (pairings_simplicial ? "ok" : "FAIL") << ", tiling " << (tiling_ok ? "ok" : "FAIL")
     << ", volumes " << (volumes_balanced ? "ok" : "FAIL") << ")";
  for (const auto& f : failures) os << "\n  " << f.code << " at " << f.where << ": " << f.message;
  return os.str();
}

namespace {

std::vector<int> local_cone_sequence(const PolyhedralComplex& complex, const VertexOrdering& ordering, int poly) {
  std::vector<int> seq(complex.polyhedron(poly).vertex_count());
  for (size_t v = 0; v < seq.size(); ++v) seq[v] = static_cast<int>(v);
  std::sort(seq.begin(), seq.end(), [&](int a, int b) {
    return ordering.class_rank[complex.vertex_class(poly, a)] < ordering.class_rank[complex.vertex_class(poly, b)];
  });
  return seq;
}

VSet tuple_to_set(const std::vector<int>& tuple) {
  VSet s = 0;
  for (int v : tuple) s |= vbit(v);
  return s;
}

}  // namespace

Triangulation subdivide_complex(const PolyhedralComplex& complex, const VertexOrdering& ordering) {
  const int dim = complex.dim();
  Triangulation t;
  t.dim = dim;

  // Per-polyhedron subdivisions, simplices in deterministic order.
  std::vector<std::vector<std::vector<int>>> per_poly(complex.polyhedron_count());
  std::vector<int> simplex_offset(complex.polyhedron_count() + 1, 0);
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    per_poly[p] = cone_subdivide(complex.polyhedron(p), local_cone_sequence(complex, ordering, p));
    simplex_offset[p + 1] = simplex_offset[p] + static_cast<int>(per_poly[p].size());
    for (const auto& tuple : per_poly[p]) {
      Triangulation::Simplex s;
      s.source_poly = p;
      s.local_vertices = tuple;
      for (int v : tuple) s.vertex_classes.push_back(complex.vertex_class(p, v));
      t.simplices.push_back(std::move(s));
    }
  }

  // Wall bookkeeping per polyhedron: wall vertex set -> owning simplices.
  std::vector<std::map<VSet, std::vector<int>>> walls(complex.polyhedron_count());
  for (size_t si = 0; si < t.simplices.size(); ++si) {
    const auto& s = t.simplices[si];
    VSet all = tuple_to_set(s.local_vertices);
    for (int v : s.local_vertices) {
      walls[s.source_poly][all & ~vbit(v)].push_back(static_cast<int>(si));
    }
  }

  auto position_of = [&](int simplex, int local_vertex) {
    const auto& lv = t.simplices[simplex].local_vertices;
    return static_cast<int>(std::lower_bound(lv.begin(), lv.end(), local_vertex) - lv.begin());
  };
  auto opposite_of = [&](int simplex, VSet wall) {
    VSet all = tuple_to_set(t.simplices[simplex].local_vertices);
    return position_of(simplex, vset_members(all & ~wall)[0]);
  };

  // Interior walls glue the two incident simplices by the identity on local
  // vertices.
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    for (const auto& [wall, owners] : walls[p]) {
      if (owners.size() != 2) continue;
      Triangulation::FacetGluing g;
      g.src_simplex = owners[0];
      g.dst_simplex = owners[1];
      g.src_opposite = opposite_of(owners[0], wall);
      g.dst_opposite = opposite_of(owners[1], wall);
      g.position_map.assign(dim + 1, -1);
      g.position_map[g.src_opposite] = g.dst_opposite;
      for (int v : vset_members(wall)) g.position_map[position_of(owners[0], v)] = position_of(owners[1], v);
      g.origin_pairing = -1;
      t.gluings.push_back(std::move(g));
    }
  }

  // Across every facet pairing the two induced boundary subdivisions must
  // correspond cell-for-cell under the pairing bijection.
  for (size_t k = 0; k < complex.pairings().size(); ++k) {
    const FacetPairing& pr = complex.pairings()[k];
    VSet src_facet = complex.polyhedron(pr.src.poly).lattice.facets()[pr.src.facet];
    VSet dst_facet = complex.polyhedron(pr.dst.poly).lattice.facets()[pr.dst.facet];
    std::vector<int> fwd = pr.forward_map(complex.polyhedron(pr.src.poly).vertex_count());

    std::map<VSet, int> src_walls, dst_walls;  // boundary wall -> owning simplex
    for (const auto& [wall, owners] : walls[pr.src.poly]) {
      if (owners.size() == 1 && (wall & src_facet) == wall) src_walls[wall] = owners[0];
    }
    for (const auto& [wall, owners] : walls[pr.dst.poly]) {
      if (owners.size() == 1 && (wall & dst_facet) == wall) dst_walls[wall] = owners[0];
    }
    std::map<VSet, int> mapped;
    for (const auto& [wall, owner] : src_walls) mapped[vset_apply(wall, fwd)] = owner;
    {
      auto keys = [](const std::map<VSet, int>& m) {
        std::vector<VSet> k_;
        for (const auto& [key, value] : m) {
          (void)value;
          k_.push_back(key);
        }
        return k_;
      };
      if (keys(mapped) != keys(dst_walls)) {
        throw std::logic_error("facet subdivision mismatch across pairing " + std::to_string(k));
      }
    }
    for (const auto& [image_wall, src_simplex] : mapped) {
      int dst_simplex = dst_walls.at(image_wall);
      Triangulation::FacetGluing g;
      g.src_simplex = src_simplex;
      g.dst_simplex = dst_simplex;
      VSet src_wall = 0;
      for (const auto& [wall, owner] : src_walls) {
        if (owner == src_simplex && vset_apply(wall, fwd) == image_wall) src_wall = wall;
      }
      g.src_opposite = opposite_of(src_simplex, src_wall);
      g.dst_opposite = opposite_of(dst_simplex, image_wall);
      g.position_map.assign(dim + 1, -1);
      g.position_map[g.src_opposite] = g.dst_opposite;
      for (int v : vset_members(src_wall)) g.position_map[position_of(src_simplex, v)] = position_of(dst_simplex, fwd[v]);
      g.origin_pairing = static_cast<int>(k);
      t.gluings.push_back(std::move(g));
    }
  }

  std::sort(t.gluings.begin(), t.gluings.end(), [](const auto& a, const auto& b) {
    return std::tie(a.src_simplex, a.src_opposite) < std::tie(b.src_simplex, b.src_opposite);
  });

  t.certificate = verify_triangulation(t, complex);
  if (!t.certificate.clean()) {
    throw std::logic_error("subdivision certificate failed:\n" + t.certificate.summary());
  }
  return t;
}

namespace {

// Recursive tiling audit: the (rank)-simplices must cover `face` with every
// interior wall shared by exactly two of them and every boundary wall lying
// in a facet of `face`'s sub-lattice, recursively down to edges.
bool tiles_face(const FaceLattice& lattice, int rank, VSet face, std::vector<VSet> cells,
                std::vector<ValidationIssue>& failures, const std::string& where) {
  if (cells.empty()) {
    failures.push_back({"tiling-empty", where, "no cells cover the face"});
    return false;
  }
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) {
    failures.push_back({"tiling-duplicate", where, "duplicate cell"});
    return false;
  }
  for (VSet c : cells) {
    if ((c & face) != c || vcount(c) != rank + 1) {
      failures.push_back({"tiling-cell", where, "cell does not fit the face"});
      return false;
    }
  }
  if (rank == 0) return cells.size() == 1 && cells[0] == face;
  if (rank == 1 && vcount(face) == 2) {
    // An edge subdivided without new vertices is the edge itself.
    if (cells.size() != 1 || cells[0] != face) {
      failures.push_back({"tiling-edge", where, "edge not covered exactly"});
      return false;
    }
    return true;
  }

  FaceLattice sub = lattice.restrict_to(rank, face);
  std::map<VSet, int> wall_count;
  for (VSet c : cells) {
    for (int v : vset_members(c)) ++wall_count[c & ~vbit(v)];
  }
  std::map<VSet, std::vector<VSet>> boundary;  // sub-facet -> walls inside it
  for (const auto& [wall, count] : wall_count) {
    if (count == 2) continue;
    bool placed = false;
    if (count == 1) {
      for (VSet facet : sub.faces[rank - 1]) {
        if ((wall & facet) == wall) {
          boundary[facet].push_back(wall);
          placed = true;
          break;
        }
      }
    }
    if (!placed) {
      failures.push_back({"tiling-wall", where, "wall with multiplicity " + std::to_string(count) +
                                                    " is not a boundary wall"});
      return false;
    }
  }
  for (VSet facet : sub.faces[rank - 1]) {
    if (!tiles_face(lattice, rank - 1, facet, boundary[facet], failures, where)) return false;
  }
  return true;
}

}  // namespace

Certificate verify_triangulation(const Triangulation& t, const PolyhedralComplex& complex) {
  Certificate cert;
  const int dim = complex.dim();
  auto fail = [&cert](const std::string& code, const std::string& where, const std::string& msg) {
    cert.failures.push_back({code, where, msg});
  };

  // Simplex shape and vertex-class distinctness, recomputed from the complex.
  cert.distinct_classes = true;
  for (size_t si = 0; si < t.simplices.size(); ++si) {
    const auto& s = t.simplices[si];
    const std::string where = "simplex " + std::to_string(si);
    if (s.source_poly < 0 || s.source_poly >= complex.polyhedron_count()) {
      fail("bad-provenance", where, "source polyhedron out of range");
      cert.distinct_classes = false;
      continue;
    }
    const Polyhedron& poly = complex.polyhedron(s.source_poly);
    if (static_cast<int>(s.local_vertices.size()) != dim + 1 ||
        !std::is_sorted(s.local_vertices.begin(), s.local_vertices.end())) {
      fail("bad-simplex", where, "expected dim+1 ascending local vertices");
      cert.distinct_classes = false;
      continue;
    }
    bool ok = true;
    std::set<int> classes;
    for (size_t i = 0; i < s.local_vertices.size(); ++i) {
      int v = s.local_vertices[i];
      if (v < 0 || v >= poly.vertex_count() || (i > 0 && v == s.local_vertices[i - 1])) {
        fail("bad-simplex", where, "vertex ids invalid or repeated");
        ok = false;
        break;
      }
      int cls = complex.vertex_class(s.source_poly, v);
      if (s.vertex_classes.size() == s.local_vertices.size() && s.vertex_classes[i] != cls) {
        fail("class-mismatch", where, "stored vertex class differs from the complex");
        ok = false;
        break;
      }
      if (!classes.insert(cls).second) {
        fail("repeated-class", where, "two vertices share class " + std::to_string(cls));
        ok = false;
        break;
      }
    }
    if (!ok) cert.distinct_classes = false;
  }

  // Per-polyhedron tiling audit (recursive wall audit), plus the exact volume
  // ledger whenever coordinates are present.
  cert.tiling_ok = true;
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    std::vector<VSet> cells;
    std::vector<std::vector<int>> tuples;
    for (const auto& s : t.simplices) {
      if (s.source_poly != p) continue;
      cells.push_back(tuple_to_set(s.local_vertices));
      tuples.push_back(s.local_vertices);
    }
    const Polyhedron& poly = complex.polyhedron(p);
    if (!tiles_face(poly.lattice, dim, poly.lattice.top(), cells, cert.failures, "polyhedron " + std::to_string(p))) {
      cert.tiling_ok = false;
      continue;
    }
    if (poly.coords) {
      EuclideanFellow fellow{poly.lattice, *poly.coords, poly.tags};
      try {
        auto [simplices, ledger] = realize_subdivision(fellow, tuples);
        (void)simplices;
        cert.polyhedron_volumes.emplace_back(p, format_fraction(ledger.polytope_volume));
      } catch (const std::invalid_argument& e) {
        cert.volumes_balanced = false;
        fail("volume-ledger", "polyhedron " + std::to_string(p), e.what());
      }
    }
  }

  // Gluings: positions well-formed, vertex maps consistent with their origin
  // (identity on local ids for interior walls, the pairing bijection for
  // boundary walls), and vertex classes preserved.
  cert.pairings_simplicial = true;
  std::set<std::pair<int, int>> glued;
  for (size_t gi = 0; gi < t.gluings.size(); ++gi) {
    const auto& g = t.gluings[gi];
    const std::string where = "gluing " + std::to_string(gi);
    auto bad = [&](const std::string& msg) {
      fail("bad-gluing", where, msg);
      cert.pairings_simplicial = false;
    };
    if (g.src_simplex < 0 || g.src_simplex >= static_cast<int>(t.simplices.size()) || g.dst_simplex < 0 ||
        g.dst_simplex >= static_cast<int>(t.simplices.size())) {
      bad("simplex index out of range");
      continue;
    }
    if (static_cast<int>(g.position_map.size()) != dim + 1 || g.src_opposite < 0 || g.src_opposite > dim ||
        g.dst_opposite < 0 || g.dst_opposite > dim || g.position_map[g.src_opposite] != g.dst_opposite) {
      bad("malformed position map");
      continue;
    }
    const auto& src = t.simplices[g.src_simplex];
    const auto& dst = t.simplices[g.dst_simplex];
    std::vector<bool> hit(dim + 1, false);
    bool ok = true;
    // A pairing between facets of one polyhedron leaves the direction
    // ambiguous from provenance alone, so both readings are tried.
    bool fwd_ok = true, bwd_ok = true;
    if (g.origin_pairing != -1) {
      if (g.origin_pairing < 0 || g.origin_pairing >= static_cast<int>(complex.pairings().size())) {
        bad("origin pairing out of range");
        continue;
      }
      const FacetPairing& pr = complex.pairings()[g.origin_pairing];
      fwd_ok = src.source_poly == pr.src.poly && dst.source_poly == pr.dst.poly;
      bwd_ok = src.source_poly == pr.dst.poly && dst.source_poly == pr.src.poly;
    }
    for (int pos = 0; pos <= dim && ok; ++pos) {
      int to = g.position_map[pos];
      if (to < 0 || to > dim || hit[to]) {
        bad("position map is not a bijection");
        ok = false;
        break;
      }
      hit[to] = true;
      if (pos == g.src_opposite) continue;
      int sv = src.local_vertices[pos];
      int dv = dst.local_vertices[to];
      if (g.origin_pairing == -1) {
        if (src.source_poly != dst.source_poly || sv != dv) {
          bad("interior wall must identify equal local vertices");
          ok = false;
        }
      } else {
        const FacetPairing& pr = complex.pairings()[g.origin_pairing];
        int fwd_image = -1, bwd_image = -1;
        for (const auto& [a, b] : pr.vertex_map) {
          if (a == sv) fwd_image = b;
          if (b == sv) bwd_image = a;
        }
        if (fwd_image != dv) fwd_ok = false;
        if (bwd_image != dv) bwd_ok = false;
      }
      if (ok && complex.vertex_class(src.source_poly, sv) != complex.vertex_class(dst.source_poly, dv)) {
        bad("gluing does not preserve vertex classes");
        ok = false;
      }
    }
    if (ok && g.origin_pairing != -1 && !fwd_ok && !bwd_ok) {
      bad("vertex map disagrees with the facet pairing");
      ok = false;
    }
    if (!ok) continue;
    for (auto key : {std::make_pair(g.src_simplex, g.src_opposite), std::make_pair(g.dst_simplex, g.dst_opposite)}) {
      if (!glued.insert(key).second) {
        bad("simplex facet glued twice");
      }
    }
  }

  // Boundary coverage: when the complex is closed, every simplex facet must
  // be glued exactly once.
  if (complex.closed() && cert.pairings_simplicial) {
    size_t expect = t.simplices.size() * static_cast<size_t>(dim + 1);
    if (glued.size() != expect) {
      fail("gluing-coverage", "triangulation",
           "expected " + std::to_string(expect) + " glued facets, found " + std::to_string(glued.size()));
      cert.pairings_simplicial = false;
    }
  }

  return cert;
}

PolyhedralComplex triangulation_to_complex(const Triangulation& t, const PolyhedralComplex& complex) {
  ComplexData data;
  data.dim = t.dim;
  for (const auto& s : t.simplices) {
    const Polyhedron& source = complex.polyhedron(s.source_poly);
    Polyhedron poly;
    std::vector<std::vector<int>> facets;
    for (int skip = 0; skip <= t.dim; ++skip) {
      std::vector<int> facet;
      for (int pos = 0; pos <= t.dim; ++pos) {
        if (pos != skip) facet.push_back(pos);
      }
      facets.push_back(std::move(facet));
    }
    auto lattice = build_face_lattice(t.dim, t.dim + 1, facets);
    if (!lattice.ok) throw std::logic_error("simplex lattice build failed");
    poly.lattice = std::move(lattice.lattice);
    for (int v : s.local_vertices) poly.tags.push_back(source.tags[v]);
    if (source.coords) {
      std::vector<RationalPoint> coords;
      for (int v : s.local_vertices) coords.push_back((*source.coords)[v]);
      poly.coords = std::move(coords);
    }
    data.polyhedra.push_back(std::move(poly));
  }
  for (const auto& g : t.gluings) {
    FacetPairing pr;
    // Facet k of the simplex polyhedron is the set missing position k; facet
    // ids follow the lattice's sorted facet order.
    const auto& src_lattice = data.polyhedra[g.src_simplex].lattice;
    const auto& dst_lattice = data.polyhedra[g.dst_simplex].lattice;
    VSet src_wall = src_lattice.top() & ~vbit(g.src_opposite);
    VSet dst_wall = dst_lattice.top() & ~vbit(g.dst_opposite);
    pr.src = {g.src_simplex, src_lattice.face_index(t.dim - 1, src_wall)};
    pr.dst = {g.dst_simplex, dst_lattice.face_index(t.dim - 1, dst_wall)};
    for (int pos = 0; pos <= t.dim; ++pos) {
      if (pos != g.src_opposite) pr.vertex_map.emplace_back(pos, g.position_map[pos]);
    }
    data.pairings.push_back(std::move(pr));
  }

  BuildOptions options;
  options.allow_free_boundary = !complex.closed();
  auto built = PolyhedralComplex::build(std::move(data), options);
  if (!built.complex || !built.report.clean()) {
    throw std::logic_error("triangulation does not assemble into a valid complex: " + built.report.summary());
  }
  return std::move(*built.complex);
}

}  // namespace vtc
