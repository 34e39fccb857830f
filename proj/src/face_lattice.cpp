#include "vtc/face_lattice.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace vtc {

std::vector<int> vset_members(VSet s) {
  std::vector<int> out;
  while (s) {
    int v = __builtin_ctzll(s);
    out.push_back(v);
    s &= s - 1;
  }
  return out;
}

VSet vset_apply(VSet s, const std::vector<int>& map) {
  VSet out = 0;
  for (int v : vset_members(s)) {
    assert(v < static_cast<int>(map.size()) && map[v] >= 0);
    out |= vbit(map[v]);
  }
  return out;
}

int FaceLattice::face_index(int rank, VSet face) const {
  if (rank < 0 || rank > dim) return -1;
  const auto& level = faces[rank];
  auto it = std::lower_bound(level.begin(), level.end(), face);
  if (it == level.end() || *it != face) return -1;
  return static_cast<int>(it - level.begin());
}

int FaceLattice::rank_of(VSet face) const {
  for (int k = 0; k <= dim; ++k) {
    if (face_index(k, face) >= 0) return k;
  }
  return -1;
}

FaceLattice FaceLattice::restrict_to(int rank, VSet face) const {
  FaceLattice sub;
  sub.dim = rank;
  sub.vertex_count = vertex_count;
  sub.faces.assign(rank + 1, {});
  for (int k = 0; k <= rank; ++k) {
    for (VSet f : faces[k]) {
      if ((f & face) == f) sub.faces[k].push_back(f);
    }
  }
  return sub;
}

namespace {

void issue(std::vector<LatticeIssue>& issues, const std::string& code, const std::string& msg) {
  issues.push_back({code, msg});
}

std::string set_str(VSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : vset_members(s)) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace

namespace {
LatticeBuild build_lattice_over(int dim, int vertex_count, VSet universe, const std::vector<VSet>& facets_in);
}

LatticeBuild build_face_lattice(int dim, int vertex_count, const std::vector<std::vector<int>>& facet_vertices) {
  LatticeBuild result;
  auto& issues = result.issues;

  if (dim < 1) {
    issue(issues, "bad-dimension", "dimension must be >= 1, got " + std::to_string(dim));
    return result;
  }
  if (vertex_count < 2 || vertex_count > 64) {
    issue(issues, "bad-vertex-count", "vertex count must be in [2, 64], got " + std::to_string(vertex_count));
    return result;
  }
  if (facet_vertices.empty()) {
    issue(issues, "no-facets", "polyhedron has no facets");
    return result;
  }

  VSet all = (vertex_count == 64) ? ~VSet{0} : (vbit(vertex_count) - 1);
  std::vector<VSet> facets;
  VSet used = 0;
  for (size_t i = 0; i < facet_vertices.size(); ++i) {
    VSet f = 0;
    for (int v : facet_vertices[i]) {
      if (v < 0 || v >= vertex_count) {
        issue(issues, "dangling-vertex-id",
              "facet " + std::to_string(i) + " references vertex " + std::to_string(v));
        return result;
      }
      if (vtest(f, v)) {
        issue(issues, "duplicate-vertex", "facet " + std::to_string(i) + " lists vertex " + std::to_string(v) + " twice");
        return result;
      }
      f |= vbit(v);
    }
    if (f == 0 || f == all) {
      issue(issues, "bad-facet", "facet " + std::to_string(i) + " must be a proper nonempty vertex subset");
      return result;
    }
    used |= f;
    facets.push_back(f);
  }
  if (used != all) {
    issue(issues, "isolated-vertex", "some vertex lies in no facet");
    return result;
  }
  return build_lattice_over(dim, vertex_count, all, facets);
}

namespace {

LatticeBuild build_lattice_over(int dim, int vertex_count, VSet universe, const std::vector<VSet>& facets_in) {
  LatticeBuild result;
  auto& issues = result.issues;
  VSet all = universe;
  std::vector<VSet> facets = facets_in;
  {
    std::set<VSet> uniq(facets.begin(), facets.end());
    if (uniq.size() != facets.size()) {
      issue(issues, "duplicate-facet", "two facets share the same vertex set");
      return result;
    }
  }
  for (VSet f : facets) {
    for (VSet g : facets) {
      if (f != g && (f & g) == f) {
        issue(issues, "nested-facets", "facet " + set_str(f) + " is contained in facet " + set_str(g));
        return result;
      }
    }
  }

  // Closure of the facet sets under intersection; for a convex polytope this
  // is exactly the set of proper faces (possibly plus the empty set).
  std::set<VSet> closure(facets.begin(), facets.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<VSet> current(closure.begin(), closure.end());
    for (size_t i = 0; i < current.size(); ++i) {
      for (size_t j = i + 1; j < current.size(); ++j) {
        VSet m = current[i] & current[j];
        if (m != 0 && closure.insert(m).second) grew = true;
      }
    }
  }
  closure.insert(all);

  // Rank by longest chain; a polytope lattice is graded, so this recovers
  // the face dimension. Faces sorted by popcount make the scan one pass.
  std::vector<VSet> ordered(closure.begin(), closure.end());
  std::sort(ordered.begin(), ordered.end(), [](VSet a, VSet b) {
    int ca = vcount(a), cb = vcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  std::map<VSet, int> rank;
  for (VSet f : ordered) {
    int r = 0;
    for (VSet g : ordered) {
      if (g == f) break;
      if ((g & f) == g && vcount(g) < vcount(f)) r = std::max(r, rank[g] + 1);
    }
    rank[f] = r;
  }

  if (rank[all] != dim) {
    issue(issues, "rank-mismatch",
          "longest face chain has length " + std::to_string(rank[all]) + " but dim = " + std::to_string(dim));
    return result;
  }

  FaceLattice lat;
  lat.dim = dim;
  lat.vertex_count = vertex_count;
  lat.faces.assign(dim + 1, {});
  for (const auto& [f, r] : rank) {
    if (r > dim) {
      issue(issues, "rank-overflow", "face " + set_str(f) + " has chain rank " + std::to_string(r));
      return result;
    }
    lat.faces[r].push_back(f);
  }
  for (auto& level : lat.faces) std::sort(level.begin(), level.end());

  // Atomicity: minimal faces are exactly the singletons, one per vertex.
  if (lat.faces[0].size() != static_cast<size_t>(vcount(all))) {
    issue(issues, "not-atomic",
          "expected " + std::to_string(vcount(all)) + " rank-0 faces, found " + std::to_string(lat.faces[0].size()));
    return result;
  }
  for (VSet f : lat.faces[0]) {
    if (vcount(f) != 1) {
      issue(issues, "not-atomic", "minimal face " + set_str(f) + " is not a single vertex");
      return result;
    }
  }

  // Every declared facet must sit at rank dim-1.
  for (VSet f : facets) {
    if (rank[f] != dim - 1) {
      issue(issues, "facet-rank", "facet " + set_str(f) + " has rank " + std::to_string(rank[f]));
      return result;
    }
  }
  if (lat.facets().size() != facets.size()) {
    issue(issues, "phantom-facet", "closure produced rank-(dim-1) faces that were not declared facets");
    return result;
  }

  // Gradedness: every covering relation increases rank by exactly one.
  for (int k = 0; k <= dim; ++k) {
    for (VSet f : lat.faces[k]) {
      for (int k2 = k + 1; k2 <= dim; ++k2) {
        for (VSet g : lat.faces[k2]) {
          if ((f & g) != f) continue;
          bool covered = false;
          for (int km = k + 1; km < k2 && !covered; ++km) {
            for (VSet h : lat.faces[km]) {
              if ((f & h) == f && (h & g) == h) {
                covered = true;
                break;
              }
            }
          }
          if (!covered && k2 != k + 1) {
            issue(issues, "not-graded",
                  "face " + set_str(f) + " is covered by " + set_str(g) + " with rank gap " + std::to_string(k2 - k));
            return result;
          }
        }
      }
    }
  }

  // Each face must equal the intersection of the facets containing it.
  for (int k = 0; k < dim; ++k) {
    for (VSet f : lat.faces[k]) {
      VSet meet = all;
      for (VSet g : lat.facets()) {
        if ((f & g) == f) meet &= g;
      }
      if (meet != f) {
        issue(issues, "not-facet-intersection",
              "face " + set_str(f) + " is not the intersection of the facets containing it (got " + set_str(meet) + ")");
        return result;
      }
    }
  }

  // Containment counts: facets lie in the top face only; every lower face
  // lies in at least two faces one rank up; codimension-two faces lie in
  // exactly two facets.
  for (int k = 0; k + 1 < dim; ++k) {
    for (VSet f : lat.faces[k]) {
      int up = 0;
      for (VSet g : lat.faces[k + 1]) {
        if ((f & g) == f) ++up;
      }
      if (up < 2) {
        issue(issues, "thin-face",
              "rank-" + std::to_string(k) + " face " + set_str(f) + " lies in only " + std::to_string(up) +
                  " faces of the next rank");
        return result;
      }
    }
  }
  if (dim >= 2) {
    for (VSet f : lat.faces[dim - 2]) {
      int in_facets = 0;
      for (VSet g : lat.facets()) {
        if ((f & g) == f) ++in_facets;
      }
      if (in_facets != 2) {
        issue(issues, "bad-ridge",
              "codimension-two face " + set_str(f) + " lies in " + std::to_string(in_facets) + " facets");
        return result;
      }
    }
  }

  // Facets restrict to valid lattices one dimension down.
  if (dim >= 2) {
    for (VSet f : lat.facets()) {
      std::vector<VSet> sub_facets;
      for (VSet g : lat.faces[dim - 2]) {
        if ((g & f) == g) sub_facets.push_back(g);
      }
      LatticeBuild sub = build_lattice_over(dim - 1, vertex_count, f, sub_facets);
      if (!sub.ok) {
        issue(issues, "bad-facet-restriction",
              "facet " + set_str(f) + " does not restrict to a valid lattice: " + sub.issues.front().code);
        return result;
      }
      FaceLattice expect = lat.restrict_to(dim - 1, f);
      if (sub.lattice.faces != expect.faces) {
        issue(issues, "bad-facet-restriction", "facet " + set_str(f) + " restriction disagrees with closure");
        return result;
      }
    }
  }

  result.ok = true;
  result.lattice = std::move(lat);
  return result;
}

}  // namespace

bool is_face_isomorphism(const FaceLattice& src, int src_rank, VSet src_face, const FaceLattice& dst, VSet dst_face,
                         const std::vector<int>& map) {
  if (dst.rank_of(dst_face) != src_rank) return false;
  if (vset_apply(src_face, map) != dst_face) return false;
  FaceLattice a = src.restrict_to(src_rank, src_face);
  FaceLattice b = dst.restrict_to(src_rank, dst_face);
  for (int k = 0; k <= src_rank; ++k) {
    if (a.faces[k].size() != b.faces[k].size()) return false;
    std::vector<VSet> image;
    image.reserve(a.faces[k].size());
    for (VSet f : a.faces[k]) image.push_back(vset_apply(f, map));
    std::sort(image.begin(), image.end());
    if (image != b.faces[k]) return false;
  }
  return true;
}

}  // namespace vtc
