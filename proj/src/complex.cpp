#include "vtc/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace vtc {

const char* tag_name(VertexTag t) { return t == VertexTag::Ideal ? "ideal" : "hyperideal"; }

std::vector<int> FacetPairing::forward_map(int src_vertex_count) const {
  std::vector<int> out(src_vertex_count, -1);
  for (const auto& [s, d] : vertex_map) out[s] = d;
  return out;
}

std::vector<int> FacetPairing::backward_map(int dst_vertex_count) const {
  std::vector<int> out(dst_vertex_count, -1);
  for (const auto& [s, d] : vertex_map) out[d] = s;
  return out;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (clean()) {
    os << "clean" << (free_boundary ? " (free boundary)" : "");
  } else {
    os << errors.size() << " error(s)";
  }
  for (const auto& e : errors) os << "\n  error " << e.code << " at " << e.where << ": " << e.message;
  for (const auto& n : notes) os << "\n  note " << n.code << " at " << n.where << ": " << n.message;
  return os.str();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string facet_str(const FacetRef& f) { return std::to_string(f.poly) + "." + std::to_string(f.facet); }

}  // namespace

ComplexBuildResult PolyhedralComplex::build(ComplexData data, const BuildOptions& options) {
  ComplexBuildResult result;
  ValidationReport& report = result.report;
  auto error = [&report](const std::string& code, const std::string& where, const std::string& msg) {
    report.errors.push_back({code, where, msg});
  };

  const int dim = data.dim;
  if (dim < 1) {
    error("bad-dimension", "complex", "dimension must be >= 1");
    return result;
  }
  if (data.polyhedra.empty()) {
    error("empty-complex", "complex", "no polyhedra");
    return result;
  }

  for (size_t p = 0; p < data.polyhedra.size(); ++p) {
    const Polyhedron& poly = data.polyhedra[p];
    const std::string where = "polyhedron " + std::to_string(p);
    if (poly.lattice.dim != dim) {
      error("dimension-mismatch", where, "polyhedron dimension differs from complex dimension");
      continue;
    }
    if (static_cast<int>(poly.tags.size()) != poly.vertex_count()) {
      error("tag-count", where, "expected one tag per vertex");
    }
    if (poly.coords) {
      if (static_cast<int>(poly.coords->size()) != poly.vertex_count()) {
        error("coord-count", where, "coordinates must cover all vertices or none");
      } else {
        for (int v = 0; v < poly.vertex_count(); ++v) {
          if (static_cast<int>((*poly.coords)[v].size()) != dim) {
            error("coord-arity", where + " vertex " + std::to_string(v),
                  "expected " + std::to_string(dim) + " coordinates");
          }
        }
      }
    }
  }
  if (!report.errors.empty()) return result;

  // Pairing structure. Each facet instance may appear on at most one side of
  // at most one pairing, and never paired with itself.
  const int npoly = static_cast<int>(data.polyhedra.size());
  auto facet_count = [&](int p) { return static_cast<int>(data.polyhedra[p].lattice.facets().size()); };

  for (size_t i = 0; i < data.pairings.size(); ++i) {
    FacetPairing& pr = data.pairings[i];
    const std::string where = "pairing " + std::to_string(i);
    auto check_ref = [&](const FacetRef& r) {
      if (r.poly < 0 || r.poly >= npoly) {
        error("dangling-id", where, "polyhedron id " + std::to_string(r.poly) + " out of range");
        return false;
      }
      if (r.facet < 0 || r.facet >= facet_count(r.poly)) {
        error("dangling-id", where, "facet id " + std::to_string(r.facet) + " out of range in polyhedron " +
                                        std::to_string(r.poly));
        return false;
      }
      return true;
    };
    if (!check_ref(pr.src) || !check_ref(pr.dst)) continue;
    if (pr.src == pr.dst) {
      error("self-paired-facet", where, "facet " + facet_str(pr.src) + " paired with itself");
      continue;
    }
    if (pr.dst < pr.src) {  // normalize to canonical direction
      std::vector<std::pair<int, int>> inv;
      for (const auto& [s, d] : pr.vertex_map) inv.emplace_back(d, s);
      std::sort(inv.begin(), inv.end());
      pr.vertex_map = std::move(inv);
      std::swap(pr.src, pr.dst);
    }

    const Polyhedron& sp = data.polyhedra[pr.src.poly];
    const Polyhedron& dp = data.polyhedra[pr.dst.poly];
    VSet src_face = sp.lattice.facets()[pr.src.facet];
    VSet dst_face = dp.lattice.facets()[pr.dst.facet];

    VSet seen_src = 0, seen_dst = 0;
    bool bad = false;
    for (const auto& [s, d] : pr.vertex_map) {
      if (s < 0 || s >= sp.vertex_count() || !vtest(src_face, s) || d < 0 || d >= dp.vertex_count() ||
          !vtest(dst_face, d)) {
        error("dangling-id", where, "vertex map entry " + std::to_string(s) + ":" + std::to_string(d) +
                                        " leaves the paired facets");
        bad = true;
        break;
      }
      if (vtest(seen_src, s) || vtest(seen_dst, d)) {
        error("non-bijective-pairing", where, "non-bijective pairing map");
        bad = true;
        break;
      }
      seen_src |= vbit(s);
      seen_dst |= vbit(d);
    }
    if (bad) continue;
    if (seen_src != src_face || seen_dst != dst_face) {
      error("non-bijective-pairing", where, "non-bijective pairing map (does not cover both facets)");
      continue;
    }

    std::vector<int> fwd = pr.forward_map(sp.vertex_count());
    if (!is_face_isomorphism(sp.lattice, dim - 1, src_face, dp.lattice, dst_face, fwd)) {
      error("pairing-not-lattice-iso", where, "vertex map is not an isomorphism of facet lattices");
      continue;
    }
    for (const auto& [s, d] : pr.vertex_map) {
      if (sp.tags[s] != dp.tags[d]) {
        error("pairing-tag-mismatch", where, "vertex " + std::to_string(s) + " (" + tag_name(sp.tags[s]) +
                                                 ") maps to vertex " + std::to_string(d) + " (" + tag_name(dp.tags[d]) +
                                                 ")");
      }
    }
  }
  if (!report.errors.empty()) return result;

  std::sort(data.pairings.begin(), data.pairings.end(),
            [](const FacetPairing& a, const FacetPairing& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });

  std::vector<std::vector<std::optional<std::pair<int, bool>>>> lookup(npoly);
  for (int p = 0; p < npoly; ++p) lookup[p].assign(facet_count(p), std::nullopt);
  for (size_t i = 0; i < data.pairings.size(); ++i) {
    const FacetPairing& pr = data.pairings[i];
    for (auto [ref, is_src] : {std::pair{pr.src, true}, std::pair{pr.dst, false}}) {
      auto& slot = lookup[ref.poly][ref.facet];
      if (slot) {
        error("facet-multiply-paired", "pairing " + std::to_string(i),
              "facet " + facet_str(ref) + " appears in more than one pairing");
      } else {
        slot = std::make_pair(static_cast<int>(i), is_src);
      }
    }
  }
  if (!report.errors.empty()) return result;

  int unpaired = 0;
  for (int p = 0; p < npoly; ++p) {
    for (int f = 0; f < facet_count(p); ++f) {
      if (!lookup[p][f]) {
        ++unpaired;
        if (options.allow_free_boundary) {
          report.notes.push_back({"unpaired-facet", facet_str({p, f}), "facet has no pairing (free boundary)"});
        } else {
          error("unpaired-facet", facet_str({p, f}), "facet has no pairing and free-boundary mode is off");
        }
      }
    }
  }
  if (!report.errors.empty()) return result;
  report.free_boundary = unpaired > 0;

  PolyhedralComplex complex;
  complex.data_ = std::move(data);
  complex.pairing_lookup_ = std::move(lookup);

  // Orbit classes at every rank via union-find over face instances.
  const auto& polys = complex.data_.polyhedra;
  complex.face_class_of_.assign(dim + 1, {});
  complex.face_class_count_.assign(dim + 1, 0);
  for (int rank = 0; rank <= dim; ++rank) {
    std::vector<int> offset(npoly + 1, 0);
    for (int p = 0; p < npoly; ++p)
      offset[p + 1] = offset[p] + static_cast<int>(polys[p].lattice.faces[rank].size());
    UnionFind uf(offset[npoly]);
    for (const FacetPairing& pr : complex.data_.pairings) {
      const auto& sl = polys[pr.src.poly].lattice;
      const auto& dl = polys[pr.dst.poly].lattice;
      VSet src_face = sl.facets()[pr.src.facet];
      std::vector<int> fwd = pr.forward_map(polys[pr.src.poly].vertex_count());
      for (size_t fi = 0; fi < sl.faces[rank].size(); ++fi) {
        VSet f = sl.faces[rank][fi];
        if ((f & src_face) != f) continue;
        int gi = dl.face_index(rank, vset_apply(f, fwd));
        uf.unite(offset[pr.src.poly] + static_cast<int>(fi), offset[pr.dst.poly] + gi);
      }
    }
    std::map<int, int> renumber;
    auto& class_of = complex.face_class_of_[rank];
    class_of.assign(npoly, {});
    for (int p = 0; p < npoly; ++p) {
      class_of[p].assign(polys[p].lattice.faces[rank].size(), -1);
      for (size_t fi = 0; fi < polys[p].lattice.faces[rank].size(); ++fi) {
        int root = uf.find(offset[p] + static_cast<int>(fi));
        auto [it, fresh] = renumber.emplace(root, static_cast<int>(renumber.size()));
        (void)fresh;
        class_of[p][fi] = it->second;
      }
    }
    complex.face_class_count_[rank] = static_cast<int>(renumber.size());
  }

  // Vertex classes use the rank-0 data; rank-0 faces are the singletons in
  // vertex order, so face index == vertex id.
  complex.vertex_class_of_.assign(npoly, {});
  complex.vertex_class_count_ = complex.face_class_count_[0];
  complex.class_members_.assign(complex.vertex_class_count_, {});
  for (int p = 0; p < npoly; ++p) {
    complex.vertex_class_of_[p] = complex.face_class_of_[0][p];
    for (int v = 0; v < polys[p].vertex_count(); ++v) {
      complex.class_members_[complex.vertex_class_of_[p][v]].push_back({p, v});
    }
  }

  complex.report_ = report;
  result.complex.emplace(std::move(complex));
  return result;
}

std::optional<std::pair<int, bool>> PolyhedralComplex::pairing_on(int poly, int facet) const {
  return pairing_lookup_[poly][facet];
}

long long PolyhedralComplex::euler_characteristic() const {
  long long chi = 0;
  for (int rank = 1; rank <= dim(); ++rank) {
    chi += (rank % 2 == 0 ? 1 : -1) * static_cast<long long>(face_class_count_[rank]);
  }
  return chi;
}

std::string PolyhedralComplex::canonical_text() const {
  std::ostringstream os;
  os << "vtc-1\n";
  os << "dim " << dim() << "\n";
  for (int p = 0; p < polyhedron_count(); ++p) {
    const Polyhedron& poly = polyhedron(p);
    os << "polyhedron " << p << "\n";
    for (int v = 0; v < poly.vertex_count(); ++v) {
      os << "vertex " << v << " " << tag_name(poly.tags[v]);
      if (poly.coords) {
        for (const Rat& c : (*poly.coords)[v]) os << " " << format_fraction(c);
      }
      os << "\n";
    }
    for (VSet f : poly.lattice.facets()) {
      os << "facet";
      for (int v : vset_members(f)) os << " " << v;
      os << "\n";
    }
  }
  for (const FacetPairing& pr : pairings()) {
    os << "pairing " << facet_str(pr.src) << " " << facet_str(pr.dst);
    for (const auto& [s, d] : pr.vertex_map) os << " " << s << ":" << d;
    os << "\n";
  }
  return os.str();
}

std::optional<VertexInstance> replay_word(const PolyhedralComplex& complex, const std::vector<int>& word,
                                          VertexInstance at) {
  for (int letter : word) {
    if (letter == 0) return std::nullopt;
    int index = std::abs(letter) - 1;
    if (index >= static_cast<int>(complex.pairings().size())) return std::nullopt;
    const FacetPairing& pr = complex.pairings()[index];
    const FacetRef from = letter > 0 ? pr.src : pr.dst;
    const FacetRef to = letter > 0 ? pr.dst : pr.src;
    if (from.poly != at.poly) return std::nullopt;
    VSet facet = complex.polyhedron(from.poly).lattice.facets()[from.facet];
    if (!vtest(facet, at.vertex)) return std::nullopt;
    int image = -1;
    for (const auto& [s, d] : pr.vertex_map) {
      if (letter > 0 && s == at.vertex) image = d;
      if (letter < 0 && d == at.vertex) image = s;
    }
    if (image < 0) return std::nullopt;
    at = {to.poly, image};
  }
  return at;
}

}  // namespace vtc
