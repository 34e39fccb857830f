#include "vtc/presentation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vtc {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int letter : w) {
    if (!out.empty()) out += " ";
    out += (letter > 0 ? "g" : "G") + std::to_string(std::abs(letter) - 1);
  }
  return out;
}

Word reduce_word(Word w) {
  Word out;
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

Word invert_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

namespace {

// State while circling a codimension-two face: the face instance plus the
// facet the walk entered through. Each step leaves through the other facet
// incident to the face.
struct RidgeState {
  int poly;
  int face_index;  // index into faces[dim-2]
  int entered_facet;
  auto operator<=>(const RidgeState&) const = default;
};

std::pair<int, int> incident_facets(const FaceLattice& lat, VSet ridge) {
  int a = -1, b = -1;
  const auto& facets = lat.facets();
  for (size_t i = 0; i < facets.size(); ++i) {
    if ((ridge & facets[i]) == ridge) {
      (a < 0 ? a : b) = static_cast<int>(i);
    }
  }
  return {a, b};
}

}  // namespace

GroupPresentation extract_presentation(const PolyhedralComplex& complex) {
  if (complex.dim() != 2 && complex.dim() != 3) {
    throw std::invalid_argument("unsupported dimension for presentation extraction: " + std::to_string(complex.dim()));
  }
  if (!complex.closed()) {
    throw std::invalid_argument("presentation extraction requires a closed complex");
  }

  const int dim = complex.dim();
  const int ridge_rank = dim - 2;

  GroupPresentation pres;
  pres.generator_count = static_cast<int>(complex.pairings().size());

  // One relator per ridge class, walked from its smallest instance.
  std::map<int, std::pair<int, int>> class_base;  // class -> (poly, face index)
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    const auto& faces = complex.polyhedron(p).lattice.faces[ridge_rank];
    for (size_t fi = 0; fi < faces.size(); ++fi) {
      int c = complex.face_class(ridge_rank, p, static_cast<int>(fi));
      class_base.emplace(c, std::make_pair(p, static_cast<int>(fi)));
    }
  }

  for (const auto& [cls, base] : class_base) {
    (void)cls;
    const auto [base_poly, base_face] = base;
    VSet base_ridge = complex.polyhedron(base_poly).lattice.faces[ridge_rank][base_face];
    auto [fa, fb] = incident_facets(complex.polyhedron(base_poly).lattice, base_ridge);

    // Start "entered through" the larger facet so the first crossing leaves
    // through the smaller one; the cycle closes by re-entering through fb.
    RidgeState start{base_poly, base_face, fb};
    RidgeState state = start;

    // Accumulated map on the base ridge's vertices, tracked as images of the
    // sorted base vertex list.
    std::vector<int> base_vertices = vset_members(base_ridge);
    std::vector<int> carried = base_vertices;

    Word word;
    int guard = 0;
    while (true) {
      if (++guard > 1000000) {
        throw std::runtime_error("ridge cycle failed to close (corrupt complex)");
      }
      const auto& lat = complex.polyhedron(state.poly).lattice;
      VSet ridge = lat.faces[ridge_rank][state.face_index];
      auto [ia, ib] = incident_facets(lat, ridge);
      int exit_facet = (state.entered_facet == ia) ? ib : ia;

      auto hit = complex.pairing_on(state.poly, exit_facet);
      if (!hit) throw std::runtime_error("ridge cycle hit an unpaired facet");
      const FacetPairing& pr = complex.pairings()[hit->first];
      bool forward = hit->second;
      word.push_back(forward ? hit->first + 1 : -(hit->first + 1));

      const Polyhedron& from = complex.polyhedron(forward ? pr.src.poly : pr.dst.poly);
      const Polyhedron& to = complex.polyhedron(forward ? pr.dst.poly : pr.src.poly);
      std::vector<int> vmap = forward ? pr.forward_map(from.vertex_count()) : pr.backward_map(from.vertex_count());

      VSet image = vset_apply(ridge, vmap);
      int to_poly = forward ? pr.dst.poly : pr.src.poly;
      int to_face = to.lattice.face_index(ridge_rank, image);
      int arrival_facet = forward ? pr.dst.facet : pr.src.facet;
      for (int& v : carried) v = vmap[v];

      state = {to_poly, to_face, arrival_facet};
      if (state == start) {
        if (carried == base_vertices) break;
        // The cycle closed with a nontrivial map on the ridge; repeat the lap
        // until the induced map is the identity (order <= 2 on an edge).
        std::vector<int> once = carried;
        Word lap = word;
        while (carried != base_vertices) {
          for (int& v : carried) {
            auto it = std::find(base_vertices.begin(), base_vertices.end(), v);
            v = once[it - base_vertices.begin()];
          }
          word.insert(word.end(), lap.begin(), lap.end());
        }
        break;
      }
    }
    pres.relators.push_back(reduce_word(std::move(word)));
  }

  return pres;
}

std::vector<std::vector<long long>> relator_matrix(const GroupPresentation& pres) {
  std::vector<std::vector<long long>> out(pres.relators.size(), std::vector<long long>(pres.generator_count, 0));
  for (size_t r = 0; r < pres.relators.size(); ++r) {
    for (int letter : pres.relators[r]) {
      out[r][std::abs(letter) - 1] += letter > 0 ? 1 : -1;
    }
  }
  return out;
}

}  // namespace vtc
