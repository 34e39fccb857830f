#include "vtc/diagonals.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "vtc/covers.hpp"

namespace vtc {

namespace {

// BFS over the vertex-instance identification graph. Letters tried in order
// +1, -1, +2, -2, ... so witnesses are shortest and deterministically
// tie-broken by generator index.
std::optional<Word> shortest_identification_word(const PolyhedralComplex& complex, VertexInstance from,
                                                 VertexInstance to) {
  if (from == to) return Word{};
  std::map<VertexInstance, std::pair<VertexInstance, int>> parent;  // child -> (parent, letter)
  std::queue<VertexInstance> queue;
  parent.emplace(from, std::make_pair(from, 0));
  queue.push(from);
  while (!queue.empty()) {
    VertexInstance at = queue.front();
    queue.pop();
    for (size_t k = 0; k < complex.pairings().size(); ++k) {
      for (int sign : {+1, -1}) {
        int letter = sign * (static_cast<int>(k) + 1);
        auto next = replay_word(complex, {letter}, at);
        if (!next || parent.count(*next)) continue;
        parent.emplace(*next, std::make_pair(at, letter));
        if (*next == to) {
          Word word;
          VertexInstance walk = to;
          while (walk != from) {
            auto& [prev, via] = parent.at(walk);
            word.push_back(via);
            walk = prev;
          }
          std::reverse(word.begin(), word.end());
          return word;
        }
        queue.push(*next);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Word witness_word(const PolyhedralComplex& complex, const Diagonal& diagonal) {
  if (!diagonal.returning) {
    throw std::invalid_argument("witness_word called on a non-returning diagonal");
  }
  auto word = shortest_identification_word(complex, {diagonal.poly, diagonal.v}, {diagonal.poly, diagonal.w});
  if (!word) {
    throw std::logic_error("returning diagonal has no identification path (corrupt class data)");
  }
  auto landed = replay_word(complex, *word, {diagonal.poly, diagonal.v});
  if (!landed || !(*landed == VertexInstance{diagonal.poly, diagonal.w})) {
    throw std::logic_error("witness replay did not land on the partner vertex");
  }
  return *word;
}

DiagonalSet enumerate_diagonals(const PolyhedralComplex& complex, const WitnessPolicy& policy) {
  DiagonalSet set;
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    const int n = complex.polyhedron(p).vertex_count();
    for (int v = 0; v < n; ++v) {
      for (int w = v + 1; w < n; ++w) {
        Diagonal diag;
        diag.poly = p;
        diag.v = v;
        diag.w = w;
        diag.returning = complex.vertex_class(p, v) == complex.vertex_class(p, w);
        if (diag.returning) {
          ++set.returning_count;
          if (policy.attach_witnesses) diag.witness = witness_word(complex, diag);
        }
        set.diagonals.push_back(std::move(diag));
      }
    }
  }
  return set;
}

CoverDiagonalSet diagonals_after_cover(const DiagonalSet& base, const PolyhedralComplex& base_complex,
                                       const CoverComplex& cover, const WitnessPolicy& policy) {
  if (cover.base().canonical_text() != base_complex.canonical_text()) {
    throw std::invalid_argument("diagonals_after_cover: cover was built over a different base complex");
  }

  // Base diagonals are ordered by (poly, v, w); index them for tagging.
  std::map<std::tuple<int, int, int>, int> base_index;
  for (size_t i = 0; i < base.diagonals.size(); ++i) {
    const Diagonal& d = base.diagonals[i];
    base_index.emplace(std::make_tuple(d.poly, d.v, d.w), static_cast<int>(i));
  }

  CoverDiagonalSet out;
  out.set = enumerate_diagonals(cover.total(), policy);
  out.base_index.reserve(out.set.diagonals.size());
  for (const Diagonal& d : out.set.diagonals) {
    out.base_index.push_back(base_index.at(std::make_tuple(cover.base_poly(d.poly), d.v, d.w)));
  }
  return out;
}

}  // namespace vtc
