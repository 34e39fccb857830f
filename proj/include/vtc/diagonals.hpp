#pragma once

#include <optional>
#include <vector>

#include "vtc/presentation.hpp"

namespace vtc {

// A pair of distinct vertices of one polyhedron, normalized to v < w. The
// pair is returning when both vertices lie in the same vertex class; a
// returning pair carries a shortest pairing word identifying its endpoints,
// verified by replay when it is attached.
struct Diagonal {
  int poly = -1;
  int v = -1;
  int w = -1;
  bool returning = false;
  std::optional<Word> witness;
};

struct DiagonalSet {
  std::vector<Diagonal> diagonals;  // ordered by (poly, v, w)
  int returning_count = 0;

  int size() const { return static_cast<int>(diagonals.size()); }
};

struct WitnessPolicy {
  bool attach_witnesses = true;  // the cover search skips them for speed
};

// Every unordered pair of distinct vertices of every polyhedron, exactly once.
DiagonalSet enumerate_diagonals(const PolyhedralComplex& complex, const WitnessPolicy& policy = {});

// Shortest pairing word whose replay carries (poly, v) to (poly, w); BFS with
// letters tried in order +1, -1, +2, -2, ... Throws on a non-returning
// diagonal.
Word witness_word(const PolyhedralComplex& complex, const Diagonal& diagonal);

class CoverComplex;  // covers.hpp

struct CoverDiagonalSet {
  DiagonalSet set;
  std::vector<int> base_index;  // per diagonal: index into the base DiagonalSet
};

// Diagonal set of a cover's total complex, each diagonal tagged with the base
// diagonal it lies over. Throws if `base` was not computed over cover's base.
CoverDiagonalSet diagonals_after_cover(const DiagonalSet& base, const PolyhedralComplex& base_complex,
                                       const CoverComplex& cover, const WitnessPolicy& policy = {});

}  // namespace vtc
