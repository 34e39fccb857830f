#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vtc/diagonals.hpp"
#include "vtc/presentation.hpp"

namespace vtc {

using Permutation = std::vector<int>;

Permutation identity_permutation(int degree);
Permutation inverse_permutation(const Permutation& p);
// compose_after(a, b): apply a, then b.
Permutation compose_after(const Permutation& a, const Permutation& b);
std::string cycle_notation(const Permutation& p);

// Permutation representation of a GroupPresentation: one permutation of
// {0..degree-1} per generator, all relators evaluating to the identity.
struct PermutationRep {
  int degree = 0;
  std::vector<Permutation> gens;
  bool transitive = false;
  bool regular = false;  // transitive and the image acts freely

  static PermutationRep make(int degree, std::vector<Permutation> gens);

  int apply_letter(int letter, int point) const;
  Permutation evaluate(const Word& word) const;
  bool satisfies(const GroupPresentation& pres) const;

  // Order of the generated subgroup, or nullopt if it exceeds `cap`.
  std::optional<long long> image_order(long long cap) const;
};

struct RepEnumerationOptions {
  long long limit = -1;               // < 0: unbounded
  std::vector<int> identity_gens;     // generators pinned to the identity
};

// Streams the transitive degree-d reps satisfying `pres`, one representative
// per simultaneous-conjugation class, in lexicographic order of the standard
// coset table. The callback returns false to stop early. Returns the number
// emitted. Backtracking fills the table point-major with first-encounter
// labeling; relator scans close gaps by deduction and prune dead branches.
long long enumerate_reps(const GroupPresentation& pres, int degree, const RepEnumerationOptions& options,
                         const std::function<bool(const PermutationRep&)>& emit);

struct RegularizationCapExceeded : std::runtime_error {
  long long cap;
  explicit RegularizationCapExceeded(long long cap_)
      : std::runtime_error("regularization cap exceeded: image order > " + std::to_string(cap_)), cap(cap_) {}
};

// Regular representation of the rep's image group (right translation); the
// result corresponds to the normal core of the original point stabilizer.
// Degree = image order; throws RegularizationCapExceeded past `cap`.
PermutationRep regularize(const PermutationRep& rep, long long cap);

// Regular rep of the image of the diagonal action on the product of the
// inputs' actions; factors through every input. All reps must share the
// generator count.
PermutationRep common_cover(const std::vector<PermutationRep>& reps, long long cap);

// A lifted complex: degree-d copies of each base polyhedron, pairing k gluing
// copy i of its source to copy rep.gens[k][i] of its target.
class CoverComplex {
 public:
  CoverComplex(PolyhedralComplex base, PermutationRep rep, PolyhedralComplex total)
      : base_(std::move(base)), rep_(std::move(rep)), total_(std::move(total)) {}

  const PolyhedralComplex& base() const { return base_; }
  const PermutationRep& rep() const { return rep_; }
  const PolyhedralComplex& total() const { return total_; }
  int degree() const { return rep_.degree; }

  int total_poly(int base_poly, int copy) const { return base_poly * rep_.degree + copy; }
  int base_poly(int total_poly) const { return total_poly / rep_.degree; }
  int copy_of(int total_poly) const { return total_poly % rep_.degree; }

 private:
  PolyhedralComplex base_;
  PermutationRep rep_;
  PolyhedralComplex total_;
};

// Requires rep.satisfies(extracted presentation); verifies the built total
// complex is clean and Euler-multiplicative. Copy 0 of each polyhedron is the
// distinguished lift.
CoverComplex build_cover(const PolyhedralComplex& base, const GroupPresentation& pres, const PermutationRep& rep);

// True if some polyhedron has two vertices in one class (cheap, no witnesses).
bool any_returning_diagonal(const PolyhedralComplex& complex);

enum class SearchMode { Direct, PerDiagonal };

struct SearchConfig {
  int max_degree = 8;
  long long cap = 10000;
  SearchMode mode = SearchMode::Direct;
  int start_degree = 1;
};

struct SearchStats {
  long long reps_tested = 0;
  long long capped_reps = 0;   // candidates skipped because regularization hit the cap
  int last_degree_exhausted = 0;
  std::optional<Diagonal> stuck_diagonal;  // per-diagonal mode: first diagonal that exhausted
};

struct SearchSuccess {
  std::vector<PermutationRep> chosen_reps;  // what the search selected, pre-regularization
  PermutationRep regular_rep;               // the cover that ships
  int found_at_degree = 0;                  // enumeration degree at which the search concluded
};

struct SearchOutcome {
  std::optional<SearchSuccess> success;
  SearchStats stats;
};

// Looks for a regular cover of `complex` whose total complex has no returning
// diagonal. Direct mode regularizes each enumerated rep and tests the global
// property; per-diagonal mode finds one cover per returning diagonal (the
// diagonal must die over at least one copy) and combines them with
// common_cover. Both outcomes are verified by recounting diagonals on the
// built cover. Throws std::invalid_argument when the complex has no returning
// diagonal. The search enumerates with spanning-tree generators pinned to the
// identity, which reaches every cover up to isomorphism while skipping
// relabelings.
SearchOutcome search_cover_killing_diagonals(const PolyhedralComplex& complex, const SearchConfig& config);

// Rebuilds the winning cover of a successful search outcome.
CoverComplex build_search_cover(const PolyhedralComplex& complex, const SearchSuccess& success);

// Pairing pair indices forming a BFS spanning tree of the dual graph.
std::vector<int> spanning_tree_pairings(const PolyhedralComplex& complex);

}  // namespace vtc
