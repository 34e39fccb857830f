#include "vtc/covers.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace vtc {

Permutation identity_permutation(int degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

Permutation compose_after(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

std::string cycle_notation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

PermutationRep PermutationRep::make(int degree, std::vector<Permutation> gens) {
  PermutationRep rep;
  rep.degree = degree;
  rep.gens = std::move(gens);
  for (const Permutation& g : rep.gens) {
    if (static_cast<int>(g.size()) != degree) throw std::invalid_argument("generator degree mismatch");
    std::vector<bool> hit(degree, false);
    for (int x : g) {
      if (x < 0 || x >= degree || hit[x]) throw std::invalid_argument("generator is not a permutation");
      hit[x] = true;
    }
  }

  // Transitivity: orbit of point 0 under the generated group.
  std::vector<bool> reached(degree, false);
  std::queue<int> queue;
  reached[0] = true;
  queue.push(0);
  int count = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop();
    for (const Permutation& g : rep.gens) {
      for (int y : {g[x], static_cast<int>(std::find(g.begin(), g.end(), x) - g.begin())}) {
        if (!reached[y]) {
          reached[y] = true;
          queue.push(y);
          ++count;
        }
      }
    }
  }
  rep.transitive = count == degree;

  // Regular iff transitive and |image| == degree; bail out of the closure as
  // soon as it outgrows the degree.
  rep.regular = false;
  if (rep.transitive) {
    auto order = rep.image_order(degree);
    rep.regular = order.has_value() && *order == degree;
  }
  return rep;
}

int PermutationRep::apply_letter(int letter, int point) const {
  const Permutation& g = gens[std::abs(letter) - 1];
  if (letter > 0) return g[point];
  return static_cast<int>(std::find(g.begin(), g.end(), point) - g.begin());
}

Permutation PermutationRep::evaluate(const Word& word) const {
  Permutation out = identity_permutation(degree);
  for (int letter : word) {
    const Permutation& g = gens[std::abs(letter) - 1];
    out = letter > 0 ? compose_after(out, g) : compose_after(out, inverse_permutation(g));
  }
  return out;
}

bool PermutationRep::satisfies(const GroupPresentation& pres) const {
  if (static_cast<int>(gens.size()) != pres.generator_count) return false;
  for (const Word& r : pres.relators) {
    if (evaluate(r) != identity_permutation(degree)) return false;
  }
  return true;
}

namespace {

// Deterministic BFS closure of the generated group; identity is element 0.
std::optional<std::vector<Permutation>> group_closure(const std::vector<Permutation>& gens, int degree,
                                                      long long cap) {
  std::vector<Permutation> elements{identity_permutation(degree)};
  std::map<Permutation, int> index{{elements[0], 0}};
  for (size_t at = 0; at < elements.size(); ++at) {
    for (const Permutation& g : gens) {
      Permutation next = compose_after(elements[at], g);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(std::move(next));
        if (static_cast<long long>(elements.size()) > cap) return std::nullopt;
      }
    }
  }
  return elements;
}

PermutationRep regular_rep_of(const std::vector<Permutation>& gens, int degree, long long cap) {
  auto closure = group_closure(gens, degree, cap);
  if (!closure) throw RegularizationCapExceeded(cap);
  const std::vector<Permutation>& elements = *closure;
  std::map<Permutation, int> index;
  for (size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<int>(i));

  int order = static_cast<int>(elements.size());
  std::vector<Permutation> reg_gens;
  reg_gens.reserve(gens.size());
  for (const Permutation& g : gens) {
    Permutation action(order);
    for (int i = 0; i < order; ++i) action[i] = index.at(compose_after(elements[i], g));
    reg_gens.push_back(std::move(action));
  }
  return PermutationRep::make(order, std::move(reg_gens));
}

}  // namespace

std::optional<long long> PermutationRep::image_order(long long cap) const {
  auto closure = group_closure(gens, degree, cap);
  if (!closure) return std::nullopt;
  return static_cast<long long>(closure->size());
}

PermutationRep regularize(const PermutationRep& rep, long long cap) {
  if (!rep.transitive) throw std::invalid_argument("regularize requires a transitive rep");
  return regular_rep_of(rep.gens, rep.degree, cap);
}

PermutationRep common_cover(const std::vector<PermutationRep>& reps, long long cap) {
  if (reps.empty()) throw std::invalid_argument("common_cover requires at least one rep");
  const size_t gen_count = reps[0].gens.size();
  int total_degree = 0;
  for (const PermutationRep& rep : reps) {
    if (rep.gens.size() != gen_count) throw std::invalid_argument("common_cover: generator count mismatch");
    total_degree += rep.degree;
  }

  // Block direct sum: the closure of these is the image of the diagonal
  // action on the product, and its regular rep is the common cover.
  std::vector<Permutation> block(gen_count, Permutation(total_degree));
  for (size_t g = 0; g < gen_count; ++g) {
    int offset = 0;
    for (const PermutationRep& rep : reps) {
      for (int i = 0; i < rep.degree; ++i) block[g][offset + i] = offset + rep.gens[g][i];
      offset += rep.degree;
    }
  }
  return regular_rep_of(block, total_degree, cap);
}

// ---------------------------------------------------------------------------
// Rep enumeration: backtracking over partial coset tables in standard form.
// ---------------------------------------------------------------------------

namespace {

struct TableEnumerator {
  int degree;
  int active_count;                       // generators actually enumerated
  std::vector<std::vector<int>> relators; // letters over active generators
  std::vector<std::vector<int>> img, pre; // [gen][point], -1 undefined
  std::vector<std::pair<int, int>> trail; // assignment log: (gen, point)
  int introduced = 1;                     // labels 0..introduced-1 in use

  long long emitted = 0;
  long long limit = -1;
  bool stopped = false;
  std::function<bool(const std::vector<std::vector<int>>&)> sink;

  bool assign(int g, int p, int q) {
    if (img[g][p] != -1) return img[g][p] == q;
    if (pre[g][q] != -1) return false;
    img[g][p] = q;
    pre[g][q] = p;
    trail.emplace_back(g, p);
    return true;
  }

  void undo_to(size_t mark) {
    while (trail.size() > mark) {
      auto [g, p] = trail.back();
      trail.pop_back();
      pre[g][img[g][p]] = -1;
      img[g][p] = -1;
    }
  }

  // Scans every relator from every introduced point; a scan with a single
  // undefined step forces that step. Returns false on contradiction.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& rel : relators) {
        const int len = static_cast<int>(rel.size());
        for (int start = 0; start < introduced; ++start) {
          int pos = start, fwd = 0;
          while (fwd < len) {
            int letter = rel[fwd];
            int next = letter > 0 ? img[letter - 1][pos] : pre[-letter - 1][pos];
            if (next == -1) break;
            pos = next;
            ++fwd;
          }
          if (fwd == len) {
            if (pos != start) return false;
            continue;
          }
          int pos_b = start, bwd = len - 1;
          while (bwd > fwd) {
            int letter = rel[bwd];
            int prev = letter > 0 ? pre[letter - 1][pos_b] : img[-letter - 1][pos_b];
            if (prev == -1) break;
            pos_b = prev;
            --bwd;
          }
          if (bwd != fwd) continue;  // more than one gap
          int letter = rel[fwd];
          bool ok = letter > 0 ? assign(letter - 1, pos, pos_b) : assign(-letter - 1, pos_b, pos);
          if (!ok) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  // Lexicographic flattening of the table relabeled by first encounter from
  // `base`; the DFS generates tables already standardized from base 0.
  std::vector<int> standardized_from(int base) const {
    std::vector<int> relabel(degree, -1), order;
    relabel[base] = 0;
    order.push_back(base);
    for (int p = 0; p < degree; ++p) {
      for (int g = 0; g < active_count; ++g) {
        int q = img[g][order[p]];
        if (relabel[q] == -1) {
          relabel[q] = static_cast<int>(order.size());
          order.push_back(q);
        }
      }
    }
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(degree) * active_count);
    for (int p = 0; p < degree; ++p) {
      for (int g = 0; g < active_count; ++g) flat.push_back(relabel[img[g][order[p]]]);
    }
    return flat;
  }

  bool canonical() const {
    std::vector<int> self = standardized_from(0);
    for (int base = 1; base < degree; ++base) {
      if (standardized_from(base) < self) return false;
    }
    return true;
  }

  void emit() {
    if (!canonical()) return;
    ++emitted;
    if (!sink(img)) stopped = true;
    if (limit >= 0 && emitted >= limit) stopped = true;
  }

  void search() {
    if (stopped) return;
    int slot_g = -1, slot_p = -1;
    for (int p = 0; p < introduced && slot_g == -1; ++p) {
      for (int g = 0; g < active_count; ++g) {
        if (img[g][p] == -1) {
          slot_g = g;
          slot_p = p;
          break;
        }
      }
    }
    if (slot_g == -1) {
      if (introduced == degree) emit();
      return;  // all defined points are closed; smaller orbit means dead end
    }
    for (int q = 0; q <= introduced && !stopped; ++q) {
      if (q == introduced) {
        if (introduced == degree) break;
      } else if (pre[slot_g][q] != -1) {
        continue;
      }
      size_t mark = trail.size();
      int saved_introduced = introduced;
      if (assign(slot_g, slot_p, q)) {
        if (q == saved_introduced) ++introduced;
        if (propagate()) search();
      }
      undo_to(mark);
      introduced = saved_introduced;
    }
  }
};

}  // namespace

long long enumerate_reps(const GroupPresentation& pres, int degree, const RepEnumerationOptions& options,
                         const std::function<bool(const PermutationRep&)>& emit) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");

  std::vector<bool> pinned(pres.generator_count, false);
  for (int g : options.identity_gens) pinned.at(g) = true;
  std::vector<int> active, active_index(pres.generator_count, -1);
  for (int g = 0; g < pres.generator_count; ++g) {
    if (!pinned[g]) {
      active_index[g] = static_cast<int>(active.size());
      active.push_back(g);
    }
  }

  TableEnumerator e;
  e.degree = degree;
  e.active_count = static_cast<int>(active.size());
  e.img.assign(e.active_count, std::vector<int>(degree, -1));
  e.pre.assign(e.active_count, std::vector<int>(degree, -1));
  e.limit = options.limit;
  for (const Word& rel : pres.relators) {
    std::vector<int> mapped;
    for (int letter : rel) {
      int g = std::abs(letter) - 1;
      if (pinned[g]) continue;  // identity letters drop out
      mapped.push_back(letter > 0 ? active_index[g] + 1 : -(active_index[g] + 1));
    }
    if (!mapped.empty()) e.relators.push_back(std::move(mapped));
  }

  e.sink = [&](const std::vector<std::vector<int>>& img) {
    std::vector<Permutation> gens(pres.generator_count);
    for (int g = 0; g < pres.generator_count; ++g) {
      gens[g] = pinned[g] ? identity_permutation(degree) : img[active_index[g]];
    }
    PermutationRep rep = PermutationRep::make(degree, std::move(gens));
    if (!rep.satisfies(pres)) throw std::logic_error("enumerated rep fails a relator");
    return emit(rep);
  };

  if (e.active_count == 0) {
    // Nothing to enumerate: only the trivial table, transitive iff degree 1.
    if (degree == 1) e.emit();
    return e.emitted;
  }
  if (!e.propagate()) return 0;
  e.search();
  return e.emitted;
}

// ---------------------------------------------------------------------------
// Cover construction.
// ---------------------------------------------------------------------------

CoverComplex build_cover(const PolyhedralComplex& base, const GroupPresentation& pres, const PermutationRep& rep) {
  if (static_cast<int>(rep.gens.size()) != static_cast<int>(base.pairings().size())) {
    throw std::invalid_argument("rep generator count does not match the base pairings");
  }
  if (!rep.satisfies(pres)) {
    throw std::logic_error("rep does not satisfy the face-pairing relators");
  }

  const int d = rep.degree;
  ComplexData data;
  data.dim = base.dim();
  for (int p = 0; p < base.polyhedron_count(); ++p) {
    for (int i = 0; i < d; ++i) data.polyhedra.push_back(base.polyhedron(p));
  }
  for (size_t k = 0; k < base.pairings().size(); ++k) {
    const FacetPairing& pr = base.pairings()[k];
    for (int i = 0; i < d; ++i) {
      FacetPairing lifted = pr;
      lifted.src.poly = pr.src.poly * d + i;
      lifted.dst.poly = pr.dst.poly * d + rep.gens[k][i];
      data.pairings.push_back(std::move(lifted));
    }
  }

  auto built = PolyhedralComplex::build(std::move(data), {});
  if (!built.complex || !built.report.clean()) {
    throw std::logic_error("cover construction produced an invalid complex: " + built.report.summary());
  }
  return CoverComplex(base, rep, std::move(*built.complex));
}

bool any_returning_diagonal(const PolyhedralComplex& complex) {
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    const int n = complex.polyhedron(p).vertex_count();
    for (int v = 0; v < n; ++v) {
      for (int w = v + 1; w < n; ++w) {
        if (complex.vertex_class(p, v) == complex.vertex_class(p, w)) return true;
      }
    }
  }
  return false;
}

std::vector<int> spanning_tree_pairings(const PolyhedralComplex& complex) {
  std::vector<std::vector<std::pair<int, int>>> adjacent(complex.polyhedron_count());  // (pairing, other poly)
  for (size_t k = 0; k < complex.pairings().size(); ++k) {
    const FacetPairing& pr = complex.pairings()[k];
    adjacent[pr.src.poly].emplace_back(static_cast<int>(k), pr.dst.poly);
    adjacent[pr.dst.poly].emplace_back(static_cast<int>(k), pr.src.poly);
  }
  std::vector<bool> visited(complex.polyhedron_count(), false);
  std::vector<int> tree;
  std::queue<int> queue;
  visited[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop();
    for (auto [k, q] : adjacent[p]) {
      if (!visited[q]) {
        visited[q] = true;
        tree.push_back(k);
        queue.push(q);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

// ---------------------------------------------------------------------------
// Cover search.
// ---------------------------------------------------------------------------

namespace {

// True if diagonal (poly, v, w) is non-returning over at least one copy; the
// distinguished lift may be re-chosen per cover, so any copy qualifies.
bool diagonal_dies(const CoverComplex& cover, const Diagonal& diag) {
  for (int i = 0; i < cover.degree(); ++i) {
    int p = cover.total_poly(diag.poly, i);
    if (cover.total().vertex_class(p, diag.v) != cover.total().vertex_class(p, diag.w)) return true;
  }
  return false;
}

}  // namespace

SearchOutcome search_cover_killing_diagonals(const PolyhedralComplex& complex, const SearchConfig& config) {
  GroupPresentation pres = extract_presentation(complex);
  DiagonalSet base_diags = enumerate_diagonals(complex, {.attach_witnesses = false});
  if (base_diags.returning_count == 0) {
    throw std::invalid_argument("complex has no returning diagonal; apply the pulling subdivision directly");
  }

  SearchOutcome outcome;
  RepEnumerationOptions enum_options;
  enum_options.identity_gens = spanning_tree_pairings(complex);

  auto verify_and_accept = [&](std::vector<PermutationRep> chosen, const PermutationRep& regular_rep, int found_at) {
    CoverComplex cover = build_cover(complex, pres, regular_rep);
    CoverDiagonalSet check = diagonals_after_cover(base_diags, complex, cover, {.attach_witnesses = false});
    if (check.set.returning_count != 0) {
      throw std::logic_error("search verification failed: chosen cover still has returning diagonals");
    }
    outcome.success = SearchSuccess{std::move(chosen), regular_rep, found_at};
  };

  if (config.mode == SearchMode::Direct) {
    for (int d = config.start_degree; d <= config.max_degree && !outcome.success; ++d) {
      enumerate_reps(pres, d, enum_options, [&](const PermutationRep& rep) {
        ++outcome.stats.reps_tested;
        PermutationRep regular_rep;
        try {
          regular_rep = regularize(rep, config.cap);
        } catch (const RegularizationCapExceeded&) {
          ++outcome.stats.capped_reps;
          return true;
        }
        CoverComplex cover = build_cover(complex, pres, regular_rep);
        if (any_returning_diagonal(cover.total())) return true;
        verify_and_accept({rep}, regular_rep, d);
        return false;
      });
      if (!outcome.success) outcome.stats.last_degree_exhausted = d;
    }
    return outcome;
  }

  // Per-diagonal mode: one cover per returning diagonal, then a common
  // regular cover of the collection.
  std::vector<PermutationRep> chosen;
  std::vector<CoverComplex> chosen_covers;
  int max_chosen_degree = 0;
  for (const Diagonal& diag : base_diags.diagonals) {
    if (!diag.returning) continue;
    bool already = false;
    for (const CoverComplex& cover : chosen_covers) {
      if (diagonal_dies(cover, diag)) {
        already = true;
        break;
      }
    }
    if (already) continue;

    std::optional<PermutationRep> found;
    for (int d = std::max(2, config.start_degree); d <= config.max_degree && !found; ++d) {
      enumerate_reps(pres, d, enum_options, [&](const PermutationRep& rep) {
        ++outcome.stats.reps_tested;
        CoverComplex cover = build_cover(complex, pres, rep);
        if (!diagonal_dies(cover, diag)) return true;
        found = rep;
        chosen_covers.push_back(std::move(cover));
        return false;
      });
    }
    if (!found) {
      outcome.stats.last_degree_exhausted = config.max_degree;
      outcome.stats.stuck_diagonal = diag;
      return outcome;
    }
    max_chosen_degree = std::max(max_chosen_degree, found->degree);
    chosen.push_back(std::move(*found));
  }

  PermutationRep regular_rep = common_cover(chosen, config.cap);
  verify_and_accept(std::move(chosen), regular_rep, max_chosen_degree);
  return outcome;
}

CoverComplex build_search_cover(const PolyhedralComplex& complex, const SearchSuccess& success) {
  GroupPresentation pres = extract_presentation(complex);
  return build_cover(complex, pres, success.regular_rep);
}

}  // namespace vtc
