#include "vtc/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace vtc {

namespace {

using Matrix = std::vector<std::vector<Rat>>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    Rat inv = m[row][col];
    for (auto& x : m[row]) x /= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat factor = m[r][col];
      for (size_t c = 0; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

// Kernel basis of the homogeneous system m x = 0.
std::vector<std::vector<Rat>> kernel_basis(Matrix m) {
  if (m.empty()) return {};
  const size_t cols = m[0].size();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[free_col] = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
      // Row pi has its pivot at column pivots[pi].
      v[pivots[pi]] = -m[pi][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unique solution of a square-ish consistent system with full column rank;
// nullopt when the matrix is singular in that sense.
std::optional<std::vector<Rat>> solve_unique(Matrix a, const std::vector<Rat>& b) {
  const size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  for (size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
  std::vector<int> pivots = rref(a);
  if (pivots.size() != cols) return std::nullopt;
  for (size_t r = pivots.size(); r < rows; ++r) {
    if (a[r][cols] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rat> x(cols);
  for (size_t pi = 0; pi < pivots.size(); ++pi) {
    if (pivots[pi] >= static_cast<int>(cols)) return std::nullopt;  // pivot in rhs: inconsistent
    x[pivots[pi]] = a[pi][cols];
  }
  return x;
}

Rat determinant(Matrix m) {
  const size_t n = m.size();
  Rat det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rat inv = m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat factor = m[r][col] / inv;
      for (size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Supporting hyperplane a.x = c of a facet: the affine hull of the facet's
// vertices must be a hyperplane, with every other vertex strictly on the
// negative side after normalization. Returns nullopt with an issue instead.
struct FacetPlane {
  std::vector<Rat> normal;
  Rat offset;  // a.x = offset on the facet
};

std::optional<FacetPlane> facet_plane(const EuclideanFellow& f, VSet facet, std::vector<ValidationIssue>* issues,
                                      const std::string& where) {
  const int n = f.dim();
  Matrix rows;
  for (int v : vset_members(facet)) {
    std::vector<Rat> row = f.coords[v];
    row.push_back(Rat(1));  // (x, 1) . (a, -c) = 0
    rows.push_back(std::move(row));
  }
  auto basis = kernel_basis(rows);
  if (basis.size() != 1) {
    if (issues) {
      issues->push_back({"facet-not-flat", where,
                         basis.empty() ? "facet vertices do not lie on a common hyperplane"
                                       : "facet vertices do not affinely span a hyperplane"});
    }
    return std::nullopt;
  }
  FacetPlane plane;
  plane.normal.assign(basis[0].begin(), basis[0].begin() + n);
  plane.offset = -basis[0][n];
  return plane;
}

}  // namespace

bool FellowReport::clean() const {
  for (const FellowConditionResult* c :
       {&tags_consistent, &ideal_on_sphere, &hyperideal_outside, &convex_supporting, &ridges_meet_ball}) {
    if (!c->passed) return false;
  }
  return true;
}

Rat min_norm_squared_over_hull(const std::vector<RationalPoint>& points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  const size_t n = points[0].size();
  Rat best = norm_squared(points[0]);
  for (const auto& p : points) best = std::min(best, norm_squared(p));

  // The minimizer lies in the relative interior of some face; it is the
  // affine-hull minimizer of an affinely independent subset with nonnegative
  // barycentric coordinates, so scanning all such subsets is exact.
  const size_t count = points.size();
  for (size_t mask = 1; mask < (size_t{1} << count); ++mask) {
    std::vector<int> idx;
    for (size_t i = 0; i < count; ++i) {
      if ((mask >> i) & 1) idx.push_back(static_cast<int>(i));
    }
    if (idx.size() < 2 || idx.size() > n + 1) continue;

    const RationalPoint& base = points[idx[0]];
    std::vector<RationalPoint> diffs;
    for (size_t i = 1; i < idx.size(); ++i) {
      RationalPoint d(n);
      for (size_t c = 0; c < n; ++c) d[c] = points[idx[i]][c] - base[c];
      diffs.push_back(std::move(d));
    }
    const size_t k = diffs.size();
    Matrix gram(k, std::vector<Rat>(k));
    std::vector<Rat> rhs(k);
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) gram[i][j] = dot(diffs[i], diffs[j]);
      rhs[i] = -dot(base, diffs[i]);
    }
    auto t = solve_unique(gram, rhs);
    if (!t) continue;  // affinely dependent subset; a smaller one covers it
    Rat tsum = 0;
    bool feasible = true;
    for (const Rat& ti : *t) {
      if (ti < 0) feasible = false;
      tsum += ti;
    }
    if (!feasible || tsum > 1) continue;
    RationalPoint x = base;
    for (size_t i = 0; i < k; ++i) {
      for (size_t c = 0; c < n; ++c) x[c] += (*t)[i] * diffs[i][c];
    }
    best = std::min(best, norm_squared(x));
  }
  return best;
}

FellowReport validate_fellow(const EuclideanFellow& f) {
  FellowReport report;
  const int n = f.dim();

  report.tags_consistent.checked = true;
  if (static_cast<int>(f.tags.size()) != f.lattice.vertex_count ||
      static_cast<int>(f.coords.size()) != f.lattice.vertex_count) {
    report.tags_consistent.passed = false;
    report.tags_consistent.violations.push_back({"fellow-shape", "fellow", "tags/coords must cover every vertex"});
    return report;
  }
  for (int v = 0; v < f.lattice.vertex_count; ++v) {
    if (static_cast<int>(f.coords[v].size()) != n) {
      report.tags_consistent.passed = false;
      report.tags_consistent.violations.push_back(
          {"coord-arity", "vertex " + std::to_string(v), "expected " + std::to_string(n) + " coordinates"});
    }
  }
  if (!report.tags_consistent.passed) return report;

  report.ideal_on_sphere.checked = true;
  report.hyperideal_outside.checked = true;
  for (int v = 0; v < f.lattice.vertex_count; ++v) {
    Rat norm2 = norm_squared(f.coords[v]);
    if (f.tags[v] == VertexTag::Ideal && norm2 != 1) {
      report.ideal_on_sphere.passed = false;
      report.ideal_on_sphere.violations.push_back(
          {"ideal-off-sphere", "vertex " + std::to_string(v), "|v|^2 = " + format_fraction(norm2) + ", expected 1"});
    }
    if (f.tags[v] == VertexTag::Hyperideal && norm2 <= 1) {
      report.hyperideal_outside.passed = false;
      report.hyperideal_outside.violations.push_back(
          {"hyperideal-inside", "vertex " + std::to_string(v), "|v|^2 = " + format_fraction(norm2) + " <= 1"});
    }
  }

  // Convexity: the polytope must affinely span R^n and every facet must be
  // flat with all remaining vertices strictly on one side.
  report.convex_supporting.checked = true;
  {
    Matrix rows;
    for (int v = 1; v < f.lattice.vertex_count; ++v) {
      std::vector<Rat> row(n);
      for (int c = 0; c < n; ++c) row[c] = f.coords[v][c] - f.coords[0][c];
      rows.push_back(std::move(row));
    }
    if (static_cast<int>(rref(rows).size()) != n) {
      report.convex_supporting.passed = false;
      report.convex_supporting.violations.push_back(
          {"not-full-dimensional", "fellow", "vertices do not affinely span the ambient space"});
    }
  }
  if (report.convex_supporting.passed) {
    for (size_t fi = 0; fi < f.lattice.facets().size(); ++fi) {
      const std::string where = "facet " + std::to_string(fi);
      VSet facet = f.lattice.facets()[fi];
      auto plane = facet_plane(f, facet, &report.convex_supporting.violations, where);
      if (!plane) {
        report.convex_supporting.passed = false;
        continue;
      }
      // Orient so some off-facet vertex is on the negative side, then demand
      // all of them are strictly negative.
      int sign = 0;
      for (int v = 0; v < f.lattice.vertex_count; ++v) {
        if (vtest(facet, v)) continue;
        Rat s = dot(plane->normal, f.coords[v]) - plane->offset;
        if (s == 0) {
          report.convex_supporting.passed = false;
          report.convex_supporting.violations.push_back(
              {"vertex-on-facet-plane", where, "vertex " + std::to_string(v) + " lies on the facet hyperplane"});
          continue;
        }
        int vs = s > 0 ? 1 : -1;
        if (sign == 0) sign = vs;
        if (vs != sign) {
          report.convex_supporting.passed = false;
          report.convex_supporting.violations.push_back(
              {"not-supporting", where, "vertices on both sides of the facet hyperplane"});
        }
      }
    }
  }

  // Codimension-two faces must meet the closed ball. Vertices are governed by
  // the tag conditions above, so the check applies in dimension >= 3 only.
  if (n >= 3) {
    report.ridges_meet_ball.checked = true;
    for (VSet ridge : f.lattice.faces[n - 2]) {
      std::vector<RationalPoint> pts;
      for (int v : vset_members(ridge)) pts.push_back(f.coords[v]);
      Rat m = min_norm_squared_over_hull(pts);
      if (m > 1) {
        report.ridges_meet_ball.passed = false;
        report.ridges_meet_ball.violations.push_back({"ridge-misses-ball",
                                                      "codim-2 face " + std::to_string(f.lattice.face_index(n - 2, ridge)),
                                                      "min |x|^2 = " + format_fraction(m) + " > 1"});
      }
    }
  }

  // Flag (without deciding anything) hyperideal pairs whose truncation planes
  // cross inside the open ball.
  if (report.clean()) {
    for (int v = 0; v < f.lattice.vertex_count; ++v) {
      if (f.tags[v] != VertexTag::Hyperideal) continue;
      for (int w = v + 1; w < f.lattice.vertex_count; ++w) {
        if (f.tags[w] != VertexTag::Hyperideal) continue;
        Matrix gram{{norm_squared(f.coords[v]), dot(f.coords[v], f.coords[w])},
                    {dot(f.coords[v], f.coords[w]), norm_squared(f.coords[w])}};
        auto lambda = solve_unique(gram, {Rat(1), Rat(1)});
        if (!lambda) continue;  // parallel planes never meet
        RationalPoint x(n, Rat(0));
        for (int c = 0; c < n; ++c) x[c] = (*lambda)[0] * f.coords[v][c] + (*lambda)[1] * f.coords[w][c];
        if (norm_squared(x) < 1) {
          report.notes.push_back({"truncation-planes-cross",
                                  "vertices " + std::to_string(v) + "," + std::to_string(w),
                                  "truncation planes intersect inside the open ball"});
        }
      }
    }
  }

  return report;
}

TruncationPlane truncation_plane(const RationalPoint& v) {
  if (norm_squared(v) <= 1) {
    throw std::invalid_argument("not hyperideal: |v|^2 = " + format_fraction(norm_squared(v)) + " <= 1");
  }
  return TruncationPlane{v};
}

OrthogonalityReport check_orthogonality(const EuclideanFellow& f) {
  if (!validate_fellow(f).clean()) {
    throw std::invalid_argument("check_orthogonality requires a validated fellow");
  }
  OrthogonalityReport report;
  const int n = f.dim();
  for (int v = 0; v < f.lattice.vertex_count; ++v) {
    if (f.tags[v] != VertexTag::Hyperideal) continue;
    for (size_t fi = 0; fi < f.lattice.facets().size(); ++fi) {
      VSet facet = f.lattice.facets()[fi];
      if (!vtest(facet, v)) continue;
      OrthogonalityEntry entry;
      entry.vertex = v;
      entry.facet = static_cast<int>(fi);
      auto plane = facet_plane(f, facet, nullptr, "");
      if (!plane) throw std::logic_error("validated fellow has a non-flat facet");
      if (plane->offset == 0) {
        // Lateral hyperplane through the origin: its pole is at infinity.
        entry.degenerate_pole = true;
        report.all_zero = false;
        report.entries.push_back(std::move(entry));
        continue;
      }
      RationalPoint pole(n);
      for (int c = 0; c < n; ++c) pole[c] = plane->normal[c] / plane->offset;
      entry.residual = dot(f.coords[v], pole) - 1;
      if (entry.residual != 0) report.all_zero = false;
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

Rat simplex_signed_volume(const std::vector<RationalPoint>& points) {
  const size_t n = points.size() - 1;
  Matrix m(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t c = 0; c < n; ++c) m[i][c] = points[i + 1][c] - points[0][c];
  }
  return determinant(std::move(m)) / factorial(static_cast<int>(n));
}

namespace {

RationalPoint centroid(const std::vector<int>& vertices, const std::vector<RationalPoint>& coords) {
  RationalPoint c(coords[0].size(), Rat(0));
  for (int v : vertices) {
    for (size_t i = 0; i < c.size(); ++i) c[i] += coords[v][i];
  }
  for (auto& x : c) x /= static_cast<int>(vertices.size());
  return c;
}

// Flag simplices of the centroid fan: chains (centroid of face, centroid of
// subface, ..., vertex) down the lattice.
void fan_chains(const FaceLattice& lattice, const std::vector<RationalPoint>& coords, int rank, VSet face,
                std::vector<RationalPoint>& chain, Rat& total) {
  if (rank == 0) {
    std::vector<RationalPoint> simplex = chain;
    simplex.push_back(coords[vset_members(face)[0]]);
    Rat v = simplex_signed_volume(simplex);
    total += v < 0 ? -v : v;
    return;
  }
  chain.push_back(centroid(vset_members(face), coords));
  for (VSet sub : lattice.faces[rank - 1]) {
    if ((sub & face) == sub) fan_chains(lattice, coords, rank - 1, sub, chain, total);
  }
  chain.pop_back();
}

}  // namespace

Rat exact_polytope_volume(const FaceLattice& lattice, const std::vector<RationalPoint>& coords) {
  Rat total = 0;
  std::vector<RationalPoint> chain;
  fan_chains(lattice, coords, lattice.dim, lattice.top(), chain, total);
  return total;
}

std::pair<std::vector<GeometricSimplex>, VolumeLedger> realize_subdivision(
    const EuclideanFellow& f, const std::vector<std::vector<int>>& simplices) {
  const int n = f.dim();
  std::vector<GeometricSimplex> out;
  VolumeLedger ledger;
  for (size_t s = 0; s < simplices.size(); ++s) {
    const auto& tuple = simplices[s];
    if (static_cast<int>(tuple.size()) != n + 1) {
      throw std::invalid_argument("simplex " + std::to_string(s) + " does not have dim+1 vertices");
    }
    GeometricSimplex gs;
    for (int v : tuple) {
      if (v < 0 || v >= f.lattice.vertex_count) {
        throw std::invalid_argument("simplex " + std::to_string(s) + " references a foreign vertex");
      }
      gs.vertices.push_back(f.coords[v]);
      gs.tags.push_back(f.tags[v]);
    }
    Rat vol = simplex_signed_volume(gs.vertices);
    if (vol == 0) {
      throw std::invalid_argument("degenerate simplex " + std::to_string(s));
    }
    ledger.simplex_volumes.push_back(vol < 0 ? -vol : vol);
    ledger.subdivision_total += ledger.simplex_volumes.back();
    out.push_back(std::move(gs));
  }
  ledger.polytope_volume = exact_polytope_volume(f.lattice, f.coords);
  ledger.balanced = ledger.subdivision_total == ledger.polytope_volume;
  if (!ledger.balanced) {
    throw std::invalid_argument("volume mismatch: subdivision total " + format_fraction(ledger.subdivision_total) +
                                " != polytope volume " + format_fraction(ledger.polytope_volume));
  }
  return {std::move(out), std::move(ledger)};
}

}  // namespace vtc
