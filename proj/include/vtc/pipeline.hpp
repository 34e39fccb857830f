#pragma once

#include <map>
#include <optional>
#include <string>

#include "vtc/covers.hpp"
#include "vtc/pulling.hpp"

namespace vtc {

enum class OrderingMode { Default, Random, File };

struct PipelineConfig {
  int max_degree = 24;
  long long cap = 10000;
  SearchMode mode = SearchMode::Direct;
  OrderingMode ordering = OrderingMode::Default;
  unsigned ordering_seed = 0;
  std::vector<int> ordering_classes;  // OrderingMode::File: class ids in cone order
  std::optional<std::string> resume_token;
};

struct PipelineReport {
  // input
  int dim = 0;
  int polyhedra = 0;
  int pairings = 0;
  int vertex_classes = 0;
  long long euler = 0;
  std::vector<int> face_class_counts;  // rank 0..dim
  int max_ideal_per_input_cell = 0;
  std::string input_hash;
  // diagonals
  int diagonal_count = 0;
  int returning_count = 0;
  // cover
  bool cover_found = false;
  int cover_degree = 0;       // degree of the shipped (regular) cover
  int search_degree = 0;      // enumeration degree at which the search concluded
  bool cover_regular = false;
  long long reps_tested = 0;
  long long capped_reps = 0;
  int cover_returning = -1;   // recount on the cover (independent check)
  std::vector<std::string> chosen_rep_lines;  // generator -> cycle notation, per chosen rep
  std::string exhaustion_checkpoint;          // empty unless exhausted
  std::string stuck_diagonal;                 // per-diagonal exhaustion detail
  std::string error;                          // structural failure (e.g. cap exceeded)
  // triangulation
  int simplex_count = 0;
  std::map<int, int> ideal_histogram;  // ideal vertices per simplex -> count
  int max_ideal_per_output_simplex = 0;
  bool at_most_one_ideal_preserved = false;  // meaningful when input has <= 1 per cell
  std::string certificate_summary;
  bool certificate_clean = false;
  std::vector<std::pair<int, std::string>> polyhedron_volumes;
  // timings (excluded from golden comparisons)
  double total_ms = 0;
  double search_ms = 0;
  double pull_ms = 0;

  std::string to_json() const;    // machine form, schema "vtr-1"
  std::string to_text() const;    // human form
};

enum class PipelineStatus { Success, Exhausted };

struct PipelineOutcome {
  PipelineStatus status = PipelineStatus::Exhausted;
  PipelineReport report;
  std::optional<Triangulation> triangulation;
  std::optional<PolyhedralComplex> pulled_complex;  // what the triangulation subdivides
};

// End-to-end driver: validate -> diagonals -> (cover search if needed) ->
// pull -> verify -> report. Throws std::invalid_argument on unusable input
// (open complex, unsupported dimension with returning diagonals, bad resume
// token). Exhaustion is a normal outcome carrying a checkpoint token.
PipelineOutcome virtualize(const PolyhedralComplex& complex, const PipelineConfig& config);

// Ordering helper shared by `pull` and the pipeline.
VertexOrdering make_ordering(const PolyhedralComplex& complex, const PipelineConfig& config);

// Checkpoint tokens: "vtc-ckpt-1;mode=<direct|per-diagonal>;next-degree=<n>;base=<hash>".
std::string make_checkpoint_token(const PolyhedralComplex& complex, SearchMode mode, int next_degree);
struct CheckpointToken {
  SearchMode mode;
  int next_degree;
  std::string base_hash;
};
CheckpointToken parse_checkpoint_token(const std::string& token);

}  // namespace vtc
