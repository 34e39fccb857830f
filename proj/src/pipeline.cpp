#include "vtc/pipeline.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include <json.hpp>

#include "vtc/io.hpp"

namespace vtc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int ideal_count(const Polyhedron& poly) {
  int count = 0;
  for (VertexTag t : poly.tags) count += t == VertexTag::Ideal ? 1 : 0;
  return count;
}

const char* mode_name(SearchMode mode) { return mode == SearchMode::Direct ? "direct" : "per-diagonal"; }

}  // namespace

std::string make_checkpoint_token(const PolyhedralComplex& complex, SearchMode mode, int next_degree) {
  return std::string("vtc-ckpt-1;mode=") + mode_name(mode) + ";next-degree=" + std::to_string(next_degree) +
         ";base=" + complex_content_hash(complex);
}

CheckpointToken parse_checkpoint_token(const std::string& token) {
  std::istringstream is(token);
  std::string part;
  CheckpointToken out{SearchMode::Direct, 1, ""};
  bool header = false, saw_mode = false, saw_degree = false;
  while (std::getline(is, part, ';')) {
    if (!header) {
      if (part != "vtc-ckpt-1") throw std::invalid_argument("unrecognized checkpoint token");
      header = true;
      continue;
    }
    size_t eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed checkpoint token field '" + part + "'");
    std::string key = part.substr(0, eq), value = part.substr(eq + 1);
    if (key == "mode") {
      if (value == "direct") {
        out.mode = SearchMode::Direct;
      } else if (value == "per-diagonal") {
        out.mode = SearchMode::PerDiagonal;
      } else {
        throw std::invalid_argument("unknown checkpoint mode '" + value + "'");
      }
      saw_mode = true;
    } else if (key == "next-degree") {
      out.next_degree = std::stoi(value);
      saw_degree = true;
    } else if (key == "base") {
      out.base_hash = value;
    } else {
      throw std::invalid_argument("unknown checkpoint field '" + key + "'");
    }
  }
  if (!header || !saw_mode || !saw_degree || out.base_hash.empty()) {
    throw std::invalid_argument("incomplete checkpoint token");
  }
  return out;
}

VertexOrdering make_ordering(const PolyhedralComplex& complex, const PipelineConfig& config) {
  if (config.ordering == OrderingMode::Default) return order_vertices(complex);
  if (config.ordering == OrderingMode::File) return order_vertices(complex, &config.ordering_classes);
  // Seeded Fisher-Yates over class ids; spelled out so the shuffle is stable
  // across standard libraries.
  std::vector<int> order(complex.vertex_class_count());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::mt19937 rng(config.ordering_seed);
  for (size_t i = order.size(); i > 1; --i) {
    size_t j = rng() % i;
    std::swap(order[i - 1], order[j]);
  }
  return order_vertices(complex, &order);
}

PipelineOutcome virtualize(const PolyhedralComplex& complex, const PipelineConfig& config) {
  const auto t0 = Clock::now();
  PipelineOutcome outcome;
  PipelineReport& report = outcome.report;

  if (!complex.closed()) {
    throw std::invalid_argument("virtualize requires a closed complex (free boundary present)");
  }

  report.dim = complex.dim();
  report.polyhedra = complex.polyhedron_count();
  report.pairings = static_cast<int>(complex.pairings().size());
  report.vertex_classes = complex.vertex_class_count();
  report.euler = complex.euler_characteristic();
  for (int rank = 0; rank <= complex.dim(); ++rank) report.face_class_counts.push_back(complex.face_class_count(rank));
  for (int p = 0; p < complex.polyhedron_count(); ++p) {
    report.max_ideal_per_input_cell = std::max(report.max_ideal_per_input_cell, ideal_count(complex.polyhedron(p)));
  }
  report.input_hash = complex_content_hash(complex);

  DiagonalSet base_diags = enumerate_diagonals(complex);
  report.diagonal_count = base_diags.size();
  report.returning_count = base_diags.returning_count;

  int start_degree = 1;
  if (config.resume_token) {
    CheckpointToken token = parse_checkpoint_token(*config.resume_token);
    if (token.base_hash != report.input_hash) {
      throw std::invalid_argument("checkpoint token belongs to a different input");
    }
    if (token.mode != config.mode) {
      throw std::invalid_argument("checkpoint token was produced by the other search mode");
    }
    // Direct mode resumes past the exhausted degrees; per-diagonal searches
    // are independent per diagonal and re-run from the bottom.
    if (config.mode == SearchMode::Direct) start_degree = token.next_degree;
  }

  const PolyhedralComplex* pulled = &complex;
  std::optional<CoverComplex> cover;

  if (base_diags.returning_count > 0) {
    const auto search_start = Clock::now();
    SearchConfig search_config;
    search_config.max_degree = config.max_degree;
    search_config.cap = config.cap;
    search_config.mode = config.mode;
    search_config.start_degree = start_degree;
    SearchOutcome search;
    try {
      search = search_cover_killing_diagonals(complex, search_config);
    } catch (const RegularizationCapExceeded& e) {
      report.error = e.what();
      report.search_ms = ms_since(search_start);
      report.total_ms = ms_since(t0);
      outcome.status = PipelineStatus::Exhausted;
      report.exhaustion_checkpoint = make_checkpoint_token(complex, config.mode, config.max_degree + 1);
      return outcome;
    }
    report.reps_tested = search.stats.reps_tested;
    report.capped_reps = search.stats.capped_reps;
    report.search_ms = ms_since(search_start);

    if (!search.success) {
      outcome.status = PipelineStatus::Exhausted;
      report.exhaustion_checkpoint = make_checkpoint_token(complex, config.mode, config.max_degree + 1);
      if (search.stats.stuck_diagonal) {
        const Diagonal& d = *search.stats.stuck_diagonal;
        report.stuck_diagonal = "(polyhedron " + std::to_string(d.poly) + ", vertices " + std::to_string(d.v) + "," +
                                std::to_string(d.w) + ")";
      }
      report.total_ms = ms_since(t0);
      return outcome;
    }

    cover = build_search_cover(complex, *search.success);
    report.cover_found = true;
    report.cover_degree = cover->degree();
    report.search_degree = search.success->found_at_degree;
    report.cover_regular = search.success->regular_rep.regular;
    for (const PermutationRep& rep : search.success->chosen_reps) {
      for (size_t g = 0; g < rep.gens.size(); ++g) {
        report.chosen_rep_lines.push_back("g" + std::to_string(g) + " -> " + cycle_notation(rep.gens[g]));
      }
    }
    // Independent recount of returning diagonals on the shipped cover.
    CoverDiagonalSet recount = diagonals_after_cover(base_diags, complex, *cover, {.attach_witnesses = false});
    report.cover_returning = recount.set.returning_count;
    pulled = &cover->total();
  } else {
    report.cover_found = true;
    report.cover_degree = 1;
    report.search_degree = 1;
    report.cover_regular = true;
    report.cover_returning = 0;
  }

  const auto pull_start = Clock::now();
  VertexOrdering ordering = make_ordering(*pulled, config);
  Triangulation tri = subdivide_complex(*pulled, ordering);
  report.pull_ms = ms_since(pull_start);

  report.simplex_count = static_cast<int>(tri.simplices.size());
  for (const auto& s : tri.simplices) {
    int ideals = 0;
    for (int v : s.local_vertices) {
      ideals += pulled->polyhedron(s.source_poly).tags[v] == VertexTag::Ideal ? 1 : 0;
    }
    report.ideal_histogram[ideals] += 1;
    report.max_ideal_per_output_simplex = std::max(report.max_ideal_per_output_simplex, ideals);
  }
  report.at_most_one_ideal_preserved =
      report.max_ideal_per_input_cell > 1 || report.max_ideal_per_output_simplex <= 1;

  // The constructor already verified the certificate; re-verify from scratch
  // against the pulled complex as the pipeline's own acceptance step.
  Certificate check = verify_triangulation(tri, *pulled);
  report.certificate_clean = check.clean();
  report.certificate_summary = check.summary();
  report.polyhedron_volumes = check.polyhedron_volumes;

  outcome.status = PipelineStatus::Success;
  outcome.triangulation = std::move(tri);
  outcome.pulled_complex = *pulled;
  report.total_ms = ms_since(t0);
  return outcome;
}

std::string PipelineReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "vtr-1";
  j["input"] = {{"dim", dim},
                {"polyhedra", polyhedra},
                {"pairings", pairings},
                {"vertex_classes", vertex_classes},
                {"euler_characteristic", euler},
                {"face_class_counts", face_class_counts},
                {"max_ideal_vertices_per_cell", max_ideal_per_input_cell},
                {"content_hash", input_hash}};
  j["diagonals"] = {{"total", diagonal_count}, {"returning", returning_count}};
  nlohmann::json cover;
  cover["found"] = cover_found;
  if (cover_found) {
    cover["degree"] = cover_degree;
    cover["search_degree"] = search_degree;
    cover["regular"] = cover_regular;
    cover["returning_diagonals"] = cover_returning;
    cover["chosen_reps"] = chosen_rep_lines;
  } else {
    cover["checkpoint"] = exhaustion_checkpoint;
    if (!stuck_diagonal.empty()) cover["stuck_diagonal"] = stuck_diagonal;
  }
  cover["reps_tested"] = reps_tested;
  cover["capped_reps"] = capped_reps;
  if (!error.empty()) cover["error"] = error;
  j["cover"] = cover;
  if (simplex_count > 0) {
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto& [ideals, count] : ideal_histogram) histogram[std::to_string(ideals)] = count;
    nlohmann::json volumes = nlohmann::json::array();
    for (const auto& [poly, volume] : polyhedron_volumes) {
      volumes.push_back({{"polyhedron", poly}, {"volume", volume}});
    }
    j["triangulation"] = {{"simplices", simplex_count},
                          {"ideal_vertex_histogram", histogram},
                          {"max_ideal_vertices_per_simplex", max_ideal_per_output_simplex},
                          {"at_most_one_ideal_preserved", at_most_one_ideal_preserved},
                          {"certificate_clean", certificate_clean},
                          {"volumes", volumes}};
  }
  j["timings"] = {{"total_ms", total_ms}, {"search_ms", search_ms}, {"pull_ms", pull_ms}};
  return j.dump(2) + "\n";
}

std::string PipelineReport::to_text() const {
  std::ostringstream os;
  os << "input: dim " << dim << ", " << polyhedra << " polyhedra, " << pairings << " pairings, " << vertex_classes
     << " vertex classes, euler " << euler << "\n";
  os << "diagonals: " << diagonal_count << " total, " << returning_count << " returning\n";
  if (cover_found) {
    os << "cover: degree " << cover_degree << (cover_regular ? " (regular)" : "") << ", found at enumeration degree "
       << search_degree << ", " << reps_tested << " reps tested";
    if (capped_reps > 0) os << " (" << capped_reps << " over cap)";
    os << "\n";
    os << "cover returning diagonals: " << cover_returning << "\n";
  } else {
    os << "cover: exhausted after " << reps_tested << " reps";
    if (!stuck_diagonal.empty()) os << " (stuck at diagonal " << stuck_diagonal << ")";
    os << "\n";
    if (!error.empty()) os << "error: " << error << "\n";
    os << "checkpoint: " << exhaustion_checkpoint << "\n";
  }
  if (simplex_count > 0) {
    os << "triangulation: " << simplex_count << " simplices, certificate "
       << (certificate_clean ? "clean" : "FAILED") << "\n";
    os << "ideal vertices per simplex:";
    for (const auto& [ideals, count] : ideal_histogram) os << " " << ideals << ":" << count;
    os << "\n";
    for (const auto& [poly, volume] : polyhedron_volumes) {
      os << "volume of polyhedron " << poly << ": " << volume << "\n";
    }
  }
  return os.str();
}

}  // namespace vtc
