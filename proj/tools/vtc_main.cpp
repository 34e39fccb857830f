// vtc: validate polyhedral complexes with face pairings, enumerate finite
// covers, and produce verified pulling triangulations.
//
// Exit codes: 0 success, 1 verification failure, 2 search exhaustion,
// 3 input error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vtc/covers.hpp"
#include "vtc/io.hpp"
#include "vtc/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitInputError = 3;

vtc::PolyhedralComplex load_complex(const std::string& path, bool allow_free_boundary) {
  vtc::ComplexData data = vtc::read_complex_file(path);
  vtc::BuildOptions options;
  options.allow_free_boundary = allow_free_boundary;
  auto built = vtc::PolyhedralComplex::build(std::move(data), options);
  if (!built.complex) {
    throw std::invalid_argument(path + ": " + built.report.summary());
  }
  return std::move(*built.complex);
}

struct OrderingFlags {
  std::string spec = "default";

  void apply(vtc::PipelineConfig& config) const {
    if (spec == "default") {
      config.ordering = vtc::OrderingMode::Default;
      return;
    }
    if (spec.rfind("random:", 0) == 0) {
      config.ordering = vtc::OrderingMode::Random;
      config.ordering_seed = static_cast<unsigned>(std::stoul(spec.substr(7)));
      return;
    }
    if (spec.rfind("file:", 0) == 0) {
      config.ordering = vtc::OrderingMode::File;
      std::istringstream is(vtc::read_text_file(spec.substr(5)));
      int c;
      while (is >> c) config.ordering_classes.push_back(c);
      return;
    }
    throw std::invalid_argument("unknown ordering '" + spec + "' (use default | random:SEED | file:PATH)");
  }
};

void write_outputs(const vtc::PipelineOutcome& outcome, const std::string& report_path,
                   const std::string& triangulation_path, const std::string& cover_path) {
  if (!report_path.empty()) vtc::write_text_file(report_path, outcome.report.to_json());
  if (!triangulation_path.empty() && outcome.triangulation) {
    vtc::write_text_file(triangulation_path,
                         vtc::write_triangulation_text(*outcome.triangulation, *outcome.pulled_complex));
  }
  if (!cover_path.empty() && outcome.pulled_complex) {
    vtc::write_text_file(cover_path, vtc::write_complex_text(*outcome.pulled_complex));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyhedral complexes, finite covers, and pulling triangulations"};
  app.require_subcommand(1);

  std::string input_path, against_path, report_path, tri_path, cover_path, resume_token;
  bool free_boundary = false;
  int degree = 2;
  long long limit = -1;
  int max_degree = 24;
  long long cap = 10000;
  bool per_diagonal = false;
  OrderingFlags ordering;

  auto* validate = app.add_subcommand("validate", "validate a complex file");
  validate->add_option("input", input_path, "vtc-1 file")->required();
  validate->add_flag("--free-boundary", free_boundary, "allow unpaired facets");

  auto* diagonals = app.add_subcommand("diagonals", "list diagonals with returning flags and witness words");
  diagonals->add_option("input", input_path, "vtc-1 file")->required();
  diagonals->add_flag("--free-boundary", free_boundary, "allow unpaired facets");

  auto* covers = app.add_subcommand("covers", "finite covers via permutation representations");
  auto* covers_enumerate = covers->add_subcommand("enumerate", "list transitive reps of one degree");
  covers_enumerate->add_option("input", input_path, "vtc-1 file")->required();
  covers_enumerate->add_option("--degree", degree, "rep degree")->required();
  covers_enumerate->add_option("--limit", limit, "stop after this many reps");
  auto* covers_search = covers->add_subcommand("search", "search for a regular cover killing all diagonals");
  covers_search->add_option("input", input_path, "vtc-1 file")->required();
  covers_search->add_option("--max-degree", max_degree, "largest enumeration degree");
  covers_search->add_option("--cap", cap, "regularization cap (image order)");
  covers_search->add_flag("--per-diagonal", per_diagonal, "per-diagonal covers combined via a common cover");
  covers_search->add_option("--resume", resume_token, "checkpoint token from a previous exhaustion");
  covers_search->add_option("--report", report_path, "write the machine report (JSON) here");

  auto* pull = app.add_subcommand("pull", "subdivide a complex without returning diagonals");
  pull->add_option("input", input_path, "vtc-1 file")->required();
  pull->add_option("--order", ordering.spec, "default | random:SEED | file:PATH");
  pull->add_option("--out", tri_path, "write the triangulation here");
  pull->add_option("--report", report_path, "write the machine report (JSON) here");

  auto* virtualize = app.add_subcommand("virtualize", "full pipeline: cover until pullable, then pull and verify");
  virtualize->add_option("input", input_path, "vtc-1 file")->required();
  virtualize->add_option("--max-degree", max_degree, "largest enumeration degree");
  virtualize->add_option("--cap", cap, "regularization cap (image order)");
  virtualize->add_flag("--per-diagonal", per_diagonal, "per-diagonal covers combined via a common cover");
  virtualize->add_option("--resume", resume_token, "checkpoint token from a previous exhaustion");
  virtualize->add_option("--order", ordering.spec, "default | random:SEED | file:PATH");
  virtualize->add_option("--out-triangulation", tri_path, "write the triangulation here");
  virtualize->add_option("--out-cover", cover_path, "write the pulled (cover) complex here");
  virtualize->add_option("--report", report_path, "write the machine report (JSON) here");

  auto* verify = app.add_subcommand("verify", "re-verify a triangulation file");
  verify->add_option("input", input_path, "triangulation file")->required();
  verify->add_option("--against", against_path, "the complex the triangulation subdivides")->required();
  verify->add_flag("--free-boundary", free_boundary, "allow unpaired facets in the complex");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (validate->parsed()) {
      vtc::ComplexData data = vtc::read_complex_file(input_path);
      vtc::BuildOptions options;
      options.allow_free_boundary = free_boundary;
      auto built = vtc::PolyhedralComplex::build(std::move(data), options);
      std::cout << built.report.summary() << "\n";
      if (built.complex) {
        std::cout << "vertex classes: " << built.complex->vertex_class_count() << "\n";
        std::cout << "euler characteristic: " << built.complex->euler_characteristic() << "\n";
      }
      return built.complex ? kExitOk : kExitInputError;
    }

    if (diagonals->parsed()) {
      vtc::PolyhedralComplex complex = load_complex(input_path, free_boundary);
      vtc::DiagonalSet set = vtc::enumerate_diagonals(complex);
      std::cout << set.size() << " diagonals, " << set.returning_count << " returning\n";
      for (const vtc::Diagonal& d : set.diagonals) {
        std::cout << "polyhedron " << d.poly << " (" << d.v << "," << d.w << ") "
                  << (d.returning ? "returning" : "non-returning");
        if (d.witness) std::cout << " witness " << vtc::word_str(*d.witness);
        std::cout << "\n";
      }
      return kExitOk;
    }

    if (covers_enumerate->parsed()) {
      vtc::PolyhedralComplex complex = load_complex(input_path, false);
      vtc::GroupPresentation pres = vtc::extract_presentation(complex);
      vtc::RepEnumerationOptions options;
      options.limit = limit;
      long long count = vtc::enumerate_reps(pres, degree, options, [&](const vtc::PermutationRep& rep) {
        for (size_t g = 0; g < rep.gens.size(); ++g) {
          std::cout << "g" << g << " -> " << vtc::cycle_notation(rep.gens[g]) << "\n";
        }
        std::cout << "transitive " << (rep.transitive ? "yes" : "no") << ", regular " << (rep.regular ? "yes" : "no")
                  << "\n\n";
        return true;
      });
      std::cout << count << " reps at degree " << degree << "\n";
      return kExitOk;
    }

    if (covers_search->parsed() || virtualize->parsed()) {
      vtc::PolyhedralComplex complex = load_complex(input_path, false);
      vtc::PipelineConfig config;
      config.max_degree = max_degree;
      config.cap = cap;
      config.mode = per_diagonal ? vtc::SearchMode::PerDiagonal : vtc::SearchMode::Direct;
      ordering.apply(config);
      if (!resume_token.empty()) config.resume_token = resume_token;

      if (covers_search->parsed()) {
        // Search-only: report the cover (or exhaustion) without pulling.
        vtc::DiagonalSet base = vtc::enumerate_diagonals(complex, {.attach_witnesses = false});
        if (base.returning_count == 0) {
          std::cout << "no returning diagonals; nothing to search (run pull)\n";
          return kExitOk;
        }
        int start_degree = 1;
        if (config.resume_token) {
          vtc::CheckpointToken token = vtc::parse_checkpoint_token(*config.resume_token);
          if (token.base_hash != vtc::complex_content_hash(complex)) {
            throw std::invalid_argument("checkpoint token belongs to a different input");
          }
          if (token.mode != config.mode) throw std::invalid_argument("checkpoint token mode mismatch");
          if (config.mode == vtc::SearchMode::Direct) start_degree = token.next_degree;
        }
        vtc::SearchConfig sc{config.max_degree, config.cap, config.mode, start_degree};
        vtc::SearchOutcome out = vtc::search_cover_killing_diagonals(complex, sc);
        if (out.success) {
          std::cout << "regular cover of degree " << out.success->regular_rep.degree << " found at enumeration degree "
                    << out.success->found_at_degree << " (" << out.stats.reps_tested << " reps tested)\n";
          for (const vtc::PermutationRep& rep : out.success->chosen_reps) {
            for (size_t g = 0; g < rep.gens.size(); ++g) {
              std::cout << "g" << g << " -> " << vtc::cycle_notation(rep.gens[g]) << "\n";
            }
          }
          return kExitOk;
        }
        std::string token = vtc::make_checkpoint_token(complex, config.mode, config.max_degree + 1);
        std::cout << "exhausted through degree " << config.max_degree << " (" << out.stats.reps_tested
                  << " reps tested, " << out.stats.capped_reps << " over cap)\n";
        if (out.stats.stuck_diagonal) {
          std::cout << "stuck diagonal: polyhedron " << out.stats.stuck_diagonal->poly << " ("
                    << out.stats.stuck_diagonal->v << "," << out.stats.stuck_diagonal->w << ")\n";
        }
        std::cout << "checkpoint: " << token << "\n";
        return kExitExhausted;
      }

      vtc::PipelineOutcome outcome = vtc::virtualize(complex, config);
      std::cout << outcome.report.to_text();
      write_outputs(outcome, report_path, tri_path, cover_path);
      if (outcome.status == vtc::PipelineStatus::Exhausted) return kExitExhausted;
      return outcome.report.certificate_clean ? kExitOk : kExitVerifyFailed;
    }

    if (pull->parsed()) {
      vtc::PolyhedralComplex complex = load_complex(input_path, free_boundary);
      vtc::PipelineConfig config;
      ordering.apply(config);
      vtc::VertexOrdering vo = vtc::make_ordering(complex, config);
      vtc::Triangulation tri = vtc::subdivide_complex(complex, vo);
      std::cout << tri.simplices.size() << " simplices, certificate " << tri.certificate.summary() << "\n";
      if (!tri_path.empty()) vtc::write_text_file(tri_path, vtc::write_triangulation_text(tri, complex));
      return tri.certificate.clean() ? kExitOk : kExitVerifyFailed;
    }

    if (verify->parsed()) {
      vtc::PolyhedralComplex complex = load_complex(against_path, free_boundary);
      vtc::ParsedTriangulation parsed = vtc::read_triangulation_file(input_path);
      // A parseable file that does not reconstruct against the complex is a
      // failed verification, not an input error.
      try {
        vtc::Triangulation tri = vtc::triangulation_from_parsed(parsed, complex);
        std::cout << "certificate " << tri.certificate.summary() << "\n";
        return tri.certificate.clean() ? kExitOk : kExitVerifyFailed;
      } catch (const std::invalid_argument& e) {
        std::cout << "verification failed: " << e.what() << "\n";
        return kExitVerifyFailed;
      }
    }
  } catch (const vtc::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitInputError;
}
