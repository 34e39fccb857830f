#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vtc/complex.hpp"
#include "vtc/pulling.hpp"

namespace vtc {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Reads a complex in the "vtc-1" text schema (see docs/FORMAT.md). Strict:
// unknown directives, out-of-order ids, or malformed fields throw ParseError.
// The result is raw data; validation happens in PolyhedralComplex::build.
ComplexData read_complex_text(const std::string& text);
ComplexData read_complex_file(const std::string& path);

// Canonical serialization (identical to PolyhedralComplex::canonical_text).
std::string write_complex_text(const PolyhedralComplex& complex);

// Triangulation files reuse the complex schema: the simplices become the
// polyhedra, the gluings become the pairings, and three extra directive kinds
// carry provenance and the certificate:
//   source <simplex> <source-poly> <v0> ... <vn>
//   origin <pairing-index> <base-pairing|-1>
//   certificate <key> <value...>
std::string write_triangulation_text(const Triangulation& t, const PolyhedralComplex& complex);

struct ParsedTriangulation {
  ComplexData complex_data;                       // the simplices as a complex
  std::vector<std::pair<int, std::vector<int>>> sources;  // simplex -> (poly, vertex tuple)
  std::vector<int> origins;                       // per pairing (in file order)
  std::map<std::string, std::string> certificate;
};

ParsedTriangulation read_triangulation_text(const std::string& text);
ParsedTriangulation read_triangulation_file(const std::string& path);

// Rebuilds the Triangulation structure relative to `complex` and re-derives
// the vertex classes; throws std::invalid_argument when the file's provenance
// does not fit the complex.
Triangulation triangulation_from_parsed(const ParsedTriangulation& parsed, const PolyhedralComplex& complex);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a hash of the canonical complex text, as fixed-width hex; used to tie
// checkpoint tokens to their input.
std::string complex_content_hash(const PolyhedralComplex& complex);

}  // namespace vtc
