#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vtc/face_lattice.hpp"
#include "vtc/rational.hpp"

namespace vtc {

enum class VertexTag { Ideal, Hyperideal };

const char* tag_name(VertexTag t);

struct Polyhedron {
  FaceLattice lattice;
  std::vector<VertexTag> tags;                          // one per vertex
  std::optional<std::vector<RationalPoint>> coords;     // exact, all-or-none

  int vertex_count() const { return lattice.vertex_count; }
};

struct FacetRef {
  int poly = -1;
  int facet = -1;
  auto operator<=>(const FacetRef&) const = default;
};

// One identification of two distinct facet instances. Stored once in the
// canonical direction (src < dst); the inverse is implied.
struct FacetPairing {
  FacetRef src;
  FacetRef dst;
  std::vector<std::pair<int, int>> vertex_map;  // src vertex -> dst vertex, sorted by src

  std::vector<int> forward_map(int src_vertex_count) const;   // -1 off the facet
  std::vector<int> backward_map(int dst_vertex_count) const;
};

struct ComplexData {
  int dim = 0;
  std::vector<Polyhedron> polyhedra;
  std::vector<FacetPairing> pairings;
};

struct ValidationIssue {
  std::string code;
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> notes;
  bool free_boundary = false;

  bool clean() const { return errors.empty(); }
  std::string summary() const;
};

struct VertexInstance {
  int poly = -1;
  int vertex = -1;
  auto operator<=>(const VertexInstance&) const = default;
};

struct BuildOptions {
  bool allow_free_boundary = false;
};

struct ComplexBuildResult;

// A validated polyhedral complex with face pairings. Instances are immutable;
// orbit data (vertex and face classes) is computed at build time. Obtainable
// only through build(), so holding one certifies a clean validation report.
class PolyhedralComplex {
 public:
  static ComplexBuildResult build(ComplexData data, const BuildOptions& options = {});

  int dim() const { return data_.dim; }
  int polyhedron_count() const { return static_cast<int>(data_.polyhedra.size()); }
  const Polyhedron& polyhedron(int p) const { return data_.polyhedra[p]; }
  const std::vector<FacetPairing>& pairings() const { return data_.pairings; }
  bool closed() const { return !report_.free_boundary; }
  const ValidationReport& report() const { return report_; }

  // Pairing incident to a facet instance: (pairing index, true if the facet
  // is the pairing's src side). nullopt on an unpaired facet.
  std::optional<std::pair<int, bool>> pairing_on(int poly, int facet) const;

  // Vertex classes: finest partition of vertex instances closed under all
  // pairing bijections, numbered by smallest member in (poly, vertex) order.
  int vertex_class_count() const { return vertex_class_count_; }
  int vertex_class(int poly, int vertex) const { return vertex_class_of_[poly][vertex]; }
  const std::vector<std::vector<VertexInstance>>& vertex_class_members() const { return class_members_; }

  // Face classes per rank (same numbering convention).
  int face_class_count(int rank) const { return face_class_count_[rank]; }
  int face_class(int rank, int poly, int face_index) const { return face_class_of_[rank][poly][face_index]; }

  // Euler characteristic with deletion semantics: the alternating sum of
  // face-class counts over ranks 1..dim, i.e. of the complex with its vertex
  // classes removed. This is the quantity that multiplies under the covers
  // built in this project; the rank-0 class count is reported separately.
  long long euler_characteristic() const;

  // Canonical serialization used for hashing and byte-stable output.
  std::string canonical_text() const;

 private:
  PolyhedralComplex() = default;

  ComplexData data_;
  ValidationReport report_;
  std::vector<std::vector<int>> vertex_class_of_;
  std::vector<std::vector<VertexInstance>> class_members_;
  int vertex_class_count_ = 0;
  std::vector<std::vector<std::vector<int>>> face_class_of_;  // [rank][poly][face index]
  std::vector<int> face_class_count_;
  std::vector<std::vector<std::optional<std::pair<int, bool>>>> pairing_lookup_;
};

struct ComplexBuildResult {
  std::optional<PolyhedralComplex> complex;
  ValidationReport report;
};

// Replays a pairing word on a vertex instance. Letters are +/-(pairing index
// + 1); positive letters cross src -> dst. Returns nullopt if some letter is
// not applicable (the current vertex is not on the facet being crossed).
std::optional<VertexInstance> replay_word(const PolyhedralComplex& complex, const std::vector<int>& word,
                                          VertexInstance start);

}  // namespace vtc
