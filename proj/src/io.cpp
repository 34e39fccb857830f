#include "vtc/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vtc {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string token;
  while (is >> token) tokens.push_back(token);
  return tokens;
}

int parse_int(const std::string& token, int line) {
  try {
    size_t used = 0;
    int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
    return value;
  } catch (...) {
    throw ParseError(line, "expected integer, got '" + token + "'");
  }
}

// Shared scanner for complex and triangulation files. `extras` enables the
// triangulation-only directives.
struct Scanner {
  ComplexData data;
  std::vector<std::pair<int, std::vector<int>>> sources;
  std::vector<int> origins;
  std::map<std::string, std::string> certificate;
  bool extras = false;

  int current_poly = -1;
  bool saw_header = false;
  bool saw_dim = false;
  std::vector<std::vector<std::vector<int>>> facet_lists;

  void feed(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto tokens = tokenize(line);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      if (!saw_header) {
        if (tokens.size() != 1 || tokens[0] != "vtc-1") throw ParseError(lineno, "expected header 'vtc-1'");
        saw_header = true;
        continue;
      }
      directive(tokens, lineno);
    }
    if (!saw_header) throw ParseError(0, "empty input");
    finish_poly();
    for (size_t p = 0; p < data.polyhedra.size(); ++p) {
      if (data.polyhedra[p].tags.empty()) throw ParseError(0, "polyhedron " + std::to_string(p) + " has no vertices");
    }
  }

  void finish_poly() {
    if (current_poly < 0) return;
    Polyhedron& poly = data.polyhedra[current_poly];
    auto built = build_face_lattice(data.dim, static_cast<int>(poly.tags.size()), facet_lists[current_poly]);
    if (!built.ok) {
      throw ParseError(0, "polyhedron " + std::to_string(current_poly) + ": " + built.issues.front().code + ": " +
                              built.issues.front().message);
    }
    poly.lattice = std::move(built.lattice);
  }

  void directive(const std::vector<std::string>& tokens, int line) {
    const std::string& kind = tokens[0];
    if (kind == "dim") {
      if (saw_dim || tokens.size() != 2) throw ParseError(line, "malformed or repeated dim");
      data.dim = parse_int(tokens[1], line);
      saw_dim = true;
      return;
    }
    if (!saw_dim) throw ParseError(line, "dim must come before '" + kind + "'");
    if (kind == "polyhedron") {
      if (tokens.size() != 2) throw ParseError(line, "usage: polyhedron <id>");
      if (current_poly == -2) throw ParseError(line, "polyhedron blocks must precede pairings");
      int id = parse_int(tokens[1], line);
      if (id != static_cast<int>(data.polyhedra.size())) {
        throw ParseError(line, "polyhedron ids must be consecutive from 0");
      }
      finish_poly();
      current_poly = id;
      data.polyhedra.emplace_back();
      facet_lists.emplace_back();
      return;
    }
    if (kind == "vertex") {
      if (current_poly < 0) throw ParseError(line, "vertex outside a polyhedron block");
      Polyhedron& poly = data.polyhedra[current_poly];
      if (tokens.size() != 3 && tokens.size() != static_cast<size_t>(3 + data.dim)) {
        throw ParseError(line, "usage: vertex <id> <ideal|hyperideal> [coords * dim]");
      }
      int id = parse_int(tokens[1], line);
      if (id != static_cast<int>(poly.tags.size())) throw ParseError(line, "vertex ids must be consecutive from 0");
      if (tokens[2] == "ideal") {
        poly.tags.push_back(VertexTag::Ideal);
      } else if (tokens[2] == "hyperideal") {
        poly.tags.push_back(VertexTag::Hyperideal);
      } else {
        throw ParseError(line, "unknown vertex tag '" + tokens[2] + "'");
      }
      if (tokens.size() > 3) {
        RationalPoint point;
        for (int c = 0; c < data.dim; ++c) {
          auto value = parse_fraction(tokens[3 + c]);
          if (!value) throw ParseError(line, "malformed fraction '" + tokens[3 + c] + "'");
          point.push_back(*value);
        }
        if (!poly.coords) {
          if (id != 0) throw ParseError(line, "coordinates must cover all vertices or none");
          poly.coords.emplace();
        }
        poly.coords->push_back(std::move(point));
      } else if (poly.coords) {
        throw ParseError(line, "coordinates must cover all vertices or none");
      }
      return;
    }
    if (kind == "facet") {
      if (current_poly < 0) throw ParseError(line, "facet outside a polyhedron block");
      if (tokens.size() < 2) throw ParseError(line, "facet needs vertex ids");
      std::vector<int> facet;
      for (size_t i = 1; i < tokens.size(); ++i) facet.push_back(parse_int(tokens[i], line));
      facet_lists[current_poly].push_back(std::move(facet));
      return;
    }
    if (kind == "pairing") {
      if (tokens.size() < 4) throw ParseError(line, "usage: pairing <p>.<f> <p>.<f> <v>:<v> ...");
      finish_poly();
      current_poly = -2;  // no more polyhedron blocks
      FacetPairing pr;
      auto parse_ref = [&](const std::string& token) {
        size_t point = token.find('.');
        if (point == std::string::npos) throw ParseError(line, "expected <poly>.<facet>, got '" + token + "'");
        return FacetRef{parse_int(token.substr(0, point), line), parse_int(token.substr(point + 1), line)};
      };
      pr.src = parse_ref(tokens[1]);
      pr.dst = parse_ref(tokens[2]);
      for (size_t i = 3; i < tokens.size(); ++i) {
        size_t colon = tokens[i].find(':');
        if (colon == std::string::npos) throw ParseError(line, "expected <v>:<v>, got '" + tokens[i] + "'");
        pr.vertex_map.emplace_back(parse_int(tokens[i].substr(0, colon), line),
                                   parse_int(tokens[i].substr(colon + 1), line));
      }
      std::sort(pr.vertex_map.begin(), pr.vertex_map.end());
      data.pairings.push_back(std::move(pr));
      return;
    }
    if (extras && kind == "source") {
      if (tokens.size() < 3) throw ParseError(line, "usage: source <simplex> <poly> <v>...");
      int simplex = parse_int(tokens[1], line);
      if (simplex != static_cast<int>(sources.size())) throw ParseError(line, "source ids must be consecutive from 0");
      std::vector<int> tuple;
      for (size_t i = 3; i < tokens.size(); ++i) tuple.push_back(parse_int(tokens[i], line));
      sources.emplace_back(parse_int(tokens[2], line), std::move(tuple));
      return;
    }
    if (extras && kind == "origin") {
      if (tokens.size() != 3) throw ParseError(line, "usage: origin <pairing> <base-pairing|-1>");
      int index = parse_int(tokens[1], line);
      if (index != static_cast<int>(origins.size())) throw ParseError(line, "origin ids must be consecutive from 0");
      origins.push_back(parse_int(tokens[2], line));
      return;
    }
    if (extras && kind == "certificate") {
      if (tokens.size() < 3) throw ParseError(line, "usage: certificate <key> <value...>");
      std::string value = tokens[2];
      for (size_t i = 3; i < tokens.size(); ++i) value += " " + tokens[i];
      certificate[tokens[1]] = value;
      return;
    }
    throw ParseError(line, "unknown directive '" + kind + "'");
  }
};

}  // namespace

ComplexData read_complex_text(const std::string& text) {
  Scanner scanner;
  scanner.feed(text);
  return std::move(scanner.data);
}

ComplexData read_complex_file(const std::string& path) { return read_complex_text(read_text_file(path)); }

std::string write_complex_text(const PolyhedralComplex& complex) { return complex.canonical_text(); }

std::string write_triangulation_text(const Triangulation& t, const PolyhedralComplex& complex) {
  PolyhedralComplex as_complex = triangulation_to_complex(t, complex);
  std::ostringstream os;
  os << as_complex.canonical_text();
  for (size_t si = 0; si < t.simplices.size(); ++si) {
    const auto& s = t.simplices[si];
    os << "source " << si << " " << s.source_poly;
    for (int v : s.local_vertices) os << " " << v;
    os << "\n";
  }
  // The build step sorts pairings canonically; recover each one's origin by
  // matching facet instances against the gluing list.
  std::map<std::pair<int, int>, int> origin_of;  // (simplex, opposite position) -> base pairing
  for (const auto& g : t.gluings) {
    origin_of[{g.src_simplex, g.src_opposite}] = g.origin_pairing;
    origin_of[{g.dst_simplex, g.dst_opposite}] = g.origin_pairing;
  }
  for (size_t k = 0; k < as_complex.pairings().size(); ++k) {
    const FacetPairing& pr = as_complex.pairings()[k];
    VSet wall = as_complex.polyhedron(pr.src.poly).lattice.facets()[pr.src.facet];
    int opposite = vset_members(as_complex.polyhedron(pr.src.poly).lattice.top() & ~wall)[0];
    os << "origin " << k << " " << origin_of.at({pr.src.poly, opposite}) << "\n";
  }
  os << "certificate distinct-classes " << (t.certificate.distinct_classes ? "ok" : "fail") << "\n";
  os << "certificate pairings-simplicial " << (t.certificate.pairings_simplicial ? "ok" : "fail") << "\n";
  os << "certificate tiling " << (t.certificate.tiling_ok ? "ok" : "fail") << "\n";
  os << "certificate volumes " << (t.certificate.volumes_balanced ? "ok" : "fail") << "\n";
  for (const auto& [poly, volume] : t.certificate.polyhedron_volumes) {
    os << "certificate volume-of " << poly << " " << volume << "\n";
  }
  return os.str();
}

ParsedTriangulation read_triangulation_text(const std::string& text) {
  Scanner scanner;
  scanner.extras = true;
  scanner.feed(text);
  ParsedTriangulation out;
  out.complex_data = std::move(scanner.data);
  out.sources = std::move(scanner.sources);
  out.origins = std::move(scanner.origins);
  out.certificate = std::move(scanner.certificate);
  return out;
}

ParsedTriangulation read_triangulation_file(const std::string& path) {
  return read_triangulation_text(read_text_file(path));
}

Triangulation triangulation_from_parsed(const ParsedTriangulation& parsed, const PolyhedralComplex& complex) {
  const int dim = complex.dim();
  if (parsed.complex_data.dim != dim) throw std::invalid_argument("triangulation dimension differs from the complex");
  if (parsed.sources.size() != parsed.complex_data.polyhedra.size()) {
    throw std::invalid_argument("every simplex needs a source line");
  }
  if (parsed.origins.size() != parsed.complex_data.pairings.size()) {
    throw std::invalid_argument("every pairing needs an origin line");
  }

  Triangulation t;
  t.dim = dim;
  for (size_t si = 0; si < parsed.sources.size(); ++si) {
    const auto& [poly, tuple] = parsed.sources[si];
    if (poly < 0 || poly >= complex.polyhedron_count()) {
      throw std::invalid_argument("source polyhedron out of range for simplex " + std::to_string(si));
    }
    if (static_cast<int>(tuple.size()) != dim + 1 || !std::is_sorted(tuple.begin(), tuple.end())) {
      throw std::invalid_argument("source tuple of simplex " + std::to_string(si) +
                                  " must list dim+1 ascending vertex ids");
    }
    Triangulation::Simplex s;
    s.source_poly = poly;
    s.local_vertices = tuple;
    for (int v : tuple) {
      if (v < 0 || v >= complex.polyhedron(poly).vertex_count()) {
        throw std::invalid_argument("source tuple of simplex " + std::to_string(si) + " leaves the polyhedron");
      }
      s.vertex_classes.push_back(complex.vertex_class(poly, v));
    }
    t.simplices.push_back(std::move(s));
  }

  for (size_t k = 0; k < parsed.complex_data.pairings.size(); ++k) {
    const FacetPairing& pr = parsed.complex_data.pairings[k];
    Triangulation::FacetGluing g;
    g.src_simplex = pr.src.poly;
    g.dst_simplex = pr.dst.poly;
    g.origin_pairing = parsed.origins[k];
    g.position_map.assign(dim + 1, -1);
    int src_seen = 0, dst_seen = 0;
    for (const auto& [a, b] : pr.vertex_map) {
      if (a < 0 || a > dim || b < 0 || b > dim) throw std::invalid_argument("pairing position out of range");
      g.position_map[a] = b;
      src_seen |= 1 << a;
      dst_seen |= 1 << b;
    }
    g.src_opposite = __builtin_ctz(~src_seen);
    g.dst_opposite = __builtin_ctz(~dst_seen);
    if (g.src_opposite > dim || g.dst_opposite > dim) throw std::invalid_argument("pairing does not omit one vertex");
    g.position_map[g.src_opposite] = g.dst_opposite;
    t.gluings.push_back(std::move(g));
  }

  t.certificate = verify_triangulation(t, complex);
  return t;
}

std::string complex_content_hash(const PolyhedralComplex& complex) {
  const std::string text = complex.canonical_text();
  unsigned long long hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  snprintf(buffer, sizeof(buffer), "%016llx", hash);
  return std::string(buffer);
}

}  // namespace vtc
