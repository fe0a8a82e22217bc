#pragma once

#include "cicy/geometry/polytope.hpp"
#include "cicy/weights.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicy {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline long long read_int(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(std::string("unexpected end of input reading ") + what);
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError("not an integer: '" + tok + "'");
  return x;
}

inline void expect_end(std::istream& in) {
  std::string tok;
  if (in >> tok) throw ParseError("trailing data: '" + tok + "'");
}

inline std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace detail

/// Polytope text format: `<npoints> <dim>`, then one point per line. The polytope
/// is the convex hull of the points.
inline Polytope read_polytope(std::istream& in, Lattice side = Lattice::M) {
  const long long np = detail::read_int(in, "point count");
  const long long dim = detail::read_int(in, "dimension");
  if (np <= 0 || dim <= 0) throw ParseError("point count and dimension must be positive");
  std::vector<IntVector> pts(static_cast<std::size_t>(np));
  for (auto& p : pts)
    for (long long j = 0; j < dim; ++j) p.emplace_back(detail::read_int(in, "coordinate"));
  detail::expect_end(in);
  return Polytope::hull(pts, side);
}

inline Polytope read_polytope_file(const std::filesystem::path& path, Lattice side = Lattice::M) {
  auto in = detail::open(path);
  return read_polytope(in, side);
}

/// Writes the vertices of a lattice polytope.
inline void write_polytope(std::ostream& out, const Polytope& p) {
  if (!p.is_lattice_polytope()) throw std::invalid_argument("write_polytope: vertices are not integral");
  const auto verts = p.integral_vertices();
  out << verts.size() << ' ' << p.ambient_dim() << '\n';
  for (const auto& v : verts) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << v[j].to_string();
    out << '\n';
  }
}

inline void write_points(std::ostream& out, const std::vector<IntVector>& pts, std::size_t dim) {
  out << pts.size() << ' ' << dim << '\n';
  for (const auto& v : pts) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << v[j].to_string();
    out << '\n';
  }
}

/// Weight-block text format: `s n r`, then s rows of n weights, then r rows of s degrees.
inline WeightBlock read_weight_block(std::istream& in) {
  const long long s = detail::read_int(in, "relation count");
  const long long n = detail::read_int(in, "coordinate count");
  const long long r = detail::read_int(in, "equation count");
  if (s <= 0 || n <= 0 || r <= 0) throw ParseError("weight block sizes must be positive");
  WeightBlock b{IntMatrix(static_cast<std::size_t>(s), static_cast<std::size_t>(n)),
                IntMatrix(static_cast<std::size_t>(r), static_cast<std::size_t>(s))};
  for (long long i = 0; i < s; ++i)
    for (long long j = 0; j < n; ++j) b.weights(i, j) = detail::read_int(in, "weight");
  for (long long k = 0; k < r; ++k)
    for (long long i = 0; i < s; ++i) b.degrees(k, i) = detail::read_int(in, "degree");
  detail::expect_end(in);
  try {
    b.validate();
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  return b;
}

inline WeightBlock read_weight_block_file(const std::filesystem::path& path) {
  auto in = detail::open(path);
  return read_weight_block(in);
}

inline void write_weight_block(std::ostream& out, const WeightBlock& b) {
  out << b.relations() << ' ' << b.coordinates() << ' ' << b.equations() << '\n';
  auto row = [&](const IntMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).to_string();
    out << '\n';
  };
  for (std::size_t i = 0; i < b.relations(); ++i) row(b.weights, i);
  for (std::size_t k = 0; k < b.equations(); ++k) row(b.degrees, k);
}

inline NewtonMode parse_mode(const std::string& s) {
  if (s == "full") return NewtonMode::full_degree;
  if (s == "minkowski") return NewtonMode::minkowski;
  throw ParseError("unknown mode '" + s + "' (expected full or minkowski)");
}

inline std::string mode_name(NewtonMode m) { return m == NewtonMode::full_degree ? "full" : "minkowski"; }

/// One manifest line: `W <weight-block-file> <mode> <r>` or `P <polytope-file> <r>`.
/// Paths are relative to the manifest's directory. Lines that fail to parse keep
/// their error so a scan can report them without stopping.
struct ManifestEntry {
  enum class Kind { weights, polytope };
  Kind kind = Kind::polytope;
  std::string name;  ///< path as written
  std::filesystem::path path;
  NewtonMode mode = NewtonMode::full_degree;
  std::size_t r = 1;
  std::size_t line = 0;
  std::string error;

  [[nodiscard]] std::string descriptor() const {
    return kind == Kind::weights ? "W:" + name + ":" + mode_name(mode) : "P:" + name;
  }
};

inline std::vector<ManifestEntry> read_manifest(std::istream& in, const std::filesystem::path& base) {
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    ManifestEntry e;
    e.line = lineno;
    try {
      if (kind == "W") {
        e.kind = ManifestEntry::Kind::weights;
        std::string mode;
        if (!(ls >> e.name >> mode)) throw ParseError("expected: W <file> <mode> <r>");
        e.mode = parse_mode(mode);
      } else if (kind == "P") {
        e.kind = ManifestEntry::Kind::polytope;
        if (!(ls >> e.name)) throw ParseError("expected: P <file> <r>");
      } else {
        throw ParseError("unknown entry kind '" + kind + "'");
      }
      const long long r = detail::read_int(ls, "codimension");
      if (r <= 0) throw ParseError("codimension must be positive");
      e.r = static_cast<std::size_t>(r);
      detail::expect_end(ls);
      e.path = base / e.name;
    } catch (const ParseError& err) {
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<ManifestEntry> read_manifest_file(const std::filesystem::path& path) {
  auto in = detail::open(path);
  return read_manifest(in, path.parent_path());
}

}  // namespace cicy
