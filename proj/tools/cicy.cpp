// Command-line front end: polytope utilities, Newton polytopes of weight systems,
// nef partitions with Hodge numbers, reflexive subpolytopes and manifest scans.

#include "cicy/geometry/lattice_points.hpp"
#include "cicy/geometry/subpolytopes.hpp"
#include "cicy/io.hpp"
#include "cicy/scan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

using namespace cicy;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

Polytope load_polytope(const std::string& file) {
  if (file == "-") return read_polytope(std::cin);
  return read_polytope_file(file);
}

WeightBlock load_block(const std::string& file) {
  if (file == "-") return read_weight_block(std::cin);
  return read_weight_block_file(file);
}

// Writes to the named file, or stdout when the name is empty or "-".
template <class F>
void emit(const std::string& out, F&& write) {
  if (out.empty() || out == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw ParseError("cannot write " + out);
  write(f);
}

int cmd_dual(const std::string& file) {
  auto p = load_polytope(file);
  Polytope d;
  try {
    d = dual(p);
  } catch (const OriginNotInterior& e) {
    std::cerr << "dual: " << e.what() << '\n';
    return kNegative;
  }
  if (!d.is_lattice_polytope()) {
    std::cerr << "dual: the dual polytope has non-integral vertices\n";
    for (const auto& v : d.vertices()) std::cerr << "  " << v.to_string() << '\n';
    return kNegative;
  }
  write_polytope(std::cout, d);
  return kOk;
}

int cmd_points(const std::string& file, bool list) {
  auto p = load_polytope(file);
  auto pts = lattice_points(p);
  std::cout << "points: " << pts.size() << '\n';
  if (list) write_points(std::cout, pts, p.ambient_dim());
  return kOk;
}

int cmd_reflexive(const std::string& file) {
  bool yes = is_reflexive(load_polytope(file));
  std::cout << "reflexive: " << (yes ? "yes" : "no") << '\n';
  return yes ? kOk : kNegative;
}

int cmd_newton(const std::string& file, const std::string& mode, const std::string& out) {
  auto p = cy_polytope(load_block(file), parse_mode(mode));
  emit(out, [&](std::ostream& o) { write_polytope(o, p); });
  return kOk;
}

int cmd_nef(const std::string& file, std::size_t r, bool hodge, const std::string& out) {
  auto p = load_polytope(file);
  std::vector<ScanRecord> records;
  try {
    records = nef_records(p, r, hodge, file == "-" ? "stdin" : file);
  } catch (const NotReflexive& e) {
    std::cerr << "nef: " << e.what() << '\n';
    return kNegative;
  }
  emit(out, [&](std::ostream& o) {
    write_record_header(o, hodge);
    for (const auto& rec : records) write_record(o, rec);
  });
  return kOk;
}

int cmd_subpoly(const std::string& file, std::size_t max_drop, const std::string& out_dir) {
  auto p = load_polytope(file);
  SubpolytopeSearchStats st;
  auto subs = reflexive_subpolytopes(p, max_drop, &st);
  const auto total = count_lattice_points(p);
  for (std::size_t k = 0; k < subs.size(); ++k) {
    const auto n = count_lattice_points(subs[k]);
    std::cout << "# subpolytope " << k << ": " << n << " points (" << total - n << " dropped), "
              << subs[k].vertices().size() << " vertices\n";
    if (out_dir.empty()) {
      write_polytope(std::cout, subs[k]);
    } else {
      std::filesystem::create_directories(out_dir);
      auto path = std::filesystem::path(out_dir) / ("sub_" + std::to_string(k) + ".txt");
      emit(path.string(), [&](std::ostream& o) { write_polytope(o, subs[k]); });
    }
  }
  std::cout << "found: " << subs.size() << " (nodes " << st.nodes << ", reflexive before maximality "
            << st.reflexive << ")\n";
  return kOk;
}

int cmd_scan(const std::string& manifest, const std::string& out, const std::string& plot, std::size_t jobs) {
  auto entries = read_manifest_file(manifest);
  if (entries.empty()) {
    std::cerr << "scan: empty manifest\n";
    emit(out, [&](std::ostream& o) { write_record_header(o, true); });
    if (!plot.empty()) emit(plot, [&](std::ostream& o) { write_plot(o, {}); });
    return kInputError;
  }
  auto report = run_scan(entries, jobs);
  for (const auto& e : report.errors) std::cerr << "scan: " << e << '\n';
  emit(out, [&](std::ostream& o) {
    write_record_header(o, true);
    for (const auto& rec : report.records) write_record(o, rec);
  });
  if (!plot.empty()) emit(plot, [&](std::ostream& o) { write_plot(o, report); });
  return report.succeeded == 0 ? kInputError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nef partitions and string-theoretic Hodge numbers of toric complete intersections"};
  app.require_subcommand(1);

  std::string file, out, mode = "full", plot, out_dir;
  std::size_t r = 2, max_drop = 5, jobs = 1;
  bool hodge = false, list = false;

  auto* dual_cmd = app.add_subcommand("dual", "print the dual of a polytope");
  dual_cmd->add_option("file", file, "polytope file, - for stdin")->required();

  auto* points_cmd = app.add_subcommand("points", "count lattice points");
  points_cmd->add_option("file", file, "polytope file, - for stdin")->required();
  points_cmd->add_flag("--list", list, "also print the points");

  auto* refl_cmd = app.add_subcommand("reflexive", "test reflexivity");
  refl_cmd->add_option("file", file, "polytope file, - for stdin")->required();

  auto* newton_cmd = app.add_subcommand("newton", "Calabi-Yau polytope of a weight block");
  newton_cmd->add_option("file", file, "weight-block file, - for stdin")->required();
  newton_cmd->add_option("--mode", mode, "full or minkowski")->check(CLI::IsMember({"full", "minkowski"}));
  newton_cmd->add_option("--out", out, "output file (default stdout)");

  auto* nef_cmd = app.add_subcommand("nef", "enumerate nef partitions");
  nef_cmd->add_option("file", file, "reflexive polytope file, - for stdin")->required();
  nef_cmd->add_option("-r", r, "codimension")->check(CLI::PositiveNumber);
  nef_cmd->add_flag("--hodge", hodge, "compute Hodge numbers");
  nef_cmd->add_option("--out", out, "output TSV (default stdout)");

  auto* sub_cmd = app.add_subcommand("subpoly", "maximal reflexive subpolytopes");
  sub_cmd->add_option("file", file, "polytope file, - for stdin")->required();
  sub_cmd->add_option("--max-drop", max_drop, "most lattice points to omit");
  sub_cmd->add_option("--out", out_dir, "directory for one file per subpolytope");

  auto* scan_cmd = app.add_subcommand("scan", "run a manifest of inputs");
  scan_cmd->add_option("manifest", file, "manifest file")->required();
  scan_cmd->add_option("--out", out, "records TSV (default stdout)");
  scan_cmd->add_option("--plot", plot, "distinct (h21, h11) pairs TSV");
  scan_cmd->add_option("--jobs", jobs, "items processed in parallel")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*dual_cmd) return cmd_dual(file);
    if (*points_cmd) return cmd_points(file, list);
    if (*refl_cmd) return cmd_reflexive(file);
    if (*newton_cmd) return cmd_newton(file, mode, out);
    if (*nef_cmd) return cmd_nef(file, r, hodge, out);
    if (*sub_cmd) return cmd_subpoly(file, max_drop, out_dir);
    if (*scan_cmd) return cmd_scan(file, out, plot, jobs);
  } catch (const std::exception& e) {
    std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
