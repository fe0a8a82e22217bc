#pragma once

#include "cicy/geometry/lattice_points.hpp"
#include "cicy/hodge.hpp"
#include "cicy/io.hpp"
#include "cicy/nef_partition.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace cicy {

/// One output row: a nef partition of an input polytope and its invariants.
struct ScanRecord {
  std::string input;
  std::string partition;  ///< parts as vertex indices of the dual, e.g. "0,1,2|3,4,5"
  std::optional<HodgeData> hodge;
  std::size_t points = 0;
  std::size_t vertices = 0;
  std::size_t dual_points = 0;
  std::size_t dual_vertices = 0;

  [[nodiscard]] Integer minus_chi() const { return hodge ? -hodge->chi : Integer(0); }
};

inline std::string partition_id(const NefPartition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (i) s += '|';
    for (std::size_t j = 0; j < p.parts[i].size(); ++j) s += (j ? "," : "") + std::to_string(p.parts[i][j]);
  }
  return s;
}

inline void write_record_header(std::ostream& out, bool hodge) {
  out << "input\tpartition";
  if (hodge) out << "\th11\th21\tminus_chi";
  out << "\tpoints\tvertices\tdual_points\tdual_vertices\n";
}

inline void write_record(std::ostream& out, const ScanRecord& r) {
  out << r.input << '\t' << r.partition;
  if (r.hodge) out << '\t' << r.hodge->h11().to_string() << '\t' << r.hodge->h21().to_string() << '\t'
                   << r.minus_chi().to_string();
  out << '\t' << r.points << '\t' << r.vertices << '\t' << r.dual_points << '\t' << r.dual_vertices << '\n';
}

/// Records for every unordered nef partition of length r of the reflexive polytope
/// delta (given on the M side), in enumeration order.
inline std::vector<ScanRecord> nef_records(const Polytope& delta, std::size_t r, bool with_hodge,
                                           const std::string& input) {
  if (!is_reflexive(delta)) throw NotReflexive("input polytope is not reflexive");
  const auto dd = dual(delta);
  ScanRecord base;
  base.input = input;
  base.points = count_lattice_points(delta);
  base.vertices = delta.vertices().size();
  base.dual_points = count_lattice_points(dd);
  base.dual_vertices = dd.vertices().size();
  std::vector<ScanRecord> out;
  for (const auto& p : enumerate_nef_partitions(dd, r)) {
    ScanRecord rec = base;
    rec.partition = partition_id(p);
    if (with_hodge) rec.hodge = compute_hodge(p);
    out.push_back(std::move(rec));
  }
  return out;
}

/// Calabi-Yau polytope of a manifest entry.
inline Polytope entry_polytope(const ManifestEntry& e) {
  if (!e.error.empty()) throw ParseError(e.error);
  if (e.kind == ManifestEntry::Kind::weights) return cy_polytope(read_weight_block_file(e.path), e.mode);
  return read_polytope_file(e.path);
}

struct ScanItemResult {
  std::vector<ScanRecord> records;
  std::string error;
};

struct ScanReport {
  std::vector<ScanRecord> records;  ///< deduplicated, in manifest order
  std::vector<std::string> errors;  ///< one line per failed item
  std::size_t succeeded = 0;
};

/// Runs every entry with Hodge numbers, up to `jobs` items at a time. Results are
/// merged in manifest order, so the report does not depend on `jobs`. Records
/// with the same input and the same invariants are merged into the first one.
inline ScanReport run_scan(const std::vector<ManifestEntry>& entries, std::size_t jobs = 1) {
  std::vector<ScanItemResult> results(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const auto& e = entries[i];
      try {
        results[i].records = nef_records(entry_polytope(e), e.r, true, e.descriptor());
      } catch (const std::exception& ex) {
        results[i].error = ex.what();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, entries.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ScanReport report;
  using Key = std::tuple<std::string, std::string, std::string, std::string, std::size_t, std::size_t, std::size_t,
                         std::size_t>;
  std::set<Key> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!results[i].error.empty()) {
      report.errors.push_back("line " + std::to_string(entries[i].line) + " (" + entries[i].name +
                              "): " + results[i].error);
      continue;
    }
    ++report.succeeded;
    for (auto& rec : results[i].records) {
      Key k{rec.input, rec.hodge->h11().to_string(), rec.hodge->h21().to_string(), rec.minus_chi().to_string(),
            rec.points, rec.vertices, rec.dual_points, rec.dual_vertices};
      if (seen.insert(k).second) report.records.push_back(std::move(rec));
    }
  }
  return report;
}

/// Distinct (h21, h11) pairs of a report, sorted, with a header line.
inline void write_plot(std::ostream& out, const ScanReport& report) {
  std::set<std::pair<Integer, Integer>> pairs;
  for (const auto& r : report.records) pairs.emplace(r.hodge->h21(), r.hodge->h11());
  out << "h21\th11\n";
  for (const auto& [h21, h11] : pairs) out << h21.to_string() << '\t' << h11.to_string() << '\n';
}

}  // namespace cicy
