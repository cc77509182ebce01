#pragma once

#include "rainbow/constructions.hpp"
#include "rainbow/io.hpp"
#include "rainbow/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

struct GenSpec {
  std::string construction;  // cycle | k4 | ach | blowup | dummy | random
  int r = 3;
  int n = 4;
  int m = 1;            // dummy edges
  int s = 0;            // random matching size, 0 = n
  int q = 2;            // blowup copies
  std::string base = "ach";  // base family for dummy and blowup
  std::uint64_t seed = 0;
};

Instance generate(const GenSpec& spec);
std::string instance_name(const GenSpec& spec);

struct SolverSpec {
  std::string solver = "exact";  // exact | greedy | local | sample
  std::optional<std::uint64_t> node_budget;
  std::uint64_t seed = 0;
  unsigned retries = 20;
  bool parallel = false;
};

struct SolveOutcome {
  SolveReport report;
  std::optional<SampleResult> sample;
  bool budget_exhausted = false;  // exact budget ran out or sampling failed

  Json to_json(const Instance& inst) const;
};

SolveOutcome run_solver(const Instance& inst, const SolverSpec& spec);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<CheckResult> checks;
  bool ok() const;
};

// Re-checks a stored report against its instance: witness validity, the
// certificate claim, the good-edge counting inequality, and the set-pair
// systems at every good edge.
VerifyResult verify_report(const Instance& inst, const SolveReport& report,
                           std::optional<std::uint64_t> node_budget = std::nullopt);

struct BoundCheck {
  std::string id;
  std::string relation;  // "size >= value", "size <= value", "lhs <= rhs"
  std::string value;
  bool pass = false;
};

struct SweepRecord {
  std::size_t cell = 0;
  int r = 0;
  int n = 0;
  std::string generator;
  std::string solver;
  std::uint64_t seed = 0;
  std::string status = "ok";  // ok | skipped: <reason>
  std::size_t size = 0;
  std::string certificate;
  std::size_t min_matching_size = 0;
  std::vector<BoundCheck> bounds;
  std::string instance_path;  // relative to the results directory
  std::string report_path;
  double wall_ms = 0.0;

  Json to_json() const;
  static SweepRecord from_json(const Json& j);
};

// Bound checks that apply to a solved cell; every pass flag is a function of
// the stored fields.
std::vector<BoundCheck> applicable_bounds(const Instance& inst, const std::string& generator,
                                          const SolveOutcome& outcome);

struct SweepConfig {
  std::vector<int> rs;
  std::vector<int> ns;
  std::vector<std::string> constructions;
  std::vector<std::string> solvers;
  std::uint64_t seed = 0;
  int m = 1;
  std::optional<std::uint64_t> node_budget;
  unsigned retries = 20;
  std::string out_dir;
  std::string run_id;  // empty = UTC timestamp
  unsigned jobs = 1;
};

struct SweepResult {
  std::string sweep_dir;
  std::vector<SweepRecord> records;
};

// Layout: <out>/instances/, <out>/sweeps/<run>/{cells,reports}/,
// <out>/sweeps/<run>/records.jsonl and summary.csv. Existing files are never
// overwritten.
SweepResult run_sweep(const SweepConfig& cfg);

std::string sweep_csv_header();
std::string to_csv_row(const SweepRecord& rec);

// "3", "3..6" or "3,5,8".
std::vector<int> parse_int_range(const std::string& text);

}  // namespace rainbow
