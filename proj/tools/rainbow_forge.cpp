// rainbow-forge: generate, solve, bound, verify and sweep rainbow-matching
// instances.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure, 3 solver budget
// exhausted (or sampling failed), 4 verification failure.

#include "rainbow/bounds.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/experiments.hpp"
#include "rainbow/io.hpp"
#include "rainbow/solvers.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace {

using namespace rainbow;

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kBudget = 3, kVerify = 4 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

std::string render_text(const SolveReport& rep, const Instance& inst) {
  std::ostringstream out;
  out << "solver: " << rep.solver << "\ncertificate: " << to_string(rep.certificate)
      << "\nsize: " << rep.size() << " of " << inst.num_colors() << " colors\n";
  // Colors are shown 1-based here; files keep them 0-based.
  for (const auto& ce : rep.matching.assignment)
    out << "  color " << ce.color + 1 << ": " << to_string(ce.edge) << '\n';
  return out.str();
}

struct BoundsRow {
  int r;
  std::int64_t n;
  std::string formula;
  BoundValue value;
};

std::string bounds_table(const std::vector<int>& rs, const std::vector<int>& ns, bool csv) {
  std::vector<BoundsRow> rows;
  for (int r : rs) {
    for (int n : ns) {
      rows.push_back({r, n, "lower_g_prime", lower_bound_g_prime(r, n)});
      rows.push_back({r, n, "upper_g", upper_bound_g(r, n)});
      HBounds h = bounds_h(r, n);
      rows.push_back({r, n, "lower_h", h.lower});
      rows.push_back({r, n, "upper_h_prime", h.upper});
      rows.push_back({r, n, "weak_asymptotic", weak_asymptotic_bound(r, n)});
      rows.push_back({r, n, "ach_upper", ach_bound(r, n)});
    }
  }
  std::ostringstream out;
  if (csv) {
    out << "r,n,formula,value,floor,ceil,exact,real,domain_ok,note\n";
    for (const auto& row : rows)
      out << row.r << ',' << row.n << ',' << row.formula << ',' << to_string(row.value.value) << ','
          << row.value.floor << ',' << row.value.ceil << ',' << (row.value.exact ? "yes" : "no")
          << ',' << to_string(row.value.real) << ',' << (row.value.domain_ok ? "yes" : "no") << ",\""
          << row.value.domain_note << "\"\n";
  } else {
    for (const auto& row : rows) {
      out << "r=" << row.r << " n=" << row.n << "  " << row.formula << " = "
          << to_string(row.value.value);
      if (!row.value.exact) out << " (floor roots; real " << to_string(row.value.real) << ")";
      out << "  [" << row.value.floor << ", " << row.value.ceil << "]";
      if (!row.value.domain_ok) out << "  out of domain: " << row.value.domain_note;
      else if (!row.value.domain_note.empty()) out << "  note: " << row.value.domain_note;
      out << '\n';
    }
  }
  return out.str();
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rainbow matchings in r-uniform hypergraphs"};
  app.require_subcommand(1);

  GenSpec gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Write an instance file for a construction");
  gen_cmd->add_option("--construction", gen.construction, "Construction")
      ->required()
      ->check(CLI::IsMember({"cycle", "k4", "ach", "blowup", "dummy", "random"}));
  gen_cmd->add_option("--r", gen.r, "Uniformity");
  gen_cmd->add_option("--n", gen.n, "Number of matchings")->required();
  gen_cmd->add_option("--m", gen.m, "Dummy edge count");
  gen_cmd->add_option("--s", gen.s, "Random matching size (default n)");
  gen_cmd->add_option("--q", gen.q, "Blow-up copies");
  gen_cmd->add_option("--base", gen.base, "Base family for dummy/blowup")
      ->check(CLI::IsMember({"cycle", "k4", "ach", "random"}));
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

  SolverSpec solve;
  std::string solve_in, solve_out, solve_format = "json";
  std::uint64_t node_budget = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("instance", solve_in, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--solver", solve.solver, "Solver")
      ->check(CLI::IsMember({"exact", "greedy", "local", "sample"}));
  solve_cmd->add_flag("--exact", [&](std::int64_t) { solve.solver = "exact"; }, "Same as --solver exact");
  solve_cmd->add_option("--node-budget", node_budget, "Exact search node budget (0 = unlimited)");
  solve_cmd->add_option("--seed", solve.seed, "Seed for local/sample");
  solve_cmd->add_option("--retries", solve.retries, "Sampling retries");
  solve_cmd->add_flag("--parallel", solve.parallel, "Parallel exact search");
  solve_cmd->add_option("--format", solve_format, "Output format")->check(CLI::IsMember({"json", "text"}));
  solve_cmd->add_option("-o,--output", solve_out, "Report file (default stdout)");

  std::string bounds_r = "3", bounds_n, bounds_format = "text";
  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate the bound formulas");
  bounds_cmd->add_option("--r", bounds_r, "r values: 3, 3..5 or 3,4");
  bounds_cmd->add_option("--n", bounds_n, "n values: 100, 100..110 or 100,1000")->required();
  bounds_cmd->add_option("--format", bounds_format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  std::string verify_inst, verify_report_path;
  std::uint64_t verify_budget = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a stored report");
  verify_cmd->add_option("instance", verify_inst, "Instance file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("report", verify_report_path, "Report file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--node-budget", verify_budget, "Node budget for exact re-solve (0 = unlimited)");

  SweepConfig sweep;
  std::string sweep_r = "3", sweep_n, sweep_gen = "ach", sweep_solver = "exact,greedy,local",
              sweep_format = "text";
  std::uint64_t sweep_budget = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a generator x solver grid");
  sweep_cmd->add_option("--r", sweep_r, "r values");
  sweep_cmd->add_option("--n", sweep_n, "n values")->required();
  sweep_cmd->add_option("--construction", sweep_gen, "Comma-separated constructions");
  sweep_cmd->add_option("--solver", sweep_solver, "Comma-separated solvers");
  sweep_cmd->add_option("--m", sweep.m, "Dummy edge count");
  sweep_cmd->add_option("--seed", sweep.seed, "Seed");
  sweep_cmd->add_option("--node-budget", sweep_budget, "Exact node budget (0 = unlimited)");
  sweep_cmd->add_option("--retries", sweep.retries, "Sampling retries");
  sweep_cmd->add_option("--out", sweep.out_dir, "Results directory")->required();
  sweep_cmd->add_option("--run-id", sweep.run_id, "Sweep directory name (default UTC timestamp)");
  sweep_cmd->add_option("--jobs", sweep.jobs, "Concurrent cells");
  sweep_cmd->add_option("--format", sweep_format, "Summary printed: text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) {
      emit(serialize_instance(generate(gen)), gen_out);
      return kOk;
    }

    if (*solve_cmd) {
      Instance inst = load_instance(solve_in);
      if (node_budget) solve.node_budget = node_budget;
      SolveOutcome outcome = run_solver(inst, solve);
      std::string text = solve_format == "text" ? render_text(outcome.report, inst)
                                                : outcome.to_json(inst).dump(2) + "\n";
      emit(text, solve_out);
      if (outcome.budget_exhausted) {
        std::cerr << (outcome.sample ? "sampling did not reach n: " + outcome.sample->failure_reason
                                     : std::string("node budget exhausted; result is heuristic"))
                  << '\n';
        return kBudget;
      }
      return kOk;
    }

    if (*bounds_cmd) {
      std::cout << bounds_table(parse_int_range(bounds_r), parse_int_range(bounds_n),
                                bounds_format == "csv");
      return kOk;
    }

    if (*verify_cmd) {
      Instance inst = load_instance(verify_inst);
      SolveReport rep = report_from_json(Json::parse(read_file(verify_report_path)));
      std::optional<std::uint64_t> budget;
      if (verify_budget) budget = verify_budget;
      VerifyResult res = verify_report(inst, rep, budget);
      for (const auto& c : res.checks)
        std::cout << (c.pass ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": ")
                  << c.detail << '\n';
      return res.ok() ? kOk : kVerify;
    }

    if (*sweep_cmd) {
      sweep.rs = parse_int_range(sweep_r);
      sweep.ns = parse_int_range(sweep_n);
      sweep.constructions = split(sweep_gen);
      sweep.solvers = split(sweep_solver);
      if (sweep_budget) sweep.node_budget = sweep_budget;
      SweepResult res = run_sweep(sweep);
      if (sweep_format == "csv") {
        std::cout << sweep_csv_header() << '\n';
        for (const auto& rec : res.records) std::cout << to_csv_row(rec) << '\n';
      } else {
        std::size_t failed = 0;
        for (const auto& rec : res.records)
          for (const auto& b : rec.bounds) failed += b.pass ? 0 : 1;
        std::cout << res.records.size() << " records in " << res.sweep_dir << ", " << failed
                  << " failed bound checks\n";
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    std::cerr << e.what();
    return kValidation;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}
