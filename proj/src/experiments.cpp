#include "rainbow/experiments.hpp"

#include "rainbow/bounds.hpp"
#include "rainbow/setpairs.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <filesystem>
#include <sstream>
#include <thread>

namespace rainbow {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kBoundIds = {"greedy_floor", "lower_g_prime", "lemma21",
                                            "ach_upper",    "n_minus_1",     "sample_valid"};

BlockingFamily blocking_base(const GenSpec& spec) {
  if (spec.base == "ach") {
    Instance inst = ach_instance(spec.r, spec.n);
    // No rainbow matching reaches ach_bound + 1, so that size blocks.
    const auto t = static_cast<std::size_t>(ach_bound(spec.r, spec.n).floor) + 1;
    return BlockingFamily{truncate_matchings(inst, t), t};
  }
  if (spec.base == "cycle") return BlockingFamily{cycle_instance(spec.n), static_cast<std::size_t>(spec.n)};
  if (spec.base == "k4") return BlockingFamily{k4_union_instance(spec.n), static_cast<std::size_t>(spec.n)};
  throw InvalidParameter("blowup base must be ach, cycle or k4");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string utc_stamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

// Writes `content` unless the file exists; an existing file must match.
void write_once(const fs::path& path, const std::string& content) {
  if (fs::exists(path)) {
    if (read_file(path.string()) != content)
      throw std::runtime_error("refusing to overwrite " + path.string());
    return;
  }
  write_file(path.string(), content);
}

}  // namespace

Instance generate(const GenSpec& spec) {
  const std::string& c = spec.construction;
  if (c == "cycle") return cycle_instance(spec.n);
  if (c == "k4") return k4_union_instance(spec.n);
  if (c == "ach") return ach_instance(spec.r, spec.n);
  if (c == "random") return random_instance(spec.r, spec.n, spec.s > 0 ? spec.s : spec.n, spec.seed);
  if (c == "dummy") {
    if (spec.base == "dummy" || spec.base == "blowup")
      throw InvalidParameter("dummy base must be a plain construction");
    GenSpec base = spec;
    base.construction = spec.base;
    return dummy_lift(generate(base), spec.m);
  }
  if (c == "blowup") {
    if (spec.q < 1) throw InvalidParameter("blowup needs q >= 1");
    BlockingFamily part = blocking_base(spec);
    std::vector<BlockingFamily> parts(static_cast<std::size_t>(spec.q), part);
    BlockingFamily out = blowup_compose(parts);
    out.inst.provenance.set("base", spec.base);
    out.inst.provenance.set("base.r", std::to_string(part.inst.r));
    out.inst.provenance.set("base.n", std::to_string(spec.n));
    return out.inst;
  }
  throw InvalidParameter("unknown construction '" + c + "'");
}

std::string instance_name(const GenSpec& spec) {
  const std::string& c = spec.construction;
  const std::string n = "n" + std::to_string(spec.n);
  const std::string r = "r" + std::to_string(spec.r);
  if (c == "cycle" || c == "k4") return c + "_" + n;
  if (c == "ach") return c + "_" + r + "_" + n;
  if (c == "random")
    return c + "_" + r + "_" + n + "_s" + std::to_string(spec.s > 0 ? spec.s : spec.n) + "_seed" +
           std::to_string(spec.seed);
  if (c == "dummy") {
    GenSpec base = spec;
    base.construction = spec.base;
    return "dummy_" + instance_name(base) + "_m" + std::to_string(spec.m);
  }
  if (c == "blowup") {
    GenSpec base = spec;
    base.construction = spec.base;
    return "blowup_" + instance_name(base) + "_q" + std::to_string(spec.q);
  }
  return c;
}

Json SolveOutcome::to_json(const Instance& inst) const {
  return sample ? rainbow::to_json(*sample, inst) : rainbow::to_json(report, inst);
}

SolveOutcome run_solver(const Instance& inst, const SolverSpec& spec) {
  SolveOutcome out;
  if (spec.solver == "exact") {
    ExactOptions opts;
    opts.node_budget = spec.node_budget;
    opts.parallel = spec.parallel;
    out.report = exact_max_rainbow(inst, opts);
    out.budget_exhausted = out.report.certificate != Certificate::ExactOptimum;
  } else if (spec.solver == "greedy") {
    out.report = greedy_rainbow(inst);
  } else if (spec.solver == "local") {
    out.report = local_search_rainbow(inst, spec.seed);
  } else if (spec.solver == "sample") {
    SampleOptions so;
    so.retries = spec.retries;
    SampleResult res = sample_and_extend(inst, inst.num_colors(), spec.seed, so);
    out.report = res.report;
    out.budget_exhausted = !res.success;
    out.sample = std::move(res);
  } else {
    throw InvalidParameter("unknown solver '" + spec.solver + "'");
  }
  return out;
}

bool VerifyResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyResult verify_report(const Instance& inst, const SolveReport& report,
                           std::optional<std::uint64_t> node_budget) {
  VerifyResult out;
  auto add = [&out](std::string name, bool pass, std::string detail = {}) {
    out.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
  };

  bool valid = false;
  try {
    valid = is_rainbow_matching(inst, report.matching);
    add("witness", valid, valid ? "" : "not a rainbow matching of this instance");
  } catch (const InvalidParameter& e) {
    add("witness", false, e.what());
  }
  if (!valid) return out;

  const auto cert = report.certificate;
  if (cert == Certificate::Heuristic) return out;

  if (cert == Certificate::ExactOptimum) {
    ExactOptions opts;
    opts.node_budget = node_budget;
    SolveReport again = exact_max_rainbow(inst, opts);
    if (again.certificate != Certificate::ExactOptimum)
      add("exact-optimum", false, "re-solve exhausted its node budget");
    else
      add("exact-optimum", again.size() == report.size(),
          "re-solved size " + std::to_string(again.size()));
  }

  auto ext = find_extension(inst, report.matching);
  add("extension-maximal", !ext,
      ext ? "color " + std::to_string(ext->color) + " edge " + to_string(ext->edge) + " extends" : "");
  auto swap = find_swap(inst, report.matching);
  add("swap-maximal", !swap,
      swap ? "edge at position " + std::to_string(swap->edge_pos) + " can be swapped out" : "");
  if (ext || swap) return out;

  const auto m = static_cast<std::int64_t>(report.size());
  const auto n = static_cast<std::int64_t>(inst.num_colors());
  const auto big_n = static_cast<std::int64_t>(inst.min_matching_size());
  if (inst.r >= 2) {
    GiCheck gi = check_gibounds(inst.r, n, big_n, m);
    add("good-edge-inequality", gi.holds, to_string(gi.lhs) + " <= " + to_string(gi.rhs));
  }

  const GoodEdgeTable table = good_edges(inst, report.matching);
  const auto ru = static_cast<unsigned>(inst.r);
  const Integer half_central = binomial(2 * ru, ru) / 2;
  bool per_color = true;
  std::string per_color_detail;
  for (const auto& cg : table.unused) {
    // (r-1) g_i >= 2 |H_i| - (r+1) m
    const auto lhs = static_cast<std::int64_t>(inst.r - 1) * static_cast<std::int64_t>(cg.g);
    const auto rhs = 2 * static_cast<std::int64_t>(cg.matching_size) - (inst.r + 1) * m;
    if (lhs < rhs) {
      per_color = false;
      per_color_detail = "color " + std::to_string(cg.color);
      break;
    }
  }
  add("good-edge-lower", per_color, per_color_detail);

  bool pairs_ok = true;
  std::string pairs_detail;
  std::size_t systems = 0;
  for (std::size_t pos = 0; pos < report.size() && pairs_ok; ++pos) {
    try {
      SetPairSystem sys = extract_setpairs(table, pos);
      if (Integer(sys.size() / 2) > half_central) {
        pairs_ok = false;
        pairs_detail = "edge " + std::to_string(pos) + " is good for too many colors";
      }
      if (sys.size() < 2) continue;
      ++systems;
      CrossCheck cc = is_cross_intersecting(sys);
      Rational sum = bollobas_sum(sys);
      if (!cc.ok || sum > 1) {
        pairs_ok = false;
        pairs_detail = "edge " + std::to_string(pos) + ": system fails, sum " + to_string(sum);
      }
    } catch (const PreconditionViolation& e) {
      pairs_ok = false;
      pairs_detail = e.what();
    }
  }
  add("set-pairs", pairs_ok, pairs_ok ? std::to_string(systems) + " systems" : pairs_detail);
  return out;
}

Json SweepRecord::to_json() const {
  Json j;
  j["cell"] = cell;
  j["r"] = r;
  j["n"] = n;
  j["generator"] = generator;
  j["solver"] = solver;
  j["seed"] = seed;
  j["status"] = status;
  j["size"] = size;
  j["certificate"] = certificate;
  j["min_matching_size"] = min_matching_size;
  Json bs = Json::array();
  for (const auto& b : bounds)
    bs.push_back(Json{{"id", b.id}, {"relation", b.relation}, {"value", b.value}, {"pass", b.pass}});
  j["bounds"] = std::move(bs);
  j["instance"] = instance_path;
  j["report"] = report_path;
  j["wall_ms"] = wall_ms;
  return j;
}

SweepRecord SweepRecord::from_json(const Json& j) {
  SweepRecord rec;
  rec.cell = j.at("cell").get<std::size_t>();
  rec.r = j.at("r").get<int>();
  rec.n = j.at("n").get<int>();
  rec.generator = j.at("generator").get<std::string>();
  rec.solver = j.at("solver").get<std::string>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.status = j.at("status").get<std::string>();
  rec.size = j.at("size").get<std::size_t>();
  rec.certificate = j.at("certificate").get<std::string>();
  rec.min_matching_size = j.at("min_matching_size").get<std::size_t>();
  for (const auto& b : j.at("bounds"))
    rec.bounds.push_back(BoundCheck{b.at("id").get<std::string>(), b.at("relation").get<std::string>(),
                                    b.at("value").get<std::string>(), b.at("pass").get<bool>()});
  rec.instance_path = j.at("instance").get<std::string>();
  rec.report_path = j.at("report").get<std::string>();
  rec.wall_ms = j.at("wall_ms").get<double>();
  return rec;
}

std::vector<BoundCheck> applicable_bounds(const Instance& inst, const std::string& generator,
                                          const SolveOutcome& outcome) {
  std::vector<BoundCheck> out;
  const auto size = static_cast<std::int64_t>(outcome.report.size());
  const auto n = static_cast<std::int64_t>(inst.num_colors());
  const auto big_n = static_cast<std::int64_t>(inst.min_matching_size());
  const int r = inst.r;
  const std::string& solver = outcome.report.solver;
  const bool certified = outcome.report.certificate == Certificate::ExactOptimum ||
                         outcome.report.certificate == Certificate::LocalOptimum;

  auto at_least = [&](std::string id, const Integer& v) {
    out.push_back(BoundCheck{std::move(id), "size >= value", v.str(), Integer(size) >= v});
  };
  auto at_most = [&](std::string id, const Integer& v) {
    out.push_back(BoundCheck{std::move(id), "size <= value", v.str(), Integer(size) <= v});
  };

  if (n > 0 && big_n >= n && solver != "sample") at_least("greedy_floor", Integer((n + r - 1) / r));
  if (certified && r >= 3 && n > 0 && big_n >= n) {
    Integer lb = lower_bound_g_prime(r, n).ceil;
    at_least("lower_g_prime", lb < 0 ? Integer(0) : lb);
  }
  if (certified && r >= 2) {
    GiCheck gi = check_gibounds(r, n, big_n, size);
    out.push_back(BoundCheck{"lemma21", "lhs <= rhs", to_string(gi.lhs) + " <= " + to_string(gi.rhs),
                             gi.holds});
  }
  if (generator == "ach" && r >= 3) at_most("ach_upper", ach_bound(r, n).floor);
  if (generator == "cycle" || generator == "k4") at_most("n_minus_1", Integer(n - 1));
  if (outcome.sample && outcome.sample->success) at_least("sample_valid", Integer(n));
  return out;
}

std::string sweep_csv_header() {
  std::string h = "cell,r,n,generator,solver,seed,status,size,certificate,min_matching_size";
  for (const auto& id : kBoundIds) h += "," + id;
  return h + ",wall_ms";
}

std::string to_csv_row(const SweepRecord& rec) {
  std::ostringstream out;
  out << rec.cell << ',' << rec.r << ',' << rec.n << ',' << csv_escape(rec.generator) << ','
      << csv_escape(rec.solver) << ',' << rec.seed << ',' << csv_escape(rec.status) << ','
      << rec.size << ',' << rec.certificate << ',' << rec.min_matching_size;
  for (const auto& id : kBoundIds) {
    out << ',';
    for (const auto& b : rec.bounds)
      if (b.id == id) out << (b.pass ? "pass" : "fail");
  }
  out << ',' << rec.wall_ms;
  return out.str();
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    const auto dots = part.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        int lo = std::stoi(part.substr(0, dots));
        int hi = std::stoi(part.substr(dots + 2));
        if (hi < lo) throw InvalidParameter("empty range '" + part + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const InvalidParameter*>(&e)) throw;
      throw InvalidParameter("bad integer range '" + part + "'");
    }
  }
  if (out.empty()) throw InvalidParameter("empty integer range");
  return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.out_dir.empty()) throw InvalidParameter("sweep needs an output directory");
  const fs::path root(cfg.out_dir);
  const std::string run = cfg.run_id.empty() ? utc_stamp() : cfg.run_id;
  const fs::path sweep_dir = root / "sweeps" / run;
  if (fs::exists(sweep_dir)) throw std::runtime_error("sweep directory exists: " + sweep_dir.string());
  fs::create_directories(root / "instances");
  fs::create_directories(sweep_dir / "cells");
  fs::create_directories(sweep_dir / "reports");

  struct Cell {
    SweepRecord rec;
    std::optional<Instance> inst;
  };
  std::vector<Cell> cells;

  // Instances are generated and persisted up front on one thread.
  for (int r : cfg.rs) {
    for (int n : cfg.ns) {
      for (const auto& gen : cfg.constructions) {
        const bool graph_only = gen == "cycle" || gen == "k4";
        if (graph_only && r != cfg.rs.front()) continue;  // r is fixed at 2
        GenSpec spec;
        spec.construction = gen;
        spec.r = graph_only ? 2 : r;
        spec.n = n;
        spec.m = cfg.m;
        spec.seed = cfg.seed;
        std::optional<Instance> inst;
        std::string status = "ok";
        try {
          inst = generate(spec);
        } catch (const InvalidParameter& e) {
          status = std::string("skipped: ") + e.what();
        }
        std::string rel;
        if (inst) {
          rel = (fs::path("instances") / (instance_name(spec) + ".rf")).string();
          write_once(root / rel, serialize_instance(*inst));
        }
        for (const auto& solver : cfg.solvers) {
          Cell c;
          c.rec.cell = cells.size();
          c.rec.r = spec.r;
          c.rec.n = n;
          c.rec.generator = gen;
          c.rec.solver = solver;
          c.rec.seed = cfg.seed;
          c.rec.status = status;
          c.rec.instance_path = rel;
          c.inst = inst;
          cells.push_back(std::move(c));
        }
      }
    }
  }

  auto solve_cell = [&](Cell& c) {
    if (c.inst) {
      SolverSpec ss;
      ss.solver = c.rec.solver;
      ss.node_budget = cfg.node_budget;
      ss.seed = cfg.seed;
      ss.retries = cfg.retries;
      SolveOutcome outcome = run_solver(*c.inst, ss);
      c.rec.size = outcome.report.size();
      c.rec.certificate = to_string(outcome.report.certificate);
      c.rec.min_matching_size = c.inst->min_matching_size();
      c.rec.bounds = applicable_bounds(*c.inst, c.rec.generator, outcome);
      c.rec.wall_ms = outcome.report.stats.wall_ms;
      const std::string stem = std::to_string(c.rec.cell) + "_" +
                               fs::path(c.rec.instance_path).stem().string() + "_" + c.rec.solver;
      c.rec.report_path = (fs::path("sweeps") / run / "reports" / (stem + ".json")).string();
      write_once(root / c.rec.report_path, outcome.to_json(*c.inst).dump(2) + "\n");
    }
    write_once(sweep_dir / "cells" / (std::to_string(c.rec.cell) + ".json"),
               c.rec.to_json().dump() + "\n");
  };

  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    for (auto& c : cells) solve_cell(c);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i; (i = cursor.fetch_add(1)) < cells.size();) solve_cell(cells[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Single-writer reduction over the per-cell files, in cell order.
  SweepResult result;
  result.sweep_dir = sweep_dir.string();
  std::string jsonl, csv = sweep_csv_header() + "\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string text = read_file((sweep_dir / "cells" / (std::to_string(i) + ".json")).string());
    SweepRecord rec = SweepRecord::from_json(Json::parse(text));
    jsonl += text;
    csv += to_csv_row(rec) + "\n";
    result.records.push_back(std::move(rec));
  }
  write_once(sweep_dir / "records.jsonl", jsonl);
  write_once(sweep_dir / "summary.csv", csv);
  return result;
}

}  // namespace rainbow
