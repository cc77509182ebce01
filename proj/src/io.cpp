#include "rainbow/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace rainbow {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("instance failed validation:\n" + report.summary()),
      report_(std::move(report)) {}

namespace {

template <typename Seq, typename Fn>
void write_list(std::ostringstream& out, const Seq& items, Fn&& each) {
  out << '[';
  bool first = true;
  for (const auto& x : items) {
    if (!first) out << ',';
    first = false;
    each(x);
  }
  out << ']';
}

// Cursor over one line with 1-based column reporting.
class LineReader {
 public:
  LineReader(std::string_view text, std::size_t line_no, std::size_t start_col)
      : text_(text), line_(line_no), base_(start_col) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, base_ + pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::vector<std::int64_t> int_list() {
    std::vector<std::int64_t> out;
    expect('[');
    if (accept(']')) return out;
    do {
      out.push_back(integer());
    } while (accept(','));
    expect(']');
    return out;
  }

  std::size_t column() const { return base_ + pos_; }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "format: " << kFormatVersion << '\n';
  out << "generator: " << inst.provenance.generator << '\n';
  out << "params:";
  for (const auto& [k, v] : inst.provenance.params) out << ' ' << k << '=' << v;
  out << '\n';
  out << "seed: ";
  if (inst.provenance.seed)
    out << *inst.provenance.seed;
  else
    out << "none";
  out << '\n';
  out << "r: " << inst.r << '\n';
  out << "partition: ";
  if (inst.partition)
    write_list(out, *inst.partition, [&](int p) { out << p; });
  else
    out << "none";
  out << '\n';
  out << "matchings: " << inst.matchings.size() << '\n';
  for (const auto& m : inst.matchings) {
    out << "- ";
    write_list(out, m.edges, [&](const Edge& e) {
      write_list(out, e.vertices, [&](Vertex v) { out << v; });
    });
    out << '\n';
  }
  return out.str();
}

Instance parse_instance(std::string_view text) {
  Instance inst;
  inst.provenance = Provenance{};
  bool seen_format = false, seen_r = false;
  std::optional<std::size_t> declared;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') {
      if (nl == text.size()) break;
      continue;
    }
    const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());

    if (line.front() == '-') {
      if (!declared) throw ParseError(line_no, indent + 1, "matching entry before 'matchings:'");
      if (inst.matchings.size() >= *declared)
        throw ParseError(line_no, indent + 1, "more matchings than declared");
      if (!seen_r) throw ParseError(line_no, indent + 1, "'r:' must precede the matchings");
      const std::size_t mi = inst.matchings.size();
      LineReader rd(line.substr(1), line_no, indent + 2);
      Matching m;
      rd.expect('[');
      if (!rd.accept(']')) {
        do {
          const std::size_t col = rd.column() + 1;
          auto vs = rd.int_list();
          if (vs.size() != static_cast<std::size_t>(inst.r))
            throw ParseError(line_no, col,
                             "matching " + std::to_string(mi) + " edge " +
                                 std::to_string(m.edges.size()) + ": expected " +
                                 std::to_string(inst.r) + " vertices, got " +
                                 std::to_string(vs.size()));
          Edge e;
          for (auto v : vs) {
            if (v < 0 || v > static_cast<std::int64_t>(UINT32_MAX))
              throw ParseError(line_no, col, "vertex id out of range");
            e.vertices.push_back(static_cast<Vertex>(v));
          }
          m.edges.push_back(std::move(e));
        } while (rd.accept(','));
        rd.expect(']');
      }
      if (!rd.at_end()) rd.fail("trailing characters after matching");
      inst.matchings.push_back(std::move(m));
      if (nl == text.size()) break;
      continue;
    }

    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, indent + 1, "expected 'key: value'");
    const std::string key(trim(line.substr(0, colon)));
    const std::string_view value = trim(line.substr(colon + 1));
    const std::size_t vcol = indent + static_cast<std::size_t>(value.data() - line.data()) + 1;
    if (declared && key != "matchings")
      throw ParseError(line_no, indent + 1, "header key '" + key + "' after 'matchings:'");

    auto parse_count = [&](std::string_view v) {
      LineReader rd(v, line_no, vcol);
      auto x = rd.integer();
      if (!rd.at_end()) rd.fail("trailing characters");
      return x;
    };

    if (key == "format") {
      if (value != kFormatVersion)
        throw ParseError(line_no, vcol, "unsupported format '" + std::string(value) + "'");
      seen_format = true;
    } else if (key == "generator") {
      inst.provenance.generator = std::string(value);
    } else if (key == "params") {
      std::string_view rest = value;
      while (!rest.empty()) {
        std::size_t sp = rest.find(' ');
        std::string_view tok = rest.substr(0, sp);
        std::size_t eq = tok.find('=');
        if (eq == std::string_view::npos || eq == 0)
          throw ParseError(line_no, vcol, "params entries must be key=value");
        inst.provenance.params.emplace_back(std::string(tok.substr(0, eq)),
                                            std::string(tok.substr(eq + 1)));
        rest = sp == std::string_view::npos ? std::string_view{} : trim(rest.substr(sp + 1));
      }
    } else if (key == "seed") {
      if (value != "none") {
        auto s = parse_count(value);
        if (s < 0) throw ParseError(line_no, vcol, "seed must be non-negative");
        inst.provenance.seed = static_cast<std::uint64_t>(s);
      }
    } else if (key == "r") {
      auto r = parse_count(value);
      if (r < 1 || r > 1'000'000) throw ParseError(line_no, vcol, "r out of range");
      inst.r = static_cast<int>(r);
      seen_r = true;
    } else if (key == "partition") {
      if (value != "none") {
        LineReader rd(value, line_no, vcol);
        auto parts = rd.int_list();
        if (!rd.at_end()) rd.fail("trailing characters after partition");
        std::vector<int> p;
        for (auto x : parts) p.push_back(static_cast<int>(x));
        inst.partition = std::move(p);
      }
    } else if (key == "matchings") {
      if (declared) throw ParseError(line_no, indent + 1, "duplicate 'matchings:'");
      auto n = parse_count(value);
      if (n < 0) throw ParseError(line_no, vcol, "matching count must be non-negative");
      declared = static_cast<std::size_t>(n);
    } else {
      throw ParseError(line_no, indent + 1, "unknown key '" + key + "'");
    }
    if (nl == text.size()) break;
  }

  if (!seen_format) throw ParseError(1, 1, "missing 'format:' line");
  if (!seen_r) throw ParseError(line_no, 1, "missing 'r:' line");
  if (!declared) throw ParseError(line_no, 1, "missing 'matchings:' line");
  if (inst.matchings.size() != *declared)
    throw ParseError(line_no, 1,
                     "declared " + std::to_string(*declared) + " matchings, found " +
                         std::to_string(inst.matchings.size()));

  ValidationReport report = validate_instance(inst);
  if (!report.ok()) throw ValidationError(std::move(report));
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, serialize_instance(inst));
}

Json to_json(const RainbowMatching& rm) {
  Json arr = Json::array();
  for (const auto& ce : rm.assignment) {
    Json item;
    item["color"] = ce.color;
    item["edge"] = ce.edge.vertices;
    arr.push_back(std::move(item));
  }
  return arr;
}

RainbowMatching rainbow_from_json(const Json& j) {
  RainbowMatching rm;
  for (const auto& item : j) {
    ColoredEdge ce;
    ce.color = item.at("color").get<Color>();
    ce.edge.vertices = item.at("edge").get<std::vector<Vertex>>();
    rm.assignment.push_back(std::move(ce));
  }
  return rm;
}

Json to_json(const SolveReport& report, const Instance& inst) {
  Json j;
  j["format"] = kReportVersion;
  j["solver"] = report.solver;
  j["certificate"] = to_string(report.certificate);
  j["size"] = report.size();
  Json meta;
  meta["r"] = inst.r;
  meta["n"] = inst.num_colors();
  meta["min_matching_size"] = inst.min_matching_size();
  meta["generator"] = inst.provenance.generator;
  j["instance"] = std::move(meta);
  j["matching"] = to_json(report.matching);
  Json stats;
  stats["nodes"] = report.stats.nodes;
  stats["extensions"] = report.stats.extensions;
  stats["swaps"] = report.stats.swaps;
  stats["seed"] = report.stats.seed ? Json(*report.stats.seed) : Json(nullptr);
  stats["wall_ms"] = report.stats.wall_ms;
  j["stats"] = std::move(stats);
  return j;
}

SolveReport report_from_json(const Json& j) {
  if (j.at("format").get<std::string>() != kReportVersion)
    throw std::runtime_error("unsupported report format");
  SolveReport rep;
  rep.solver = j.at("solver").get<std::string>();
  auto cert = certificate_from_string(j.at("certificate").get<std::string>());
  if (!cert) throw std::runtime_error("unknown certificate kind");
  rep.certificate = *cert;
  rep.matching = rainbow_from_json(j.at("matching"));
  if (j.at("size").get<std::size_t>() != rep.matching.size())
    throw std::runtime_error("report size does not match its witness");
  const auto& s = j.at("stats");
  rep.stats.nodes = s.value("nodes", std::uint64_t{0});
  rep.stats.extensions = s.value("extensions", std::uint64_t{0});
  rep.stats.swaps = s.value("swaps", std::uint64_t{0});
  if (s.contains("seed") && !s["seed"].is_null()) rep.stats.seed = s["seed"].get<std::uint64_t>();
  rep.stats.wall_ms = s.value("wall_ms", 0.0);
  return rep;
}

Json to_json(const SampleResult& result, const Instance& inst) {
  Json j = to_json(result.report, inst);
  Json s;
  s["success"] = result.success;
  s["failed_stage"] = result.failed_stage ? Json(to_string(*result.failed_stage)) : Json(nullptr);
  s["failure_reason"] = result.failure_reason;
  const auto& d = result.diagnostics;
  s["p"] = d.p;
  s["attempts"] = d.attempts;
  s["checks_passed"] = d.checks_passed;
  s["min_inside"] = d.min_inside;
  s["min_avoiding"] = d.min_avoiding;
  s["sample_vertices"] = d.sample_vertices;
  s["off_sample_size"] = d.off_sample_size;
  s["inside_failure_bound"] =
      d.inside_failure_bound ? Json(to_string(*d.inside_failure_bound, 12)) : Json(nullptr);
  s["avoiding_failure_bound"] =
      d.avoiding_failure_bound ? Json(to_string(*d.avoiding_failure_bound, 12)) : Json(nullptr);
  j["sample"] = std::move(s);
  return j;
}

}  // namespace rainbow
