#pragma once

#include "rainbow/core.hpp"
#include "rainbow/solvers.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace rainbow {

inline constexpr std::string_view kFormatVersion = "rainbow-forge/1";
inline constexpr std::string_view kReportVersion = "rainbow-forge-report/1";

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Instance text format, one document per instance:
//
//   format: rainbow-forge/1
//   generator: ach
//   params: r=3 n=4
//   seed: none
//   r: 3
//   partition: [0,1,2,0,1,2]
//   matchings: 2
//   - [[0,1,2],[3,4,5]]
//   - []
//
// Vertices are 0-based and edges list them increasing. Blank lines and
// lines starting with '#' are ignored. parse(serialize(x)) == x and
// serialize(parse(t)) == t for documents produced by serialize.
std::string serialize_instance(const Instance& inst);

// Throws ParseError on malformed text (including edges of the wrong
// length) and ValidationError when the instance breaks an invariant.
Instance parse_instance(std::string_view text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

using Json = nlohmann::ordered_json;

Json to_json(const RainbowMatching& rm);
RainbowMatching rainbow_from_json(const Json& j);

Json to_json(const SolveReport& report, const Instance& inst);
SolveReport report_from_json(const Json& j);

Json to_json(const SampleResult& result, const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rainbow
