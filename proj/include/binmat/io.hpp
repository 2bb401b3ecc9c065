#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "binmat/analysis.hpp"
#include "binmat/connectivity.hpp"
#include "binmat/matroid.hpp"

namespace binmat {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kMatroidHeader = "# binary-matroid v1";

/// Text form:
///   # binary-matroid v1
///   rows R cols N
///   R lines of N characters from {0,1}
///   labels <N tokens>
std::string render_matroid(const BinaryMatroid& m);
/// Accepts the form above; the labels line is optional (defaults e0..).
BinaryMatroid parse_matroid(std::string_view text);

/// Reads a whole file, or standard input for "-".
std::string read_input(const std::string& path);

/// A command's result: a human-readable body plus a one-line JSON mirror.
struct ReportDocument {
  std::string command;
  Verdict verdict = Verdict::Indeterminate;
  std::vector<std::string> body;
  Json data = Json::object();

  /// command line, verdict line, body lines, then the JSON object on one line.
  std::string render() const;
  /// 0 for pass, 1 for fail, 2 otherwise.
  int exit_code() const;
};

Json to_json(const BinaryMatroid& m, ElementSet x);
Json to_json(const BinaryMatroid& m, const SeparationWitness& w);
Json to_json(const BinaryMatroid& m, const AuditReport& r);
Json to_json(const BinaryMatroid& m, const CensusReport& c);
Json to_json(const ElementVerdict& v);
Json to_json(const BinaryMatroid& m, const TheoremReport& r);

/// Rebuilds a verdict written by to_json(ElementVerdict) for element of m,
/// recomputing the witness indices inside si(M/e). Throws InputError when
/// the record does not fit m.
ElementVerdict element_verdict_from_json(const BinaryMatroid& m, const Json& j);

/// Human-readable lines for reports.
std::vector<std::string> describe(const BinaryMatroid& m, const AuditReport& r);
std::vector<std::string> describe(const BinaryMatroid& m, const TheoremReport& r);
std::string describe(const BinaryMatroid& m, const SeparationWitness& w);

}  // namespace binmat
