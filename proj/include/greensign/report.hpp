#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "greensign/cone.hpp"
#include "greensign/gamma.hpp"
#include "greensign/solver.hpp"
#include "greensign/spectral.hpp"

namespace greensign::report {

using nlohmann::json;

/// Finite doubles as numbers; infinities and NaN as the strings "+inf",
/// "-inf" and "nan" (JSON has no literal for them).
json number(double v);

json to_json(const EigenResult& r);
json to_json(const SignClass& r);
json to_json(const GammaResult& r);
json to_json(const Subinterval& r);
json to_json(const ConeConstants& r);
json to_json(const LatticePoint& r);
json to_json(const H1Verdict& r);
json to_json(const H2Verdict& r);
json to_json(const H3Verdict& r);
json to_json(const HypothesisReport& r);
/// Scalar summary plus the grid and values arrays.
json to_json(const SolutionProfile& r);

/// A header row plus numeric or text rows, written RFC 4180 style.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(const std::vector<double>& values);
  void add_text(std::vector<std::string> values) { rows.push_back(std::move(values)); }
  void write_csv(std::ostream& os) const;
  /// {"columns": [...], "rows": [[...], ...]} with numeric cells parsed back.
  json to_json() const;
};

/// Shortest text that reads back to the same double (%.17g), "+inf"/"-inf"/"nan"
/// otherwise.
std::string format_double(double v);
/// Quotes a CSV field when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& text);

/// Nested JSON flattened into dotted-path rows "field,value".
Table flatten(const json& j);

}  // namespace greensign::report
