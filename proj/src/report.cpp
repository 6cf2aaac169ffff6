#include "greensign/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace greensign::report {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void Table::add(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_double(v));
  rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << csv_field(cells[i]);
    }
    os << "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

json Table::to_json() const {
  json out;
  out["columns"] = header;
  json rs = json::array();
  for (const auto& r : rows) {
    json row = json::array();
    for (const auto& cell : r) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (!cell.empty() && end == cell.c_str() + cell.size() && std::isfinite(v)) {
        row.push_back(v);
      } else {
        row.push_back(cell);
      }
    }
    rs.push_back(std::move(row));
  }
  out["rows"] = std::move(rs);
  return out;
}

namespace {

void flatten_into(const json& j, const std::string& prefix, Table& t) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten_into(v, prefix.empty() ? k : prefix + "." + k, t);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_into(j[i], prefix + "." + std::to_string(i), t);
  } else if (j.is_string()) {
    t.add_text({prefix, j.get<std::string>()});
  } else if (j.is_number_float()) {
    t.add_text({prefix, format_double(j.get<double>())});
  } else {
    t.add_text({prefix, j.dump()});
  }
}

}  // namespace

Table flatten(const json& j) {
  Table t;
  t.header = {"field", "value"};
  flatten_into(j, "", t);
  return t;
}

json to_json(const EigenResult& r) {
  return {{"bc", to_string(r.bc)}, {"lambda", number(r.lambda)}, {"method", to_string(r.method)}};
}

json to_json(const SignClass& r) {
  json w = json::array();
  for (const auto& e : r.witnesses) w.push_back(to_json(e));
  return {{"bc", to_string(r.bc)}, {"verdict", to_string(r.verdict)}, {"rule", r.rule}, {"witnesses", w}};
}

json to_json(const GammaResult& r) {
  return {{"value", number(r.value)},
          {"argmin_t", number(r.argmin_t)},
          {"method", to_string(r.method)},
          {"weight", to_string(r.weight)},
          {"note", r.note}};
}

json to_json(const Subinterval& r) { return {{"c", number(r.c)}, {"d", number(r.d)}}; }

json to_json(const ConeConstants& r) {
  return {{"eta", number(r.eta)},
          {"sigma", number(r.sigma)},
          {"max_G", number(r.max_G)},
          {"max_at", {{"t", number(r.max_t)}, {"s", number(r.max_s)}}},
          {"subinterval", to_json(r.subinterval)}};
}

json to_json(const LatticePoint& r) {
  return {{"t", number(r.t)}, {"x", number(r.x)}, {"f", number(r.f)}, {"weight", number(r.weight)}};
}

json to_json(const H1Verdict& r) {
  json j = {{"pass", r.pass}, {"note", r.note}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const H2Verdict& r) {
  json j = {{"pass", r.pass},       {"m", number(r.m)},       {"M", number(r.M)},
            {"ratio", number(r.ratio)}, {"gamma", number(r.gamma)}, {"reason", r.reason}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const H3Verdict& r) {
  return {{"pass", r.pass},
          {"subinterval", to_json(r.subinterval)},
          {"min_all", number(r.min_all)},
          {"min_inside", number(r.min_inside)},
          {"witness_s", number(r.witness_s)},
          {"witness_value", number(r.witness_value)}};
}

json to_json(const HypothesisReport& r) {
  json trace = json::array();
  for (const auto& v : r.search.trace) {
    trace.push_back({{"c", number(v.subinterval.c)},
                     {"d", number(v.subinterval.d)},
                     {"pass", v.pass},
                     {"min_inside", number(v.min_inside)}});
  }
  json j;
  j["bc"] = to_string(r.bc);
  j["nonlinearity"] = r.nonlinearity;
  j["pass"] = r.pass;
  j["evidence"] = r.evidence;
  j["h1"] = to_json(r.h1);
  j["h2"] = to_json(r.h2);
  j["h2_star"] = r.h2_star ? to_json(*r.h2_star) : json(nullptr);
  j["h2_star_note"] = r.h2_star_note;
  j["gamma"] = to_json(r.gamma_used);
  j["gamma_star"] = r.gamma_star ? to_json(*r.gamma_star) : json(nullptr);
  j["h3"] = to_json(r.h3);
  j["subinterval_search"] = {{"found", r.search.found ? to_json(*r.search.found) : json(nullptr)},
                             {"trace", trace}};
  j["cone"] = r.cone ? to_json(*r.cone) : json(nullptr);
  return j;
}

json to_json(const SolutionProfile& r) {
  json grid = json::array(), values = json::array();
  for (Eigen::Index i = 0; i < r.grid.size(); ++i) {
    grid.push_back(number(r.grid(i)));
    values.push_back(number(r.values(i)));
  }
  json j = {{"residual_norm", number(r.residual_norm)},
            {"bc_error", number(r.bc_error)},
            {"positivity", to_string(r.positivity)},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"last_update", number(r.last_update)},
            {"min", number(r.values.minCoeff())},
            {"max", number(r.values.maxCoeff())}};
  j["fixed_point_residual"] = r.fixed_point_residual ? number(*r.fixed_point_residual) : json(nullptr);
  j["grid"] = std::move(grid);
  j["values"] = std::move(values);
  return j;
}

}  // namespace greensign::report
