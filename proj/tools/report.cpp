#include "report.hpp"

#include <fstream>
#include <sstream>

#include "blab/errors.hpp"

namespace blab::cli {

nlohmann::json big(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<std::int64_t>::max())) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

namespace {

std::string cell(const nlohmann::json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string render_csv(const Report& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    out << (i ? "," : "") << r.columns[i];
  }
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << cell(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const Report& r) {
  nlohmann::json doc = r.summary;
  if (!r.columns.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) {
        obj[r.columns[i]] = row[i];
      }
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
  }
  if (!r.hypothesis_warnings.empty()) {
    doc["hypothesis_warnings"] = r.hypothesis_warnings;
  }
  return doc.dump(2) + "\n";
}

CensusOptions GlobalOptions::census() const {
  CensusOptions o;
  o.jobs = jobs;
  if (budget != 0) {
    o.node_budget = budget;
  }
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidArgument("cannot open " + path);
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace blab::cli
