#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blab/census.hpp"

namespace blab::cli {

/// Output of one subcommand: a table for CSV and a document for JSON.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  // Summary fields; the writer adds "rows" when the table is non-empty.
  nlohmann::json summary = nlohmann::json::object();
  // A hypothesis of a reported bound does not hold at these parameters.
  std::vector<std::string> hypothesis_warnings;
  // Exit status when the command ran but its check failed.
  int failure_status = 0;

  void add_row(std::vector<nlohmann::json> row) { rows.push_back(std::move(row)); }
  void warn_unless(bool ok, const std::string& what) {
    if (!ok) {
      hypothesis_warnings.push_back(what);
    }
  }
};

nlohmann::json big(const BigInt& v);

std::string render_csv(const Report& r);
std::string render_json(const Report& r);

/// Options shared by every subcommand.
struct GlobalOptions {
  std::uint64_t seed = 1;
  std::uint64_t samples = 10000;
  std::string out;
  std::string format = "csv";
  unsigned jobs = 0;
  bool strict = false;
  std::uint64_t budget = 0;  // 0: environment or built-in default

  CensusOptions census() const;
};

using Command = std::function<Report()>;

std::string read_file(const std::string& path);

}  // namespace blab::cli
