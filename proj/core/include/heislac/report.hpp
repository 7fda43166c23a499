#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "heislac/decay.hpp"

namespace heislac {

struct Clause {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Extra CSV table (header row mandatory).
struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentReport {
  std::string id;
  std::string config_json = "{}";  // echo of the configuration
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<DecayFit> fits;
  std::vector<Table> tables;
  std::vector<Clause> clauses;
  std::vector<std::string> warnings;

  void scalar(std::string name, double value) { scalars.emplace_back(std::move(name), value); }
  void label(std::string name, std::string value) { labels.emplace_back(std::move(name), std::move(value)); }
  void clause(std::string name, bool pass, std::string detail = {}) {
    clauses.push_back({std::move(name), pass, std::move(detail)});
  }
  bool passed() const;

  std::string to_json() const;
  /// Writes report.json, one <fit>.csv per decay fit and one CSV per table.
  void write(const std::filesystem::path& dir) const;
  /// One line: "<id>: PASS (n/n clauses)" or the first failing clause.
  std::string summary() const;
};

/// Formats a double with 17 significant digits (round-trip).
std::string fmt(double v);

}  // namespace heislac
