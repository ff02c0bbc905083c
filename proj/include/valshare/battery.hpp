#pragma once

#include <string>
#include <vector>

namespace valshare {

struct BatteryOptions {
  double tol = 0.0;          // > 0 loosens every numeric threshold to at least this value
  std::string fixtures_dir;  // empty: build the functions in memory
  int threads = 0;
};

struct BatteryResult {
  std::string id;
  std::string label;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the reproduction checks in order. Individual failures (including
/// exceptions) are recorded, never thrown.
std::vector<BatteryResult> run_battery(const BatteryOptions& opts);

/// Fixture file name -> JSON text, as written by export-fixtures.
std::vector<std::pair<std::string, std::string>> fixture_files();

}  // namespace valshare
