#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace streamkl {

enum class Command { bounds, oracle, simulate, verify_functions };
enum class OutputFormat { csv, json };
enum class AlgorithmKind { collision, constant, random };

// One batch run. All configuration is explicit; no environment variables.
struct RunConfig {
  Command command = Command::bounds;
  int64_t n = 0;
  int q = 0;
  std::string memory_spec;
  bool normalize = false;  // apply width normalization before computing
  uint64_t seed = 1;
  uint64_t samples = 100'000;
  OutputFormat format = OutputFormat::csv;
  AlgorithmKind algorithm = AlgorithmKind::collision;
  int suite_count = 0;  // oracle: run this many seeded random algorithms
  uint64_t walk_cap = 10'000'000;
  uint64_t table_cap = 1'000'000;
  int workers = 1;
  std::optional<double> epsilon;
  std::vector<int64_t> grid_n;  // sweep values; empty means use n
  std::vector<int> grid_q;      // sweep values; empty means use q
  int grid_points = 10'000;
  int stirling_max_n = 1000;
};

// Parse "q=2,4,8,16;n=64,128" into the grid fields.
void parse_grid_spec(const std::string& spec, RunConfig& config);

using Value = std::variant<std::monostate, bool, int64_t, uint64_t, double, std::string>;

struct Row {
  std::vector<std::pair<std::string, Value>> cells;

  void add(std::string name, Value v) { cells.emplace_back(std::move(name), std::move(v)); }
};

struct RunReport {
  RunConfig config;
  std::vector<Row> results;
  bool all_passed = true;
};

RunReport run_command(const RunConfig& config);

// Fixed header row followed by one line per result; fields needing it are
// quoted CSV-style. Doubles are printed round-trip exact.
std::string render_csv(const RunReport& report);

// {"schema": 1, "command": ..., "config": {...}, "results": [...],
//  "verdicts": {"passed": ..., "failures": ...}}
std::string render_json(const RunReport& report);

std::string render(const RunReport& report, OutputFormat format);

// 0 iff every verification in the run passed.
int exit_status(const RunReport& report);

}  // namespace streamkl
