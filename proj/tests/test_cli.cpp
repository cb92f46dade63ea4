#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include <json.hpp>

#include "streamkl/cli.hpp"
#include "streamkl/properties.hpp"

using namespace streamkl;

namespace {

RunConfig bounds_config() {
  RunConfig c;
  c.command = Command::bounds;
  c.n = 1024;
  c.q = 16;
  c.memory_spec = "const:32";
  return c;
}

const Value* find_cell(const Row& row, const std::string& name) {
  for (const auto& [cell_name, value] : row.cells) {
    if (cell_name == name) return &value;
  }
  return nullptr;
}

double as_double(const Value* v) {
  if (v == nullptr) throw std::runtime_error("missing cell");
  if (std::holds_alternative<double>(*v)) return std::get<double>(*v);
  if (std::holds_alternative<int64_t>(*v)) return static_cast<double>(std::get<int64_t>(*v));
  if (std::holds_alternative<uint64_t>(*v)) return static_cast<double>(std::get<uint64_t>(*v));
  throw std::runtime_error("cell is not numeric");
}

// minimal CSV reader matching the writer's quoting rules
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      field += c;
    }
  }
  return rows;
}

}  // namespace

TEST(CmdBounds, SinglePointReferenceRow) {
  RunReport report = run_command(bounds_config());
  ASSERT_EQ(report.results.size(), 1u);
  const Row& row = report.results[0];
  EXPECT_NEAR(as_double(find_cell(row, "leading_order_bound")), 0.104167, 1e-6);
  EXPECT_NEAR(as_double(find_cell(row, "construction_lower_bound")), 0.029688, 1e-6);
  EXPECT_NEAR(as_double(find_cell(row, "chain_kl_bound")), 0.061994144041721655, 1e-12);
  const Value* unit = find_cell(row, "chain_kl_bound_unit");
  ASSERT_NE(unit, nullptr);
  EXPECT_EQ(std::get<std::string>(*unit), "nats");
  const Value* flag = find_cell(row, "leading_order_bound_asymptotic");
  ASSERT_NE(flag, nullptr);
  EXPECT_TRUE(std::get<bool>(*flag));
  EXPECT_EQ(exit_status(report), 0);
}

TEST(CmdBounds, RejectsDegenerateStreamLength) {
  RunConfig c = bounds_config();
  c.n = 16;
  c.q = 16;  // q >= n
  EXPECT_THROW(run_command(c), std::invalid_argument);
}

TEST(CmdBounds, SweepChainBoundIsMonotoneInQ) {
  RunConfig c = bounds_config();
  parse_grid_spec("q=2,4,8,16", c);
  ASSERT_EQ(c.grid_q, (std::vector<int>{2, 4, 8, 16}));
  RunReport report = run_command(c);
  ASSERT_EQ(report.results.size(), 4u);
  double prev = -1;
  for (const Row& row : report.results) {
    double chain = as_double(find_cell(row, "chain_kl_bound"));
    ASSERT_GE(chain, prev - 1e-12);
    prev = chain;
  }
}

namespace {

void expect_csv_json_identity(const RunReport& report) {
  auto csv = parse_csv(render_csv(report));
  auto json = nlohmann::json::parse(render_json(report));
  ASSERT_EQ(json["schema"], 1);
  const auto& results = json["results"];
  ASSERT_EQ(csv.size(), results.size() + 1);  // header row
  const auto& header = csv[0];
  for (std::size_t r = 0; r < results.size(); ++r) {
    const auto& jrow = results[r];
    ASSERT_EQ(header.size(), csv[r + 1].size());
    ASSERT_EQ(jrow.size(), header.size());
    for (std::size_t col = 0; col < header.size(); ++col) {
      const auto& jval = jrow.at(header[col]);
      const std::string& cell = csv[r + 1][col];
      if (jval.is_number_float()) {
        ASSERT_EQ(jval.get<double>(), std::stod(cell)) << header[col];
      } else if (jval.is_number_unsigned()) {
        ASSERT_EQ(std::to_string(jval.get<uint64_t>()), cell);
      } else if (jval.is_number_integer()) {
        ASSERT_EQ(std::to_string(jval.get<int64_t>()), cell);
      } else if (jval.is_boolean()) {
        ASSERT_EQ(jval.get<bool>() ? "true" : "false", cell);
      } else {
        ASSERT_EQ(jval.get<std::string>(), cell) << header[col];
      }
    }
  }
}

}  // namespace

TEST(Render, CsvAndJsonAgreeFieldForFieldAcrossCommands) {
  RunConfig bounds = bounds_config();
  bounds.epsilon = 0.6;
  parse_grid_spec("q=2,4,16", bounds);
  expect_csv_json_identity(run_command(bounds));

  RunConfig oracle;
  oracle.command = Command::oracle;
  oracle.n = 6;
  oracle.q = 3;
  oracle.memory_spec = "2,3,1";
  oracle.algorithm = AlgorithmKind::random;
  oracle.suite_count = 5;
  expect_csv_json_identity(run_command(oracle));

  RunConfig simulate;
  simulate.command = Command::simulate;
  simulate.n = 64;
  simulate.q = 8;
  simulate.memory_spec = "const:7";
  simulate.samples = 500;
  expect_csv_json_identity(run_command(simulate));

  RunConfig verify;
  verify.command = Command::verify_functions;
  verify.grid_points = 500;
  verify.stirling_max_n = 60;
  expect_csv_json_identity(run_command(verify));
}

TEST(CmdBounds, NormalizeFlagCapsWidths) {
  RunConfig c = bounds_config();
  c.normalize = true;
  RunReport normalized = run_command(c);
  const Row& row = normalized.results[0];
  EXPECT_EQ(std::get<std::string>(*find_cell(row, "memory")).substr(0, 9), "10|20|30|");
  RunReport raw = run_command(bounds_config());
  EXPECT_LE(as_double(find_cell(row, "chain_kl_bound")),
            as_double(find_cell(raw.results[0], "chain_kl_bound")) + 1e-12);
}

TEST(CmdBounds, PinskerConvenienceColumn) {
  RunReport report = run_command(bounds_config());
  const Row& row = report.results[0];
  double chain = as_double(find_cell(row, "chain_kl_bound"));
  EXPECT_DOUBLE_EQ(as_double(find_cell(row, "pinsker_tv_bound")), std::sqrt(chain / 2.0));
}

TEST(CmdOracle, CollisionReferenceInstance) {
  RunConfig c;
  c.command = Command::oracle;
  c.n = 4;
  c.q = 2;
  c.memory_spec = "3,1";
  RunReport report = run_command(c);
  ASSERT_EQ(report.results.size(), 1u);
  const Row& row = report.results[0];
  EXPECT_NEAR(as_double(find_cell(row, "kl_exact")), 0.287682, 1e-6);
  EXPECT_NEAR(as_double(find_cell(row, "collision_kl_analytic")), 0.287682, 1e-6);
  EXPECT_DOUBLE_EQ(as_double(find_cell(row, "p_accept")), 0.0);
  EXPECT_TRUE(std::get<bool>(*find_cell(row, "info_sum_pass")));
  EXPECT_TRUE(std::get<bool>(*find_cell(row, "bottleneck_pass")));
  EXPECT_EQ(exit_status(report), 0);
}

TEST(CmdOracle, ListProfileWithoutExplicitQ) {
  RunConfig c;
  c.command = Command::oracle;
  c.n = 4;
  c.memory_spec = "3,1";  // q inferred from the list
  RunReport report = run_command(c);
  EXPECT_NEAR(as_double(find_cell(report.results[0], "kl_exact")), 0.287682, 1e-6);
}

TEST(CmdOracle, ConstantAlgorithmAllZeroReport) {
  RunConfig c;
  c.command = Command::oracle;
  c.n = 6;
  c.q = 3;
  c.memory_spec = "const:2";
  c.algorithm = AlgorithmKind::constant;
  RunReport report = run_command(c);
  const Row& row = report.results[0];
  EXPECT_DOUBLE_EQ(as_double(find_cell(row, "kl_exact")), 0.0);
  EXPECT_DOUBLE_EQ(as_double(find_cell(row, "p_accept")), 0.0);
  EXPECT_DOUBLE_EQ(as_double(find_cell(row, "q_accept")), 0.0);
}

TEST(CmdOracle, RandomSuiteAllSeedsPass) {
  RunConfig c;
  c.command = Command::oracle;
  c.n = 6;
  c.q = 3;
  c.memory_spec = "2,3,1";
  c.algorithm = AlgorithmKind::random;
  c.suite_count = 20;
  c.seed = 5;
  RunReport report = run_command(c);
  ASSERT_EQ(report.results.size(), 20u);
  EXPECT_TRUE(report.all_passed);
  EXPECT_EQ(exit_status(report), 0);
}

TEST(CmdSimulate, ByteIdenticalReplay) {
  RunConfig c;
  c.command = Command::simulate;
  c.n = 64;
  c.q = 8;
  c.memory_spec = "const:7";
  c.samples = 4000;
  c.seed = 21;
  RunReport first = run_command(c);
  RunReport second = run_command(c);
  EXPECT_EQ(render_json(first), render_json(second));
  EXPECT_EQ(render_csv(first), render_csv(second));
  EXPECT_EQ(exit_status(first), 0);

  // P-source acceptance of the collision detector is exactly zero
  for (const Row& row : first.results) {
    const Value* source = find_cell(row, "source");
    if (std::get<std::string>(*source) == "P") {
      EXPECT_DOUBLE_EQ(as_double(find_cell(row, "value")), 0.0);
    }
  }
}

TEST(CmdVerifyFunctions, DefaultGridPasses) {
  RunConfig c;
  c.command = Command::verify_functions;
  c.grid_points = 2000;  // smaller grid for the unit test; acceptance runs 1e4
  c.stirling_max_n = 200;
  RunReport report = run_command(c);
  ASSERT_GE(report.results.size(), 6u);
  for (const Row& row : report.results) {
    EXPECT_TRUE(std::get<bool>(*find_cell(row, "pass")))
        << std::get<std::string>(*find_cell(row, "property"));
    EXPECT_GE(as_double(find_cell(row, "worst_slack")), -1e-12);
  }
  EXPECT_EQ(exit_status(report), 0);
}

TEST(CmdVerifyFunctions, EnvelopeMinimumSitsInTheEqualityRegion) {
  auto properties = run_function_property_suite(2000, 50);
  for (const auto& p : properties) {
    if (p.name.find("dominates") != std::string::npos) {
      EXPECT_LE(p.worst_at, 0.5 + 1e-12);  // equality holds left of 1/2
      EXPECT_GE(p.worst_slack, -1e-12);
    }
  }
}

TEST(CmdVerifyFunctions, RejectsTooCoarseGrids) {
  RunConfig c;
  c.command = Command::verify_functions;
  c.grid_points = 5;
  EXPECT_THROW(run_command(c), std::invalid_argument);
}

TEST(ExitStatus, NonzeroWhenAVerificationFails) {
  RunReport report;
  report.all_passed = false;
  EXPECT_EQ(exit_status(report), 1);
  report.all_passed = true;
  EXPECT_EQ(exit_status(report), 0);
}

TEST(ParseGridSpec, Errors) {
  RunConfig c;
  EXPECT_THROW(parse_grid_spec("bogus", c), std::invalid_argument);
  EXPECT_THROW(parse_grid_spec("m=1,2", c), std::invalid_argument);
  EXPECT_THROW(parse_grid_spec("q=", c), std::invalid_argument);
  parse_grid_spec("n=64,128;q=4", c);
  EXPECT_EQ(c.grid_n, (std::vector<int64_t>{64, 128}));
  EXPECT_EQ(c.grid_q, (std::vector<int>{4}));
}
