#include "streamkl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>

#include <json.hpp>

#include "streamkl/bounds.hpp"
#include "streamkl/collision.hpp"
#include "streamkl/monte_carlo.hpp"
#include "streamkl/oracle.hpp"
#include "streamkl/properties.hpp"

namespace streamkl {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::bounds: return "bounds";
    case Command::oracle: return "oracle";
    case Command::simulate: return "simulate";
    case Command::verify_functions: return "verify-functions";
  }
  return "?";
}

std::string algorithm_name(AlgorithmKind a) {
  switch (a) {
    case AlgorithmKind::collision: return "collision";
    case AlgorithmKind::constant: return "constant";
    case AlgorithmKind::random: return "random";
  }
  return "?";
}

std::string join_doubles(const std::vector<double>& xs, std::size_t first = 0) {
  std::string out;
  for (std::size_t i = first; i < xs.size(); ++i) {
    if (i > first) out += '|';
    out += format_double(xs[i]);
  }
  return out;
}

MemoryProfile profile_for(const RunConfig& config, int64_t n, int q) {
  // q = 0 means "not given": lists carry their own length
  MemoryProfile profile = parse_memory_spec(config.memory_spec, n, q > 0 ? q : -1);
  if (config.normalize) profile = normalize_profile(profile);
  return profile;
}

std::unique_ptr<StreamAlgorithm> build_algorithm(const RunConfig& config,
                                                 const MemoryProfile& profile, uint64_t seed) {
  switch (config.algorithm) {
    case AlgorithmKind::collision: return make_collision_algorithm(profile);
    case AlgorithmKind::constant: return constant_algorithm(profile);
    case AlgorithmKind::random: return random_table_algorithm(profile, seed, config.table_cap);
  }
  throw std::logic_error("unknown algorithm kind");
}

void cmd_bounds(const RunConfig& config, RunReport& report) {
  std::vector<int64_t> ns = config.grid_n.empty() ? std::vector<int64_t>{config.n} : config.grid_n;
  std::vector<int> qs = config.grid_q.empty() ? std::vector<int>{config.q} : config.grid_q;
  for (int64_t n : ns) {
    for (int q : qs) {
      MemoryProfile profile = profile_for(config, n, q);
      BoundReport b = make_bound_report(profile, config.epsilon);
      Row row;
      row.add("n", n);
      row.add("q", static_cast<int64_t>(profile.q()));
      row.add("memory", profile.to_string());
      row.add("chain_kl_bound", b.chain_kl);
      row.add("chain_kl_bound_unit", std::string(BoundReport::chain_kl_unit));
      // convenience conversion: TV advantage <= sqrt(KL/2)
      row.add("pinsker_tv_bound", std::sqrt(b.chain_kl / 2.0));
      row.add("pinsker_tv_bound_unit", std::string("probability"));
      row.add("leading_order_bound", b.leading_order);
      row.add("leading_order_bound_unit", std::string(BoundReport::leading_order_unit));
      row.add("leading_order_bound_asymptotic", BoundReport::leading_order_asymptotic);
      if (b.epsilon_regime) {
        row.add("epsilon", *b.epsilon);
        row.add("epsilon_regime_bound", *b.epsilon_regime);
        row.add("epsilon_regime_bound_unit", std::string(BoundReport::epsilon_regime_unit));
        row.add("epsilon_regime_bound_asymptotic", BoundReport::epsilon_regime_asymptotic);
      }
      if (b.construction_lower) {
        row.add("construction_lower_bound", *b.construction_lower);
        row.add("construction_lower_bound_unit", std::string(BoundReport::construction_lower_unit));
        row.add("construction_lower_bound_clamped", b.construction_clamped);
        row.add("capacities", b.capacities->to_string());
        row.add("collision_kl", *b.collision_kl);
        row.add("collision_kl_unit", std::string(BoundReport::collision_kl_unit));
      }
      report.results.push_back(std::move(row));
    }
  }
}

void oracle_row(const RunConfig& config, const MemoryProfile& profile, uint64_t seed,
                RunReport& report) {
  auto alg = build_algorithm(config, profile, seed);
  OracleResult result = [&] {
    try {
      return enumerate_distributions(*alg, config.walk_cap);
    } catch (const CapExceededError& e) {
      throw CapExceededError(std::string(e.what()) +
                             "; the instance is beyond exact enumeration, use the simulate "
                             "command for sampling estimates");
    }
  }();
  Verdict info_sum = verify_info_sum_bound(result);
  std::vector<StepVerdict> bottleneck = verify_bottleneck_bound(result, profile.n);

  bool bottleneck_pass = true;
  double bottleneck_min_slack = std::numeric_limits<double>::infinity();
  for (const auto& sv : bottleneck) {
    bottleneck_pass = bottleneck_pass && sv.pass;
    bottleneck_min_slack = std::min(bottleneck_min_slack, sv.slack);
  }

  Row row;
  row.add("n", profile.n);
  row.add("q", static_cast<int64_t>(profile.q()));
  row.add("memory", profile.to_string());
  row.add("algorithm", algorithm_name(config.algorithm));
  row.add("seed", seed);
  row.add("kl_exact", result.kl_exact);
  row.add("kl_exact_unit", std::string("nats"));
  row.add("mi_per_step", join_doubles(result.mi_per_step, 1));
  row.add("mi_state", join_doubles(result.mi_state, 1));
  row.add("p_accept", result.p_accept());
  row.add("q_accept", result.q_accept());
  row.add("info_sum_pass", info_sum.pass);
  row.add("info_sum_slack", info_sum.slack);
  row.add("bottleneck_pass", bottleneck_pass);
  row.add("bottleneck_min_slack", bottleneck_min_slack);
  if (config.algorithm == AlgorithmKind::collision) {
    const auto& collision = static_cast<const CollisionAlgorithm&>(*alg);
    const auto& k = collision.capacities().k;
    row.add("collision_kl_analytic",
            collision_exact_kl(profile.n, std::span<const int64_t>(k.data(), k.size() - 1)));
    row.add("q_accept_analytic", analytic_accept_probability(profile.n, collision.capacities()));
  }
  report.results.push_back(std::move(row));
  report.all_passed = report.all_passed && info_sum.pass && bottleneck_pass;
}

void cmd_oracle(const RunConfig& config, RunReport& report) {
  MemoryProfile profile = profile_for(config, config.n, config.q);
  if (config.algorithm == AlgorithmKind::random && config.suite_count > 0) {
    for (int j = 0; j < config.suite_count; ++j) {
      oracle_row(config, profile, config.seed + static_cast<uint64_t>(j), report);
    }
  } else {
    oracle_row(config, profile, config.seed, report);
  }
}

void simulate_row(const std::string& source, const Estimate& est, std::optional<double> analytic,
                  RunReport& report) {
  Row row;
  row.add("source", source);
  row.add("value", est.value);
  row.add("std_error", est.std_error);
  row.add("samples", est.samples);
  row.add("seed", est.seed);
  if (analytic) {
    row.add("analytic", *analytic);
    double deviation = std::abs(est.value - *analytic);
    row.add("abs_deviation", deviation);
    bool pass = deviation <= 5.0 * est.std_error;
    row.add("within_5_sigma", pass);
    report.all_passed = report.all_passed && pass;
  }
  report.results.push_back(std::move(row));
}

void cmd_simulate(const RunConfig& config, RunReport& report) {
  MemoryProfile profile = profile_for(config, config.n, config.q);
  auto alg = build_algorithm(config, profile, config.seed);

  std::optional<double> analytic_q, analytic_p;
  if (config.algorithm == AlgorithmKind::collision) {
    const auto& collision = static_cast<const CollisionAlgorithm&>(*alg);
    analytic_q = analytic_accept_probability(profile.n, collision.capacities());
    analytic_p = 0.0;  // distinct inputs never flag
  }

  Estimate q_est = estimate_accept(*alg, Source::with_replacement, config.samples, config.seed,
                                   config.workers);
  simulate_row("Q", q_est, analytic_q, report);
  Estimate p_est = estimate_accept(*alg, Source::without_replacement, config.samples, config.seed,
                                   config.workers);
  simulate_row("P", p_est, analytic_p, report);
  // the per-source runs already used the seeds estimate_tv_advantage derives
  Estimate tv;
  tv.samples = config.samples;
  tv.seed = config.seed;
  tv.value = std::abs(p_est.value - q_est.value);
  tv.std_error = std::sqrt(p_est.std_error * p_est.std_error + q_est.std_error * q_est.std_error);
  std::optional<double> analytic_tv;
  if (analytic_q) analytic_tv = std::abs(*analytic_q - *analytic_p);
  simulate_row("TV", tv, analytic_tv, report);
}

void cmd_verify_functions(const RunConfig& config, RunReport& report) {
  auto properties = run_function_property_suite(config.grid_points, config.stirling_max_n);
  for (const auto& p : properties) {
    Row row;
    row.add("property", p.name);
    row.add("points", p.points);
    row.add("worst_slack", p.worst_slack);
    row.add("worst_at", p.worst_at);
    row.add("tolerance", p.tolerance);
    row.add("pass", p.pass);
    report.results.push_back(std::move(row));
    report.all_passed = report.all_passed && p.pass;
  }
}

ordered_json value_to_json(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return nullptr;
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  if (std::holds_alternative<int64_t>(v)) return std::get<int64_t>(v);
  if (std::holds_alternative<uint64_t>(v)) return std::get<uint64_t>(v);
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  return std::get<std::string>(v);
}

std::string value_to_csv(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return "";
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<int64_t>(v)) return std::to_string(std::get<int64_t>(v));
  if (std::holds_alternative<uint64_t>(v)) return std::to_string(std::get<uint64_t>(v));
  if (std::holds_alternative<double>(v)) return format_double(std::get<double>(v));
  return std::get<std::string>(v);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json config_to_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = command_name(c.command);
  j["n"] = c.n;
  j["q"] = c.q;
  j["memory"] = c.memory_spec;
  j["normalize"] = c.normalize;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["algorithm"] = algorithm_name(c.algorithm);
  j["workers"] = c.workers;
  if (c.epsilon) j["epsilon"] = *c.epsilon;
  j["grid_points"] = c.grid_points;
  return j;
}

}  // namespace

void parse_grid_spec(const std::string& spec, RunConfig& config) {
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t semi = spec.find(';', pos);
    std::string part = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    std::size_t eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("parse_grid_spec: expected key=v1,v2,... in '" + part + "'");
    }
    std::string key = part.substr(0, eq);
    std::string values = part.substr(eq + 1);
    std::vector<int64_t> parsed;
    std::size_t vpos = 0;
    while (vpos <= values.size()) {
      std::size_t comma = values.find(',', vpos);
      std::string tok =
          values.substr(vpos, comma == std::string::npos ? std::string::npos : comma - vpos);
      if (tok.empty()) throw std::invalid_argument("parse_grid_spec: empty value in '" + part + "'");
      parsed.push_back(std::stoll(tok));
      if (comma == std::string::npos) break;
      vpos = comma + 1;
    }
    if (key == "n") {
      config.grid_n = parsed;
    } else if (key == "q") {
      config.grid_q.clear();
      for (int64_t v : parsed) config.grid_q.push_back(static_cast<int>(v));
    } else {
      throw std::invalid_argument("parse_grid_spec: unknown grid key '" + key + "'");
    }
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
}

RunReport run_command(const RunConfig& config) {
  RunReport report;
  report.config = config;
  switch (config.command) {
    case Command::bounds: cmd_bounds(config, report); break;
    case Command::oracle: cmd_oracle(config, report); break;
    case Command::simulate: cmd_simulate(config, report); break;
    case Command::verify_functions: cmd_verify_functions(config, report); break;
  }
  return report;
}

std::string render_csv(const RunReport& report) {
  std::string out;
  if (report.results.empty()) return out;
  const Row& head = report.results.front();
  for (std::size_t c = 0; c < head.cells.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(head.cells[c].first);
  }
  out += '\n';
  for (const Row& row : report.results) {
    if (row.cells.size() != head.cells.size()) {
      throw std::logic_error("render_csv: rows with mismatched schemas");
    }
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(value_to_csv(row.cells[c].second));
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const RunReport& report) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command_name(report.config.command);
  j["config"] = config_to_json(report.config);
  ordered_json rows = ordered_json::array();
  int failures = 0;
  for (const Row& row : report.results) {
    ordered_json jr;
    for (const auto& [name, value] : row.cells) {
      jr[name] = value_to_json(value);
      bool is_verdict = name == "pass" || name.ends_with("_pass") || name == "within_5_sigma";
      if (is_verdict && std::holds_alternative<bool>(value) && !std::get<bool>(value)) {
        ++failures;
      }
    }
    rows.push_back(std::move(jr));
  }
  j["results"] = std::move(rows);
  j["verdicts"] = {{"passed", report.all_passed}, {"failures", failures}};
  return j.dump(2) + "\n";
}

std::string render(const RunReport& report, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(report) : render_json(report);
}

int exit_status(const RunReport& report) { return report.all_passed ? 0 : 1; }

}  // namespace streamkl
