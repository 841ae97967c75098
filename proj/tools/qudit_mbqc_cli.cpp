// qudit-mbqc: cluster verification, gate simulation and certification reports.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qudit_mbqc/commands.hpp"

namespace {

template <typename T>
std::vector<T> split_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw qmbqc::ConfigError(std::string(flag) + ": '" + item + "' is not an integer");
    }
    out.push_back(static_cast<T>(v));
  }
  return out;
}

struct RawFlags {
  std::string lifts;
  std::string pair;
};

void add_common(CLI::App* cmd, qmbqc::RunConfig& c, RawFlags& raw, double& tol) {
  cmd->add_option("--d", c.d, "Qudit dimension");
  cmd->add_option("--graph", c.graph, "Built-in graph (chainN, chain, gridRxC, rot5, un1_6, t6) or JSON file");
  cmd->add_option("--protocol", c.protocol, "rot_x, rot_z, u1n, un1, v, w or t");
  cmd->add_option("--alpha", c.alpha, "Rotation exponent");
  cmd->add_option("--lifts", raw.lifts, "Comma-separated lift integers, d of them");
  cmd->add_option("--m", c.m, "First label of Zbar(m, n)");
  cmd->add_option("--n", c.n, "Chain length, Clifford power, or second label of Zbar(m, n)");
  cmd->add_option("--mode", c.mode, "enumerate or sample")->check(CLI::IsMember({"enumerate", "sample"}));
  cmd->add_option("--seed", c.seed, "Seed for inputs and sampling");
  cmd->add_option("--tol", tol, "Tolerance override");
  cmd->add_option("--inputs", c.inputs, "Certification inputs: random or basis");
  cmd->add_option("--input-count", c.input_count, "Number of random certification inputs");
  cmd->add_option("--pair", raw.pair, "Two comma-separated sites for connectedness");
  cmd->add_flag("--normalize-timing", c.normalize_timing, "Write zero wall time");
  cmd->add_option("--out", c.out, "Report path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-based quantum computation on qudit cluster states"};
  app.require_subcommand(0, 1);
  std::string config_path;
  std::string config_out;
  app.add_option("--config", config_path, "Re-run the RunConfig embedded in a report");
  app.add_option("--out", config_out, "Report path for --config re-runs");

  qmbqc::RunConfig config;
  RawFlags raw;
  double tol = -1.0;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"verify-cluster", "Stabilizer, entangler and Hamiltonian checks on a graph"},
      {"simulate-gate", "Run a gate protocol and tabulate its branches"},
      {"certify", "Certify a protocol over all branches and several inputs"},
      {"factor-clifford", "Factor the Clifford sending Z to Zbar(m, n)"},
      {"connectedness", "Maximal-connectedness and Z-destruction suites"}};
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, config, raw, tol);
    cmd->callback([&config, name = std::string(name)] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : qmbqc::kExitConfigError;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw qmbqc::ConfigError("cannot read '" + config_path + "'");
      nlohmann::json report;
      try {
        report = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error&) {
        throw qmbqc::ConfigError(config_path + ": invalid JSON");
      }
      if (!report.contains("run_config")) throw qmbqc::ConfigError(config_path + ": field 'run_config' is missing");
      config = qmbqc::RunConfig::from_json(report["run_config"]);
      config.out = config_out;
    } else {
      if (config.command.empty()) {
        std::cerr << app.help();
        return qmbqc::kExitConfigError;
      }
      config.lifts = split_list<long long>(raw.lifts, "--lifts");
      config.pair = split_list<int>(raw.pair, "--pair");
      if (tol >= 0.0) config.tol = tol;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qmbqc::kExitConfigError;
  }
  return qmbqc::run_command(config, std::cout, std::cerr);
}
