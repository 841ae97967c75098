#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qudit_mbqc/cluster.hpp"
#include "qudit_mbqc/oracle.hpp"

namespace qmbqc {

inline constexpr int kReportSchemaVersion = 1;

/// Malformed configuration or input file; the message names the field.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Everything needed to re-run a command. The output path is deliberately not
/// part of it: a re-run written elsewhere must produce the same bytes.
struct RunConfig {
  std::string command;
  int d = 2;
  std::string graph;
  int n = 1;  // chain length for --graph chain, power for u1n/un1
  int m = 1;
  std::string protocol;
  double alpha = 0.0;
  std::vector<long long> lifts;  // empty means all zero
  std::string mode = "enumerate";
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string inputs = "random";
  int input_count = 5;
  std::vector<int> pair;
  bool normalize_timing = false;
  std::string out;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

/// Built-in names (chainN, chain with n, gridRxC, rot5, un1_6, t6) or a JSON
/// graph file {"d", "sites", "edges", "input", "output"} with 1-based sites.
ClusterGraph resolve_graph(const std::string& source, int d, int n);
ClusterGraph parse_graph_json(const nlohmann::json& j, const std::string& origin);

/// Pretty JSON with every floating-point number printed as %.17g.
std::string dump_report(const nlohmann::json& report);

/// Writes via a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& text);

/// Sets the timing field to zero so two runs can be compared byte for byte.
nlohmann::json normalize_timing(nlohmann::json report);

nlohmann::json checks_to_json(const VerificationReport& report);

}  // namespace qmbqc
