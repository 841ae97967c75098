#include "qudit_mbqc/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

namespace qmbqc {

using nlohmann::json;

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["d"] = d;
  j["graph"] = graph;
  j["n"] = n;
  j["m"] = m;
  j["protocol"] = protocol;
  j["alpha"] = alpha;
  j["lifts"] = lifts;
  j["mode"] = mode;
  j["seed"] = seed;
  j["tol"] = tol ? json(*tol) : json(nullptr);
  j["inputs"] = inputs;
  j["input_count"] = input_count;
  j["pair"] = pair;
  j["normalize_timing"] = normalize_timing;
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("run_config: expected an object");
  RunConfig c;
  auto read = [&j](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception&) {
      throw ConfigError(std::string("run_config: field '") + key + "' has the wrong type");
    }
  };
  read("command", c.command);
  read("d", c.d);
  read("graph", c.graph);
  read("n", c.n);
  read("m", c.m);
  read("protocol", c.protocol);
  read("alpha", c.alpha);
  read("lifts", c.lifts);
  read("mode", c.mode);
  read("seed", c.seed);
  if (j.contains("tol") && !j.at("tol").is_null()) {
    double t = 0.0;
    read("tol", t);
    c.tol = t;
  }
  read("inputs", c.inputs);
  read("input_count", c.input_count);
  read("pair", c.pair);
  read("normalize_timing", c.normalize_timing);
  if (c.command.empty()) throw ConfigError("run_config: field 'command' is missing");
  return c;
}

ClusterGraph parse_graph_json(const json& j, const std::string& origin) {
  auto fail = [&origin](const std::string& what) { return ConfigError(origin + ": " + what); };
  if (!j.is_object()) throw fail("expected a JSON object");
  for (const char* key : {"d", "sites", "edges"}) {
    if (!j.contains(key)) throw fail(std::string("missing field '") + key + "'");
  }
  if (!j["d"].is_number_integer()) throw fail("field 'd' must be an integer");
  if (!j["sites"].is_number_integer()) throw fail("field 'sites' must be an integer");
  const int d = j["d"].get<int>();
  const int sites = j["sites"].get<int>();
  if (d < 2) throw fail("field 'd' must be >= 2");
  if (sites < 1) throw fail("field 'sites' must be >= 1");
  if (!j["edges"].is_array()) throw fail("field 'edges' must be an array");
  std::vector<ClusterGraph::Edge> edges;
  for (std::size_t k = 0; k < j["edges"].size(); ++k) {
    const json& e = j["edges"][k];
    const std::string where = "field 'edges[" + std::to_string(k) + "]'";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw fail(where + " must be a pair of integers");
    }
    const int a = e[0].get<int>();
    const int b = e[1].get<int>();
    if (a == b) throw fail(where + " is a self-loop on site " + std::to_string(a));
    if (a < 1 || a > sites || b < 1 || b > sites) throw fail(where + " references a site outside 1.." + std::to_string(sites));
    edges.emplace_back(a, b);
  }
  auto site_list = [&](const char* key) {
    std::vector<int> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) throw fail(std::string("field '") + key + "' must be an array");
    for (const json& s : j[key]) {
      if (!s.is_number_integer()) throw fail(std::string("field '") + key + "' must hold integers");
      out.push_back(s.get<int>());
    }
    return out;
  };
  std::vector<int> inputs = site_list("input");
  std::vector<int> outputs = site_list("output");
  try {
    return ClusterGraph(d, sites, std::move(edges), std::move(inputs), std::move(outputs));
  } catch (const DomainError& e) {
    throw fail(std::string("field 'input'/'output': ") + e.what());
  }
}

ClusterGraph resolve_graph(const std::string& source, int d, int n) {
  static const std::regex chain_re("chain([0-9]+)");
  static const std::regex grid_re("grid([0-9]+)x([0-9]+)");
  std::smatch match;
  if (source == "chain") return chain(d, n);
  if (std::regex_match(source, match, chain_re)) return chain(d, std::stoi(match[1]));
  if (std::regex_match(source, match, grid_re)) return grid(d, std::stoi(match[1]), std::stoi(match[2]));
  if (source == "rot5" || source == "un1_6" || source == "t6") {
    return gate_graph(gate_graph_kind_from_string(source), d);
  }
  std::ifstream in(source);
  if (!in) throw ConfigError("graph '" + source + "' is neither a built-in name nor a readable file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON (" + e.what() + ")");
  }
  return parse_graph_json(j, source);
}

namespace {

void write_value(const json& j, std::ostringstream& os, int indent);

bool is_scalar(const json& j) { return !j.is_array() && !j.is_object(); }

void write_number(double v, std::ostringstream& os) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void write_value(const json& j, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::number_float:
      write_number(j.get<double>(), os);
      return;
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return is_scalar(e); });
      os << '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) os << ',';
        if (flat) {
          if (k > 0) os << ' ';
        } else {
          os << '\n' << pad;
        }
        write_value(j[k], os, indent + 2);
      }
      if (!flat) os << '\n' << close;
      os << ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        os << (first ? "\n" : ",\n") << pad << json(it.key()).dump() << ": ";
        write_value(it.value(), os, indent + 2);
        first = false;
      }
      os << '\n' << close << '}';
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_report(const json& report) {
  std::ostringstream os;
  write_value(report, os, 0);
  os << '\n';
  return os.str();
}

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw ConfigError("failed while writing '" + path + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move report into place at '" + path + "': " + ec.message());
  }
}

json normalize_timing(json report) {
  if (report.contains("timing")) report["timing"]["wall_time_s"] = 0.0;
  return report;
}

json checks_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  return checks;
}

}  // namespace qmbqc
