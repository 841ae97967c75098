// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qudit_mbqc/analysis.hpp"
#include "qudit_mbqc/commands.hpp"
#include "qudit_mbqc/oracle.hpp"
#include "qudit_mbqc/protocols.hpp"

namespace {

using namespace qmbqc;

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome algebra() {
  double worst = 0.0;
  for (int dv : {2, 3, 4, 5, 7}) {
    const QuditDim d(dv);
    const Operator z = gen_z(d);
    const Operator x = gen_x(d);
    const Operator id = Operator::Identity(dv, dv);
    worst = std::max(worst, max_abs(x * z - d.q_pow(1) * z * x));
    worst = std::max(worst, max_abs(matrix_power(x, dv) - id));
    worst = std::max(worst, max_abs(matrix_power(z, dv) - id));
    for (int j = 0; j < dv; ++j) {
      for (int k = 0; k < dv; ++k) {
        const Operator lhs = matrix_power(x, j) * matrix_power(z, k);
        worst = std::max(worst, max_abs(lhs - d.q_pow(j * k) * matrix_power(z, k) * matrix_power(x, j)));
      }
    }
    worst = std::max(worst, weyl_gram_residual(d));
  }
  return {worst <= 1e-12, fmt("max residual %.3g", worst)};
}

Outcome stabilizers() {
  std::vector<ClusterGraph> graphs;
  for (int d : {2, 3, 5}) {
    for (int n = 1; n <= 6; ++n) graphs.push_back(chain(d, n));
  }
  for (int d : {2, 3}) {
    graphs.push_back(gate_graph(GateGraphKind::TSix, d));
    graphs.push_back(grid(d, 2, 3));
  }
  double worst = 0.0;
  for (const ClusterGraph& g : graphs) {
    for (const SiteResidual& r : stabilizer_residuals(cluster_state(g), g)) worst = std::max(worst, r.residual);
  }
  double min_fid = 1.0;
  for (int d : {2, 3, 5}) {
    for (int n = 1; n <= 6; ++n) {
      min_fid = std::min(min_fid, equal_up_to_phase(oracle_cluster_state_1d(d, n), cluster_state(chain(d, n))).fidelity);
    }
  }
  return {worst <= 1e-10 && min_fid >= 1.0 - 1e-12,
          fmt("max stabilizer residual %.3g, min product-formula fidelity 1-%.3g", worst, 1.0 - min_fid)};
}

Outcome hamiltonian() {
  double worst = 0.0;
  for (int d : {2, 3, 4, 5}) {
    for (int n = 2; n <= 5; ++n) {
      const ClusterGraph g = chain(d, n);
      const double coupling = 1.0;
      const auto& h = hamiltonian_evolution(g, coupling, 2.0 * kPi / (d * coupling)).phase_vector();
      const auto& s = entangler(g).phase_vector();
      for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(h[i] - s[i]));
    }
  }
  return {worst <= 1e-12, fmt("max phase deviation %.3g", worst)};
}

Outcome connectedness() {
  double marginal = 0.0;
  double purity = 1.0;
  for (int d : {2, 3}) {
    std::vector<ClusterGraph> graphs;
    for (int n = 2; n <= 5; ++n) graphs.push_back(chain(d, n));
    graphs.push_back(gate_graph(GateGraphKind::TSix, d));
    for (const ClusterGraph& g : graphs) {
      for (int a = 1; a <= g.n_sites(); ++a) {
        for (int b = a + 1; b <= g.n_sites(); ++b) {
          marginal = std::max(marginal, maximal_connectedness(g, a, b).worst_marginal_deviation);
        }
      }
    }
    for (int n = 2; n <= 6; ++n) purity = std::min(purity, destroy_by_even_z(chain(d, n)).min_purity);
  }
  return {marginal <= 1e-9 && purity >= 1.0 - 1e-10,
          fmt("max marginal deviation %.3g, min destruction purity 1-%.3g", marginal, 1.0 - purity)};
}

Outcome certification() {
  std::vector<GateProtocol> protocols;
  for (int dv : {2, 3}) {
    const QuditDim d(dv);
    for (double alpha : {0.0, 1.0, 0.5}) {
      protocols.push_back(protocol_rot_x(d, alpha, LiftVector::zeros(d)));
      protocols.push_back(protocol_rot_z(d, alpha, LiftVector::zeros(d)));
    }
    for (int n : {1, 2}) {
      protocols.push_back(protocol_clifford(d, CliffordKind::U1n, n));
      protocols.push_back(protocol_clifford(d, CliffordKind::Un1, n));
    }
    protocols.push_back(protocol_clifford(d, CliffordKind::W, 1));
    protocols.push_back(protocol_t(d));
  }
  int failed = 0;
  double worst = 0.0;
  double control_max = 0.0;
  std::string first_failure;
  for (const GateProtocol& p : protocols) {
    const VerificationReport r = certify_protocol(p, {InputSpec::Kind::Random, 5, 2024});
    for (const CheckResult& c : r.checks) {
      if (c.name == "correction_form_infidelity" || c.name == "eigen_form_infidelity") worst = std::max(worst, c.value);
      if (c.name == "negative_control_min_fidelity") control_max = std::max(control_max, c.value);
      if (!c.pass && first_failure.empty()) first_failure = r.scenario_id + ":" + c.name;
    }
    if (!r.all_pass()) ++failed;
  }
  return {failed == 0, fmt("%zu protocols, worst infidelity %.3g, max negative-control fidelity %.3f%s%s",
                           protocols.size(), worst, control_max, first_failure.empty() ? "" : ", first failure ",
                           first_failure.c_str())};
}

Outcome factorization() {
  double worst = 0.0;
  int pairs = 0;
  for (int dv : {2, 3, 5}) {
    const QuditDim d(dv);
    for (int m = 0; m < dv; ++m) {
      for (int n = 0; n < dv; ++n) {
        if (std::gcd(m, n) != 1) continue;
        worst = std::max(worst, factor_residual(d, m, n, factor_clifford(d, m, n)));
        ++pairs;
      }
    }
  }
  return {worst <= 1e-9, fmt("%d labels, max conjugation residual %.3g", pairs, worst)};
}

Outcome imprimitivity() {
  double worst = 0.0;
  for (int dv : {2, 3}) {
    const QuditDim d(dv);
    const Operator t = t_gate(d);
    const Operator mixed = Operator::Identity(dv, dv) / static_cast<double>(dv);
    for (int j = 0; j < dv; ++j) {
      for (int k = 0; k < dv; ++k) {
        const StateVector out(dv, 2, t * basis_ket(dv, 2, {j, k}).amplitudes());
        for (int site : {1, 2}) {
          const std::vector<int> keep{site};
          worst = std::max(worst, max_abs(reduced_density(out, keep) - mixed));
        }
      }
    }
  }
  return {worst <= 1e-9, fmt("max marginal deviation %.3g", worst)};
}

Outcome determinism() {
  int mismatches = 0;
  int runs = 0;
  for (const char* protocol : {"rot_x", "un1", "t"}) {
    RunConfig c;
    c.command = "certify";
    c.d = 3;
    c.protocol = protocol;
    c.alpha = 0.37;
    c.lifts = {-1, 1, 0};
    c.n = 2;
    c.input_count = 2;
    c.seed = 99;
    c.normalize_timing = true;
    const std::string first = dump_report(build_report(c));
    const RunConfig again = RunConfig::from_json(nlohmann::json::parse(first)["run_config"]);
    const std::string second = dump_report(normalize_timing(build_report(again)));
    mismatches += first == second ? 0 : 1;
    ++runs;
  }
  return {mismatches == 0, fmt("%d re-runs, %d differ", runs, mismatches)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 for no runtime bound
  };
  const std::vector<Criterion> criteria{
      {"1 algebra", algebra, 1.0},
      {"2 cluster stabilizers", stabilizers, 5.0},
      {"3 hamiltonian generation", hamiltonian, 0.0},
      {"4 connectedness", connectedness, 0.0},
      {"5 gate certification", certification, 60.0},
      {"6 clifford factorization", factorization, 0.0},
      {"7 T imprimitivity", imprimitivity, 0.0},
      {"8 report determinism", determinism, 0.0},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    if (c.budget_s > 0.0 && elapsed >= c.budget_s) {
      pass = false;
      o.detail += fmt(" (over the %.0f s budget)", c.budget_s);
    }
    std::printf("%s  %-26s %7.3f s  %s\n", pass ? "PASS" : "FAIL", c.name, elapsed, o.detail.c_str());
    if (!pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
