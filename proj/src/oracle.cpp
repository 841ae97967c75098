#include "qudit_mbqc/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace qmbqc {

StateVector oracle_cluster_state_1d(int d, int n) {
  const QuditDim dim(d);
  if (n < 1) throw DomainError("oracle cluster state needs n >= 1");
  const std::size_t size = hilbert_dim(d, n);
  const double norm = std::pow(static_cast<double>(d), -0.5 * n);
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(size));
  // Term k_1..k_n of the product: |k_a>_a Z_{a+1}^{k_a}. Each Z_{a+1}^{k_a}
  // acts on the ket already chosen for site a+1.
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  for (std::size_t term = 0; term < size; ++term) {
    Complex amp = norm;
    for (int a = 0; a + 1 < n; ++a) {
      amp *= dim.q_pow(static_cast<long long>(k[static_cast<std::size_t>(a)]) * k[static_cast<std::size_t>(a + 1)]);
    }
    std::size_t index = 0;
    for (int a = 0; a < n; ++a) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(k[static_cast<std::size_t>(a)]);
    amps[static_cast<Eigen::Index>(index)] += amp;
    for (int a = n - 1; a >= 0; --a) {
      if (++k[static_cast<std::size_t>(a)] < d) break;
      k[static_cast<std::size_t>(a)] = 0;
    }
  }
  return StateVector(d, n, std::move(amps));
}

double entanglement_entropy(const StateVector& state, std::span<const int> cut_sites) {
  if (cut_sites.empty() || static_cast<int>(cut_sites.size()) >= state.n_sites()) {
    throw DomainError("entanglement_entropy: the cut must leave sites on both sides");
  }
  const Operator rho = reduced_density(state.normalized(), cut_sites);
  Eigen::SelfAdjointEigenSolver<Operator> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double p = solver.eigenvalues()[i];
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s / std::log(static_cast<double>(state.dim()));
}

void VerificationReport::add_check(std::string name, double value, double threshold) {
  checks.push_back({std::move(name), value, threshold, value <= threshold});
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<StateVector> certification_inputs(int d, int n_logical, const InputSpec& spec) {
  std::vector<StateVector> out;
  if (spec.kind == InputSpec::Kind::Basis) {
    const std::size_t size = hilbert_dim(d, n_logical);
    for (std::size_t i = 0; i < size; ++i) {
      Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(size));
      a[static_cast<Eigen::Index>(i)] = 1.0;
      out.emplace_back(d, n_logical, std::move(a));
    }
    return out;
  }
  if (spec.count < 1) throw DomainError("need at least one random input");
  std::mt19937_64 rng(spec.seed);
  for (int i = 0; i < spec.count; ++i) out.push_back(random_state(d, n_logical, rng));
  return out;
}

VerificationReport certify_protocol(const GateProtocol& protocol, const InputSpec& inputs,
                                    const CertifyOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const QuditDim d = protocol.d;
  VerificationReport report;
  report.scenario_id = protocol.name + "_d" + std::to_string(d.value());

  const std::vector<StateVector> states = certification_inputs(d.value(), protocol.n_logical(), inputs);
  const GateRunOptions run_options{options.tol, options.branch_cap, nullptr};

  Operator perturbation = param_unitary(gen_x(d), LiftVector::zeros(d), 0.5);
  perturbation = embed(perturbation, 1, protocol.n_logical(), d);
  const Operator perturbed = protocol.target * perturbation;
  const GateRunOptions control_options{options.tol, options.branch_cap, &perturbed};

  double worst_correction = 1.0;
  double worst_eigen = 1.0;
  double probability_residual = 0.0;
  double control_min = 1.0;
  std::vector<Outcomes> branch_outcomes;
  for (const StateVector& input : states) {
    const auto branches = run_gate(protocol, input, {RunMode::Enumerate, 0}, run_options);
    double total = 0.0;
    for (const GateBranch& b : branches) {
      total += b.probability;
      if (b.zero_branch) continue;
      worst_correction = std::min(worst_correction, b.fidelity);
      worst_eigen = std::min(worst_eigen, b.eigen_form_fidelity);
    }
    probability_residual = std::max(probability_residual, std::abs(total - 1.0));
    if (branch_outcomes.empty()) {
      report.branch_count = branches.size();
      for (const GateBranch& b : branches) branch_outcomes.push_back(b.outcomes);
    }
    for (const GateBranch& b : run_gate(protocol, input, {RunMode::Enumerate, 0}, control_options)) {
      if (!b.zero_branch) control_min = std::min(control_min, b.fidelity);
    }
  }

  // The eigen-equations depend only on the outcomes, not on the input.
  std::vector<int> mismatch(branch_outcomes.size(), 0);
  const auto n_branches = static_cast<long long>(branch_outcomes.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n_branches; ++i) {
    const Outcomes& o = branch_outcomes[static_cast<std::size_t>(i)];
    const EigenCheckResult r = eigen_equation_check(protocol, o, options.tol);
    const auto expected = protocol.lambda_rule(o);
    bool same = r.ok() && r.lambdas.size() == expected.size();
    for (std::size_t k = 0; same && k < expected.size(); ++k) {
      same = r.lambdas[k].x == d.mod(expected[k].x) && r.lambdas[k].z == d.mod(expected[k].z);
    }
    mismatch[static_cast<std::size_t>(i)] = same ? 0 : 1;
  }
  double mismatches = 0.0;
  for (int m : mismatch) mismatches += m;

  report.add_check("correction_form_infidelity", 1.0 - worst_correction, options.tol);
  report.add_check("eigen_form_infidelity", 1.0 - worst_eigen, options.tol);
  report.add_check("probability_sum_residual", probability_residual, options.tol);
  report.add_check("lambda_mismatches", mismatches, 0.0);
  // The perturbed target has to be rejected on at least one branch.
  report.add_check("negative_control_min_fidelity", control_min, 1.0 - options.tol);
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace qmbqc
