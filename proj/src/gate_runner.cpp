#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "qudit_mbqc/protocols.hpp"

namespace qmbqc {

namespace {

/// |in> on the input sites (in input order), |x(0)> everywhere else.
StateVector embed_input(const ClusterGraph& graph, const StateVector& input) {
  const int d = graph.dim();
  const int n = graph.n_sites();
  const auto& inputs = graph.inputs();
  if (input.dim() != d || input.n_sites() != static_cast<int>(inputs.size())) {
    throw DomainError("input state must have one qudit per input site");
  }
  const std::size_t size = hilbert_dim(d, n);
  const double plus = std::pow(static_cast<double>(d), -0.5 * static_cast<double>(n - input.n_sites()));
  std::vector<std::size_t> strides(static_cast<std::size_t>(n) + 1);
  for (int a = 1; a <= n; ++a) strides[static_cast<std::size_t>(a)] = hilbert_dim(d, n - a);
  Amplitudes amps(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t in_index = 0;
    for (int site : inputs) {
      in_index = in_index * static_cast<std::size_t>(d) + (i / strides[static_cast<std::size_t>(site)]) % static_cast<std::size_t>(d);
    }
    amps[static_cast<Eigen::Index>(i)] = plus * input[in_index];
  }
  return StateVector(d, n, std::move(amps));
}

/// Reorders a register whose sites are `have` (ascending) into the order `want`.
StateVector reorder(const StateVector& state, const std::vector<int>& have, const std::vector<int>& want) {
  if (have == want) return state;
  const int d = state.dim();
  const int n = state.n_sites();
  std::vector<int> position(want.size());
  for (std::size_t k = 0; k < want.size(); ++k) {
    position[k] = static_cast<int>(std::find(have.begin(), have.end(), want[k]) - have.begin());
  }
  Amplitudes out(state.amplitudes().size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto digits = state.digits(i);
    std::size_t j = 0;
    for (int k = 0; k < n; ++k) j = j * static_cast<std::size_t>(d) + static_cast<std::size_t>(digits[static_cast<std::size_t>(position[static_cast<std::size_t>(k)])]);
    out[static_cast<Eigen::Index>(j)] = state[i];
  }
  return StateVector(d, n, std::move(out));
}

std::vector<int> unmeasured_sites(int n_sites, const std::vector<int>& measured) {
  std::vector<int> out;
  for (int a = 1; a <= n_sites; ++a) {
    if (std::find(measured.begin(), measured.end(), a) == measured.end()) out.push_back(a);
  }
  return out;
}

double overlap_fidelity(const StateVector& a, const Amplitudes& b) {
  const double nb = b.norm();
  if (a.norm() == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.amplitudes().dot(b)) / (a.norm() * nb);
}

}  // namespace

EigenCheckResult eigen_equation_check(const ClusterGraph& graph, std::span<const SiteDirection> body,
                              const Operator& claimed_u, double tol) {
  const QuditDim d(graph.dim());
  const auto& inputs = graph.inputs();
  const auto& outputs = graph.outputs();
  const int n_logical = static_cast<int>(inputs.size());
  if (!graph.is_gate_cluster()) throw DomainError("eigen_equation_check: graph has no input/output partition");
  const auto expected_body = graph.body();
  if (body.size() != expected_body.size()) throw DomainError("eigen_equation_check: directions must cover the body exactly");
  for (const SiteDirection& sd : body) {
    if (std::find(expected_body.begin(), expected_body.end(), sd.site) == expected_body.end()) {
      throw DomainError("eigen_equation_check: site " + std::to_string(sd.site) + " is not a body site");
    }
  }
  const auto logical_dim = static_cast<Eigen::Index>(hilbert_dim(d.value(), n_logical));
  if (claimed_u.rows() != logical_dim || claimed_u.cols() != logical_dim) {
    throw DomainError("eigen_equation_check: claimed gate has the wrong dimension");
  }

  EigenCheckResult result{EigenCheckStatus::Holds, {}, 1.0};
  StateVector psi = contract_sites(cluster_state(graph), body);
  if (psi.norm() * psi.norm() < kZeroBranchProbability) {
    result.status = EigenCheckStatus::ZeroNorm;
    result.worst_fidelity = 0.0;
    return result;
  }
  psi = psi.normalized();

  // Positions of the input and output sites in the contracted register.
  std::vector<int> measured;
  for (const SiteDirection& sd : body) measured.push_back(sd.site);
  const std::vector<int> remaining = unmeasured_sites(graph.n_sites(), measured);
  auto position = [&remaining](int site) {
    return static_cast<int>(std::find(remaining.begin(), remaining.end(), site) - remaining.begin()) + 1;
  };
  std::vector<int> out_positions;
  for (int site : outputs) out_positions.push_back(position(site));

  const Operator u_dag = claimed_u.adjoint();
  const double lattice_slack = 2.0 * kPi / (10.0 * d.value());
  auto read_lambda = [&](const StateVector& mapped, int& lambda) {
    const Complex e = psi.amplitudes().dot(mapped.amplitudes());
    const double fidelity = std::abs(e);
    result.worst_fidelity = std::min(result.worst_fidelity, fidelity);
    if (fidelity < 1.0 - tol) {
      result.status = EigenCheckStatus::NotEigenvector;
      return;
    }
    // e = q^(-lambda)
    const double steps = -std::arg(e) * d.value() / (2.0 * kPi);
    const double nearest = std::round(steps);
    if (std::abs(steps - nearest) * 2.0 * kPi / d.value() > lattice_slack) {
      if (result.status == EigenCheckStatus::Holds) result.status = EigenCheckStatus::OffLattice;
      return;
    }
    lambda = d.mod(static_cast<long long>(nearest));
  };

  for (int i = 0; i < n_logical; ++i) {
    const Operator zi = embed(gen_z(d), i + 1, n_logical, d);
    const Operator xi = embed(gen_x(d), i + 1, n_logical, d);
    LambdaPair lambda{0, 0};
    const int in_pos = position(inputs[static_cast<std::size_t>(i)]);

    StateVector mx = apply_sites(psi, out_positions, claimed_u * xi * u_dag);
    mx = apply_local(mx, in_pos, gen_x(d));
    read_lambda(mx, lambda.x);

    StateVector mz = apply_sites(psi, out_positions, claimed_u * zi * u_dag);
    mz = apply_local(mz, in_pos, gen_z(d).adjoint());
    read_lambda(mz, lambda.z);

    result.lambdas.push_back(lambda);
  }
  return result;
}

EigenCheckResult eigen_equation_check(const GateProtocol& protocol, const Outcomes& outcomes, double tol) {
  const auto body_sites = protocol.graph.body();
  std::vector<SiteDirection> body;
  for (const Stage& stage : protocol.pattern.stages()) {
    for (const SiteMeasurement& m : stage.sites) {
      if (std::find(body_sites.begin(), body_sites.end(), m.site) == body_sites.end()) continue;
      const Operator u = m.basis(outcomes);
      body.push_back({m.site, u.col(outcomes.at(m.site))});
    }
  }
  return eigen_equation_check(protocol.graph, body, protocol.effective_gate(outcomes), tol);
}

std::vector<GateBranch> run_gate(const GateProtocol& protocol, const StateVector& input, RunSpec spec,
                                 const GateRunOptions& options) {
  const ClusterGraph& graph = protocol.graph;
  const QuditDim d = protocol.d;
  const StateVector prepared = entangler(graph).apply(embed_input(graph, input));
  const std::vector<int> measured = protocol.pattern.measured_sites();
  const std::vector<int> remaining = unmeasured_sites(graph.n_sites(), measured);
  const std::vector<int>& wanted_outputs = graph.outputs();
  std::vector<int> sorted_outputs = wanted_outputs;
  std::sort(sorted_outputs.begin(), sorted_outputs.end());
  if (remaining != sorted_outputs) {
    throw DomainError("protocol pattern must measure every site except the outputs");
  }
  const Operator& target = options.target_override ? *options.target_override : protocol.target;

  auto make_branch = [&](std::size_t index, const Outcomes& outcomes, double probability,
                         const std::vector<Amplitudes>& directions) {
    std::vector<SiteDirection> contract;
    for (int site : measured) contract.push_back({site, directions[static_cast<std::size_t>(site)]});
    StateVector out = reorder(contract_sites(prepared, contract), remaining, wanted_outputs);
    ByproductOp byproduct = protocol.byproduct_rule(outcomes);
    const bool zero = probability < kZeroBranchProbability;
    if (zero) {
      return GateBranch{index, outcomes, 0.0, true, out, byproduct, 0.0, 0.0, false};
    }
    out = out.normalized();
    const Amplitudes predicted = byproduct.matrix() * target * input.amplitudes();
    const Amplitudes eigen_form =
        protocol.effective_gate(outcomes) * eigen_form_byproduct(protocol, outcomes).matrix() * input.amplitudes();
    const double f1 = overlap_fidelity(out, predicted);
    const double f2 = overlap_fidelity(out, eigen_form);
    const bool ok = f1 >= 1.0 - options.tol && f2 >= 1.0 - options.tol;
    return GateBranch{index, outcomes, probability, false, std::move(out), std::move(byproduct), f1, f2, ok};
  };

  std::vector<GateBranch> result;
  if (spec.mode == RunMode::Sample) {
    const OutcomeRecord record = run_pattern_sampled(prepared, protocol.pattern, spec.seed);
    std::size_t index = 0;
    for (int site : measured) index = index * static_cast<std::size_t>(d.value()) + static_cast<std::size_t>(record.outcomes.at(site));
    result.push_back(make_branch(index, record.outcomes, record.probability, record.directions));
    return result;
  }

  const std::size_t total = branch_count(protocol.pattern, d.value());
  if (total > options.branch_cap) {
    throw BranchCapExceeded("enumeration needs " + std::to_string(total) + " branches, cap is " +
                            std::to_string(options.branch_cap));
  }
  std::vector<std::optional<GateBranch>> slots(total);
  const double norm2 = prepared.norm() * prepared.norm();
  for_each_branch(prepared, protocol.pattern, {options.branch_cap, false}, [&](const BranchView& view) {
    slots[view.index].emplace(make_branch(view.index, view.outcomes, view.probability / norm2, view.directions));
  });
  result.reserve(total);
  for (auto& s : slots) result.push_back(std::move(*s));
  return result;
}

}  // namespace qmbqc
