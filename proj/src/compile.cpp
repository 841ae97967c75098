#include <cmath>
#include <string>

#include "qudit_mbqc/protocols.hpp"

namespace qmbqc {

namespace {

// Steps that realize Z^z X^x (X first), as integer rotations with zero lifts.
void append_pauli(QuditDim d, int z_pow, int x_pow, std::vector<GateProtocol>& steps) {
  if (d.mod(x_pow) != 0) steps.push_back(protocol_rot_x(d, d.mod(x_pow), LiftVector::zeros(d)));
  if (d.mod(z_pow) != 0) steps.push_back(protocol_rot_z(d, d.mod(z_pow), LiftVector::zeros(d)));
}

bool is_rotation(const GateProtocol& p) { return p.name == "rot_x" || p.name == "rot_z"; }

/// g^dag = g^(k-1) (g^k)^dag with g^k a Weyl operator up to phase.
void append_adjoint(QuditDim d, const CliffordStep& step, std::vector<GateProtocol>& steps) {
  const Operator g = basic_clifford(d, step.kind, step.power);
  Operator power = g;
  int order = 1;
  std::optional<WeylLabel> label = weyl_decompose(power, d);
  const int max_order = 4 * d.value() * d.value();
  while (!label && order < max_order) {
    power = power * g;
    ++order;
    label = weyl_decompose(power, d);
  }
  if (!label) throw VerificationError("no power of " + to_string(step.kind) + " is a Weyl operator");
  // (Z^j X^k)^dag is proportional to Z^-j X^-k.
  for (int r = 0; r < step.repeat; ++r) {
    append_pauli(d, -label->z_pow, -label->x_pow, steps);
    for (int i = 0; i < order - 1; ++i) steps.push_back(protocol_clifford(d, step.kind, step.power));
  }
}

double phase_distance(const Operator& a, const Operator& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  if (std::abs(overlap) < 1e-12) return max_abs(a - b) + 1.0;
  return max_abs(a - (overlap / std::abs(overlap)) * b);
}

}  // namespace

ProtocolChain compile_single_qudit(QuditDim d, int m, int n, double alpha, const LiftVector& lifts, double tol) {
  if (!(lifts.dim() == d)) throw DomainError("lift vector dimension does not match d");
  std::vector<CliffordStep> word = factor_clifford(d, m, n, tol);
  // Identity elements (U1n with n = 0) carry no information.
  std::erase_if(word, [d](const CliffordStep& s) {
    const auto label = weyl_decompose(basic_clifford(d, s.kind, s.power), d);
    return label && label->z_pow == 0 && label->x_pow == 0;
  });

  // P Z P^dag = q^c Zbar(m, n); appending X^-c removes the phase.
  const Operator p = compose_word(d, word);
  const Complex omega = (zbar(d, m, n).adjoint() * p * gen_z(d) * p.adjoint()).trace() / static_cast<double>(d.value());
  const double steps_c = std::arg(omega) * d.value() / (2.0 * kPi);
  const double rounded = std::round(steps_c);
  if (std::abs(std::abs(omega) - 1.0) > 1e-9 || std::abs(steps_c - rounded) > 1e-6) {
    throw VerificationError("conjugation phase of the Clifford word is not a power of q");
  }
  const int c = d.mod(static_cast<long long>(rounded));

  ProtocolChain chain{{}, Operator::Identity(d.value(), d.value()), param_unitary(zbar(d, m, n), lifts, alpha), 0.0};
  // U^dag = X^c P^dag; P^dag applies g_1^dag first.
  for (const CliffordStep& step : word) append_adjoint(d, step, chain.steps);
  append_pauli(d, 0, c, chain.steps);
  chain.steps.push_back(protocol_rot_z(d, alpha, lifts));
  // U = P X^-c; X^-c acts first, then g_k, ..., g_1.
  append_pauli(d, 0, -c, chain.steps);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    for (int r = 0; r < it->repeat; ++r) chain.steps.push_back(protocol_clifford(d, it->kind, it->power));
  }

  for (const GateProtocol& step : chain.steps) chain.composed_target = step.target * chain.composed_target;
  chain.residual = phase_distance(chain.composed_target, chain.requested);
  if (chain.residual > tol) {
    throw VerificationError("compiled chain misses the requested rotation by " + std::to_string(chain.residual));
  }
  return chain;
}

ChainRun run_chain(const ProtocolChain& chain, const StateVector& input, std::uint64_t seed) {
  if (input.n_sites() != 1) throw DomainError("run_chain: single-qudit input required");
  const int d = input.dim();
  std::mt19937_64 seeds(seed);
  StateVector state = input;
  Operator frame = Operator::Identity(d, d);
  ChainRun run{input, 0.0, {}};
  for (const GateProtocol& step : chain.steps) {
    if (is_rotation(step)) {
      state = apply_local(state, 1, frame.adjoint());
      frame = Operator::Identity(d, d);
    } else {
      frame = step.target * frame * step.target.adjoint();
    }
    const auto branches = run_gate(step, state, {RunMode::Sample, seeds()});
    const GateBranch& b = branches.front();
    state = b.output;
    frame = b.byproduct.matrix() * frame;
    std::vector<int> digits;
    for (int site : step.pattern.measured_sites()) digits.push_back(b.outcomes.at(site));
    run.outcomes_per_step.push_back(std::move(digits));
  }
  state = apply_local(state, 1, frame.adjoint());
  const Amplitudes expected = chain.composed_target * input.amplitudes();
  run.fidelity = std::abs(expected.dot(state.amplitudes())) / (expected.norm() * state.norm());
  run.output = std::move(state);
  return run;
}

}  // namespace qmbqc
