#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qudit_mbqc/clifford.hpp"
#include "qudit_mbqc/cluster.hpp"
#include "qudit_mbqc/measurement.hpp"

namespace qmbqc {

// ---------------------------------------------------------------------------
// Byproduct operators

/// phase * (tensor_i Z^{z_i} X^{x_i}) on n output qudits, powers reduced mod d.
class ByproductOp {
 public:
  ByproductOp(QuditDim d, int n_sites);
  static ByproductOp from_powers(QuditDim d, std::vector<std::pair<int, int>> z_x_powers,
                                 Complex phase = 1.0);

  QuditDim dim() const { return d_; }
  int n_sites() const { return static_cast<int>(z_.size()); }
  int z_pow(int i) const { return z_[static_cast<std::size_t>(i)]; }
  int x_pow(int i) const { return x_[static_cast<std::size_t>(i)]; }
  Complex phase() const { return phase_; }

  void set(int i, long long z_pow, long long x_pow);
  void scale(Complex c) { phase_ *= c; }

  /// Dense d^n x d^n matrix.
  Operator matrix() const;

 private:
  QuditDim d_;
  std::vector<int> z_;
  std::vector<int> x_;
  Complex phase_ = 1.0;
};

/// Normal-ordered product a * b: (Z^a X^b)(Z^c X^e) = q^(b c) Z^(a+c) X^(b+e)
/// per site.
ByproductOp byproduct_compose(const ByproductOp& a, const ByproductOp& b);
/// Formal inverse: byproduct_compose(a, byproduct_inverse(a)) is the identity.
ByproductOp byproduct_inverse(const ByproductOp& a);

// ---------------------------------------------------------------------------
// Gate protocols

/// Eigenvalue exponents of the two eigen-equations per logical qudit:
///   X_in,i (U X_i U^dag)_out |psi> = q^(-x) |psi>
///   Z_in,i^dag (U Z_i U^dag)_out |psi> = q^(-z) |psi>
struct LambdaPair {
  int x;
  int z;
  friend bool operator==(const LambdaPair&, const LambdaPair&) = default;
};

/// A measurement-based gate: cluster, adaptive pattern over inputs and body,
/// target on the outputs, and the classical rules attached to outcomes.
///
/// For every branch the output satisfies
///   out ~ byproduct_rule(s) * target * in                  (correction form)
///   out ~ effective_gate(s) * U_Sigma(s) * in              (eigen-equation form)
/// with U_Sigma = tensor_i Z^(-lambda_x,i - s_in,i) X^(lambda_z,i) built from
/// lambda_rule(s). Adaptive protocols change effective_gate with earlier
/// outcomes; for the others it is the target.
struct GateProtocol {
  std::string name;
  QuditDim d;
  ClusterGraph graph;
  MeasurementPattern pattern;
  Operator target;
  std::function<std::vector<LambdaPair>(const Outcomes&)> lambda_rule;
  std::function<Operator(const Outcomes&)> effective_gate;
  std::function<ByproductOp(const Outcomes&)> byproduct_rule;

  int n_logical() const { return static_cast<int>(graph.inputs().size()); }
};

/// U_Sigma = tensor_i Z^(-lambda_x,i - s_i) X^(lambda_z,i), s_i the X outcome
/// on the i-th input site.
ByproductOp eigen_form_byproduct(const GateProtocol& protocol, const Outcomes& outcomes);

/// Output Z readout corrected for a byproduct applied after the gate:
/// the logical digit of qudit i is readout_i + x_pow_i (mod d).
std::vector<int> corrected_readout(const ByproductOp& byproduct, std::span<const int> readout);

/// Solves sum_j alpha'_j (k + m^(j)_k d) = target_exponent_k for the unit lift
/// basis m^(j) = e_j. Used to express a shifted rotation as a product of
/// rotations with fixed lifts.
std::vector<double> solve_lift_exponents(QuditDim d, std::span<const double> target_exponents);

/// Exponents alpha'_j with prod_j X^(alpha'_j)({e_j}) = Z^(-c) X^alpha({m}) Z^c.
std::vector<double> conjugated_rotation_exponents(const LiftVector& lifts, double alpha, int c);

/// X^alpha({m}) on the five-site chain, with site 4 measured adaptively on
/// s1 + s3. Byproduct after the gate: Z^(-s1-s3) X^(s2+s4).
GateProtocol protocol_rot_x(QuditDim d, double alpha, const LiftVector& lifts);
/// Z^alpha({m}) on the five-site chain, with site 3 measured adaptively on
/// s2, s4. Byproduct after the gate: Z^(-s1-s3) X^(s2+s4).
GateProtocol protocol_rot_z(QuditDim d, double alpha, const LiftVector& lifts);
/// U1n / V / W on the five-site chain, Un1 on the six-site chain.
GateProtocol protocol_clifford(QuditDim d, CliffordKind kind, int n);
/// Two-qudit gate T on the t6 cluster.
GateProtocol protocol_t(QuditDim d);

/// The fixed representative of T from its four defining conjugations.
Operator t_gate(QuditDim d);

/// q^(s1 s2) Z5^s1 X5^(s2-s3) Z6^s2 X6^(s1-s4): the byproduct moved past T.
ByproductOp t_moved_byproduct(QuditDim d, int s1, int s2, int s3, int s4);

// ---------------------------------------------------------------------------
// Eigen-equation check on a projected cluster state

enum class EigenCheckStatus { Holds, ZeroNorm, NotEigenvector, OffLattice };

struct EigenCheckResult {
  EigenCheckStatus status;
  std::vector<LambdaPair> lambdas;
  double worst_fidelity;  // min over the 2n equations of |<psi|A psi>|
  bool ok() const { return status == EigenCheckStatus::Holds; }
};

/// Forms |psi> = P_body |phi_C> (renormalized) and checks the 2n eigen-
/// equations for `claimed_u` (acting on the outputs, in output order).
EigenCheckResult eigen_equation_check(const ClusterGraph& graph, std::span<const SiteDirection> body,
                              const Operator& claimed_u, double tol = kProtocolTol);

/// eigen_equation_check on the body sites of one outcome string of `protocol`
/// (adaptive bases resolved from `outcomes`).
EigenCheckResult eigen_equation_check(const GateProtocol& protocol, const Outcomes& outcomes,
                              double tol = kProtocolTol);

// ---------------------------------------------------------------------------
// Running gates

enum class RunMode { Sample, Enumerate };

struct RunSpec {
  RunMode mode = RunMode::Enumerate;
  std::uint64_t seed = 0;
};

struct GateRunOptions {
  double tol = kProtocolTol;
  std::size_t branch_cap = kDefaultBranchCap;
  /// Replaces the protocol target in the comparison (negative controls).
  const Operator* target_override = nullptr;
};

struct GateBranch {
  std::size_t index;
  Outcomes outcomes;
  double probability;
  bool zero_branch;
  StateVector output;   // normalized output register (zero vector on zero branches)
  ByproductOp byproduct;
  double fidelity;           // vs byproduct * target * in
  double eigen_form_fidelity;  // vs effective_gate * U_Sigma * in
  bool verified;
};

/// Prepares in x |+>, entangles, measures inputs and body by the protocol's
/// pattern and compares each output with the predicted state.
std::vector<GateBranch> run_gate(const GateProtocol& protocol, const StateVector& input,
                                 RunSpec spec = {}, const GateRunOptions& options = {});

// ---------------------------------------------------------------------------
// Compilation of single-qudit rotations

struct ProtocolChain {
  std::vector<GateProtocol> steps;  // application order
  Operator composed_target;         // product of step targets
  Operator requested;               // param_unitary(zbar(m, n), lifts, alpha)
  double residual;                  // phase-insensitive distance between the two
};

/// Zbar(m,n)^alpha({m}) = U Z^alpha({m}) U^dag with U a Clifford word from
/// factor_clifford; emits protocols for U^dag, the rotation, then U.
ProtocolChain compile_single_qudit(QuditDim d, int m, int n, double alpha, const LiftVector& lifts,
                                   double tol = kProtocolTol);

struct ChainRun {
  StateVector output;
  double fidelity;  // vs composed_target * in
  std::vector<std::vector<int>> outcomes_per_step;
};

/// Runs the chain cluster by cluster on one sampled trajectory. Pauli
/// byproducts are carried as a frame through Clifford steps and flushed onto
/// the register before rotation steps.
ChainRun run_chain(const ProtocolChain& chain, const StateVector& input, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Products of one-parameter unitaries

struct RotationFactor {
  int m;
  int n;
  LiftVector lifts;
  double beta;
};

struct Approximation {
  std::vector<RotationFactor> factors;  // product factor_0 * factor_1 * ...
  Operator product;
  double fidelity;  // |Tr(target^dag product)| / d
};

/// Haar-random unitary of dimension d.
Operator random_unitary(int d, std::mt19937_64& rng);

/// Fits the betas of a fixed sequence of q^(beta N(Zbar, {e_j})) factors
/// (Zbar over Z, X, ZX, ..., ZX^(d-1)) to `target` by Levenberg-Marquardt with
/// random restarts.
Approximation approximate_unitary(QuditDim d, const Operator& target, std::uint64_t seed,
                                  int layers = 2, int restarts = 32);

}  // namespace qmbqc
