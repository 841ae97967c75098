#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qudit_mbqc/protocols.hpp"

namespace qmbqc {

/// 1D cluster state from the product formula
///   d^(-n/2) tensor_a (sum_k |k>_a Z_{a+1}^k),  Z_{n+1} := I,
/// expanded term by term over k-strings.
StateVector oracle_cluster_state_1d(int d, int n);

/// von Neumann entropy of the reduced state on `cut_sites`, log base d.
double entanglement_entropy(const StateVector& state, std::span<const int> cut_sites);

struct CheckResult {
  std::string name;
  double value;
  double threshold;
  bool pass;  // value <= threshold
};

struct VerificationReport {
  std::string scenario_id;
  std::vector<CheckResult> checks;
  std::size_t branch_count = 0;
  double wall_time_s = 0.0;

  void add_check(std::string name, double value, double threshold);
  bool all_pass() const;
};

struct InputSpec {
  enum class Kind { Basis, Random };
  Kind kind = Kind::Random;
  int count = 5;  // random inputs only
  std::uint64_t seed = 0;
};

struct CertifyOptions {
  double tol = kProtocolTol;
  std::size_t branch_cap = kDefaultBranchCap;
};

/// Full-enumeration certification: worst branch fidelity (both output forms),
/// probability bookkeeping, lambda consistency against the eigen-equation
/// check, and a perturbed-target negative control that has to be rejected.
VerificationReport certify_protocol(const GateProtocol& protocol, const InputSpec& inputs,
                                    const CertifyOptions& options = {});

/// The inputs certify_protocol uses for `spec`.
std::vector<StateVector> certification_inputs(int d, int n_logical, const InputSpec& spec);

}  // namespace qmbqc
