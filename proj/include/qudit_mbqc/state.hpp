#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qudit_mbqc/state_vector.hpp"

namespace qmbqc {

/// Computational basis state |t_1 ... t_n>.
StateVector basis_ket(int d, int n_sites, const std::vector<int>& digits);

/// |x(0)>^{tensor n}: every amplitude d^(-n/2).
StateVector plus_state(int d, int n_sites);

/// Haar-random pure state drawn from `rng`.
StateVector random_state(int d, int n_sites, std::mt19937_64& rng);

/// a x b with a's sites first.
StateVector tensor(const StateVector& a, const StateVector& b);

/// (I x ... x op_site x ... x I)|state>, computed by strided traversal.
StateVector apply_local(const StateVector& state, int site, const Operator& op);

/// Applies a d^k x d^k operator to the ordered sites (sites[0] is the most
/// significant digit of the operator's index).
StateVector apply_sites(const StateVector& state, std::span<const int> sites, const Operator& op);

/// S_ab |j>_a |k>_b = q^(jk) |j>_a |k>_b.
StateVector apply_phase_gate(const StateVector& state, int a, int b);

struct ProjectionResult {
  StateVector state;  // unnormalized: the site register collapsed onto `direction`
  double probability;
  bool zero_branch;
};

/// Branch probabilities below this are reported as zero branches.
inline constexpr double kZeroBranchProbability = 1e-14;

/// (|dir><dir|)_site |state>. `direction` must be a normalized d-vector.
ProjectionResult project_site(const StateVector& state, int site, const Amplitudes& direction);

/// Contracts each listed site with <direction| and returns the state on the
/// remaining sites (ascending order). The result is not renormalized.
struct SiteDirection {
  int site;
  Amplitudes direction;
};
StateVector contract_sites(const StateVector& state, std::span<const SiteDirection> measured);

/// Partial trace onto `keep_sites` (order respected: keep_sites[0] is the most
/// significant digit of the result).
Operator reduced_density(const StateVector& state, std::span<const int> keep_sites);

double purity(const Operator& rho);

struct PhaseComparison {
  bool equal;
  double fidelity;  // |<s1|s2>|
};

/// Equality up to a global phase: fidelity >= 1 - tol.
PhaseComparison equal_up_to_phase(const StateVector& s1, const StateVector& s2,
                                  double tol = kDefaultTol);

}  // namespace qmbqc
