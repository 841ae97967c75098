#pragma once

#include <vector>

#include "qudit_mbqc/cluster.hpp"
#include "qudit_mbqc/measurement.hpp"

namespace qmbqc {

/// Shortest a-b path by breadth-first search; ties go to the lowest site index
/// (neighbors are expanded in ascending order). Returns an empty list when the
/// sites are disconnected.
std::vector<int> shortest_path(const ClusterGraph& graph, int a, int b);

struct ConnectednessResult {
  int a;
  int b;
  std::vector<int> path;
  std::size_t branches;
  std::size_t nonzero_branches;
  /// max over nonzero branches and over {a, b} of max |rho - I/d|.
  double worst_marginal_deviation;
  /// max over nonzero branches of 1 - Tr(rho_ab^2) (the pair stays pure).
  double worst_pair_impurity;
};

/// Measures X on the interior of the shortest a-b path and Z on every site off
/// the path, over every outcome branch, and reports how far the pair's
/// single-site marginals are from I/d.
ConnectednessResult maximal_connectedness(const ClusterGraph& graph, int a, int b,
                                          std::size_t branch_cap = kDefaultBranchCap);

struct DestructionResult {
  std::vector<int> measured_sites;
  std::size_t branches;
  double min_purity;  // over nonzero branches and every site
};

/// Measures Z on sites 2, 4, ..., 2 floor(n/2) and reports the smallest
/// single-site purity left on any branch. On a chain every purity is 1; on
/// other graphs the result is whatever the measurements leave.
DestructionResult destroy_by_even_z(const ClusterGraph& graph,
                                    std::size_t branch_cap = kDefaultBranchCap);

}  // namespace qmbqc
