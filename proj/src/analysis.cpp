#include "qudit_mbqc/analysis.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <string>

namespace qmbqc {

std::vector<int> shortest_path(const ClusterGraph& graph, int a, int b) {
  const int n = graph.n_sites();
  if (a < 1 || a > n || b < 1 || b > n) throw DomainError("path endpoints out of range");
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  std::queue<int> frontier;
  parent[static_cast<std::size_t>(a)] = a;
  frontier.push(a);
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop();
    if (cur == b) break;
    for (int nb : graph.neighbors(cur)) {
      if (parent[static_cast<std::size_t>(nb)] != 0) continue;
      parent[static_cast<std::size_t>(nb)] = cur;
      frontier.push(nb);
    }
  }
  if (parent[static_cast<std::size_t>(b)] == 0) return {};
  std::vector<int> path{b};
  while (path.back() != a) path.push_back(parent[static_cast<std::size_t>(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

ConnectednessResult maximal_connectedness(const ClusterGraph& graph, int a, int b, std::size_t branch_cap) {
  if (a == b) throw DomainError("connectedness needs two distinct sites");
  const std::vector<int> path = shortest_path(graph, a, b);
  if (path.empty()) {
    throw DomainError("sites " + std::to_string(a) + " and " + std::to_string(b) + " are not connected");
  }
  const QuditDim d(graph.dim());
  Stage stage;
  for (int site = 1; site <= graph.n_sites(); ++site) {
    if (site == a || site == b) continue;
    const bool interior = std::find(path.begin(), path.end(), site) != path.end();
    stage.sites.push_back(
        SiteMeasurement::fixed(site, interior ? basis::fourier(d) : basis::computational(d)));
  }
  const MeasurementPattern pattern(graph.n_sites(), {stage});
  const std::size_t total = branch_count(pattern, d.value());
  std::vector<double> deviation(total, 0.0);
  std::vector<double> impurity(total, 0.0);
  std::vector<char> nonzero(total, 0);
  const Operator mixed = Operator::Identity(d.value(), d.value()) / static_cast<double>(d.value());
  const std::array<int, 1> only_a{a};
  const std::array<int, 1> only_b{b};
  const std::array<int, 2> pair{a, b};

  const StateVector cluster = cluster_state(graph);
  for_each_branch(cluster, pattern, {branch_cap, false}, [&](const BranchView& view) {
    if (view.probability < kZeroBranchProbability) return;
    const StateVector post = view.state.normalized();
    nonzero[view.index] = 1;
    deviation[view.index] = std::max(max_abs(reduced_density(post, only_a) - mixed),
                                     max_abs(reduced_density(post, only_b) - mixed));
    impurity[view.index] = 1.0 - purity(reduced_density(post, pair));
  });
  ConnectednessResult out{a, b, path, total, 0, 0.0, 0.0};
  for (std::size_t i = 0; i < total; ++i) {
    if (!nonzero[i]) continue;
    ++out.nonzero_branches;
    out.worst_marginal_deviation = std::max(out.worst_marginal_deviation, deviation[i]);
    out.worst_pair_impurity = std::max(out.worst_pair_impurity, impurity[i]);
  }
  return out;
}

DestructionResult destroy_by_even_z(const ClusterGraph& graph, std::size_t branch_cap) {
  const QuditDim d(graph.dim());
  Stage stage;
  std::vector<int> measured;
  for (int site = 2; site <= graph.n_sites(); site += 2) {
    stage.sites.push_back(SiteMeasurement::fixed(site, basis::computational(d)));
    measured.push_back(site);
  }
  const MeasurementPattern pattern(graph.n_sites(), {stage});
  const std::size_t total = branch_count(pattern, d.value());
  std::vector<double> min_purity(total, 1.0);
  for_each_branch(cluster_state(graph), pattern, {branch_cap, false}, [&](const BranchView& view) {
    if (view.probability < kZeroBranchProbability) return;
    const StateVector post = view.state.normalized();
    double worst = 1.0;
    for (int site = 1; site <= graph.n_sites(); ++site) {
      const std::array<int, 1> keep{site};
      worst = std::min(worst, purity(reduced_density(post, keep)));
    }
    min_purity[view.index] = worst;
  });
  return {measured, total, *std::min_element(min_purity.begin(), min_purity.end())};
}

}  // namespace qmbqc
