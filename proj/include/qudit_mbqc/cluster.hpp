#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qudit_mbqc/state.hpp"

namespace qmbqc {

/// Sites 1..n with an undirected edge set and an optional input/output
/// partition (the body is every other site).
class ClusterGraph {
 public:
  using Edge = std::pair<int, int>;

  ClusterGraph(int d, int n_sites, std::vector<Edge> edges, std::vector<int> inputs = {},
               std::vector<int> outputs = {});

  int dim() const { return d_; }
  int n_sites() const { return n_sites_; }
  /// Normalized edges (a < b), sorted, without duplicates.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& inputs() const { return inputs_; }
  const std::vector<int>& outputs() const { return outputs_; }
  std::vector<int> body() const;

  /// Sorted neighbor list nbgh(a).
  const std::vector<int>& neighbors(int a) const;
  /// nu_a, the number of neighbors.
  int degree(int a) const { return static_cast<int>(neighbors(a).size()); }

  /// Inputs and outputs nonempty and of equal size.
  bool is_gate_cluster() const;

 private:
  int d_;
  int n_sites_;
  std::vector<Edge> edges_;
  std::vector<int> inputs_;
  std::vector<int> outputs_;
  std::vector<std::vector<int>> adjacency_;
};

/// Path 1-2-...-n.
ClusterGraph chain(int d, int n);
/// rows x cols rectangular lattice, row-major site numbering.
ClusterGraph grid(int d, int rows, int cols);

enum class GateGraphKind { Rot5, Un1Six, TSix };

/// rot5: chain of 5, in {1}, out {5}.
/// un1_6: chain of 6, in {1}, out {6}.
/// t6: edges 1-3, 2-4, 3-4, 3-5, 4-6, in {1,2}, out {5,6}.
ClusterGraph gate_graph(GateGraphKind kind, int d);
GateGraphKind gate_graph_kind_from_string(const std::string& name);

/// A diagonal operator stored as its phase vector.
class DiagonalTransform {
 public:
  DiagonalTransform(int d, int n_sites, std::vector<Complex> phases);

  StateVector apply(const StateVector& state) const;
  const std::vector<Complex>& phase_vector() const { return phases_; }

 private:
  int d_;
  int n_sites_;
  std::vector<Complex> phases_;
};

/// prod over edges of S_ab. Exponents are summed as integers mod d before the
/// single lookup of q^k, so edge order cannot change a single bit.
DiagonalTransform entangler(const ClusterGraph& graph);

/// The same product applied gate by gate with apply_phase_gate.
StateVector apply_entangler_gatewise(const ClusterGraph& graph, const StateVector& state);

/// S|+>.
StateVector cluster_state(const ClusterGraph& graph);

/// t_C = 2 pi / (d g).
double entangling_time(int d, double g);

/// exp(-i H t) with H = -g sum_(a,b) N_a N_b (hbar = 1), i.e. the diagonal
/// phase exp(i g t sum_(a,b) n_a n_b).
DiagonalTransform hamiltonian_evolution(const ClusterGraph& graph, double g, double t);

struct LocalFactor {
  int site;
  Operator op;
};

/// Applies the factors right to left (the last factor acts first), matching
/// the written operator product.
StateVector apply_product(const StateVector& state, std::span<const LocalFactor> factors);

/// || K|state> - |state> ||.
double eigen_residual(const StateVector& state, std::span<const LocalFactor> factors);

/// K_a = X_a^dag prod_{b in nbgh(a)} Z_b.
std::vector<LocalFactor> cluster_stabilizer(const ClusterGraph& graph, int a);

struct SiteResidual {
  int site;
  double residual;
};

std::vector<SiteResidual> stabilizer_residuals(const StateVector& state, const ClusterGraph& graph);

}  // namespace qmbqc
