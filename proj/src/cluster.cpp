#include "qudit_mbqc/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qudit_mbqc/algebra.hpp"
#include "qudit_mbqc/kernels.hpp"

namespace qmbqc {

ClusterGraph::ClusterGraph(int d, int n_sites, std::vector<Edge> edges, std::vector<int> inputs,
                           std::vector<int> outputs)
    : d_(QuditDim(d).value()),
      n_sites_(n_sites),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      adjacency_(static_cast<std::size_t>(n_sites) + 1) {
  if (n_sites < 1) throw DomainError("graph needs at least one site");
  auto in_range = [n_sites](int a) { return a >= 1 && a <= n_sites; };
  for (auto [a, b] : edges) {
    if (!in_range(a) || !in_range(b)) {
      throw DomainError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") references a site outside 1.." +
                        std::to_string(n_sites));
    }
    if (a == b) throw DomainError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") is a self-loop");
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [a, b] : edges_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  auto check_list = [&](const std::vector<int>& list, const char* name) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!in_range(list[i])) {
        throw DomainError(std::string(name) + " site " + std::to_string(list[i]) + " out of range");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (list[i] == list[j]) throw DomainError(std::string(name) + " lists site " + std::to_string(list[i]) + " twice");
      }
    }
  };
  check_list(inputs_, "input");
  check_list(outputs_, "output");
  for (int a : inputs_) {
    if (std::find(outputs_.begin(), outputs_.end(), a) != outputs_.end()) {
      throw DomainError("site " + std::to_string(a) + " is both input and output");
    }
  }
}

std::vector<int> ClusterGraph::body() const {
  std::vector<int> out;
  for (int a = 1; a <= n_sites_; ++a) {
    if (std::find(outputs_.begin(), outputs_.end(), a) == outputs_.end() &&
        std::find(inputs_.begin(), inputs_.end(), a) == inputs_.end()) {
      out.push_back(a);
    }
  }
  return out;
}

const std::vector<int>& ClusterGraph::neighbors(int a) const {
  if (a < 1 || a > n_sites_) throw DomainError("site " + std::to_string(a) + " out of range");
  return adjacency_[static_cast<std::size_t>(a)];
}

bool ClusterGraph::is_gate_cluster() const {
  return !inputs_.empty() && inputs_.size() == outputs_.size();
}

ClusterGraph chain(int d, int n) {
  std::vector<ClusterGraph::Edge> edges;
  for (int a = 1; a < n; ++a) edges.emplace_back(a, a + 1);
  return ClusterGraph(d, n, std::move(edges));
}

ClusterGraph grid(int d, int rows, int cols) {
  if (rows < 1 || cols < 1) throw DomainError("grid needs positive dimensions");
  std::vector<ClusterGraph::Edge> edges;
  auto site = [cols](int r, int c) { return r * cols + c + 1; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(site(r, c), site(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(site(r, c), site(r + 1, c));
    }
  }
  return ClusterGraph(d, rows * cols, std::move(edges));
}

ClusterGraph gate_graph(GateGraphKind kind, int d) {
  switch (kind) {
    case GateGraphKind::Rot5:
      return ClusterGraph(d, 5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}, {1}, {5});
    case GateGraphKind::Un1Six:
      return ClusterGraph(d, 6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}, {1}, {6});
    case GateGraphKind::TSix:
      return ClusterGraph(d, 6, {{1, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 6}}, {1, 2}, {5, 6});
  }
  throw DomainError("unknown gate graph");
}

GateGraphKind gate_graph_kind_from_string(const std::string& name) {
  if (name == "rot5") return GateGraphKind::Rot5;
  if (name == "un1_6") return GateGraphKind::Un1Six;
  if (name == "t6") return GateGraphKind::TSix;
  throw DomainError("unknown gate graph '" + name + "' (expected rot5, un1_6, t6)");
}

DiagonalTransform::DiagonalTransform(int d, int n_sites, std::vector<Complex> phases)
    : d_(d), n_sites_(n_sites), phases_(std::move(phases)) {
  if (phases_.size() != hilbert_dim(d, n_sites)) throw DomainError("phase vector has the wrong length");
}

StateVector DiagonalTransform::apply(const StateVector& state) const {
  if (state.dim() != d_ || state.n_sites() != n_sites_) throw DomainError("DiagonalTransform: shape mismatch");
  Amplitudes out = state.amplitudes();
  kernels::parallel::multiply_diagonal({out.data(), static_cast<std::size_t>(out.size())}, phases_);
  return StateVector(d_, n_sites_, std::move(out));
}

DiagonalTransform entangler(const ClusterGraph& graph) {
  const QuditDim d(graph.dim());
  const int n = graph.n_sites();
  const std::size_t size = hilbert_dim(d.value(), n);
  std::vector<Complex> table(static_cast<std::size_t>(d.value()));
  for (int k = 0; k < d.value(); ++k) table[static_cast<std::size_t>(k)] = d.q_pow(k);
  std::vector<std::size_t> strides(static_cast<std::size_t>(n) + 1);
  for (int a = 1; a <= n; ++a) strides[static_cast<std::size_t>(a)] = hilbert_dim(d.value(), n - a);
  std::vector<Complex> phases(size);
  const auto ds = static_cast<std::size_t>(d.value());
  for (std::size_t i = 0; i < size; ++i) {
    long long exponent = 0;
    for (auto [a, b] : graph.edges()) {
      exponent += static_cast<long long>((i / strides[static_cast<std::size_t>(a)]) % ds) *
                  static_cast<long long>((i / strides[static_cast<std::size_t>(b)]) % ds);
    }
    phases[i] = table[static_cast<std::size_t>(d.mod(exponent))];
  }
  return DiagonalTransform(d.value(), n, std::move(phases));
}

StateVector apply_entangler_gatewise(const ClusterGraph& graph, const StateVector& state) {
  StateVector out = state;
  for (auto [a, b] : graph.edges()) out = apply_phase_gate(out, a, b);
  return out;
}

StateVector cluster_state(const ClusterGraph& graph) {
  return entangler(graph).apply(plus_state(graph.dim(), graph.n_sites()));
}

double entangling_time(int d, double g) {
  if (!(g > 0.0)) throw DomainError("coupling g must be positive");
  return 2.0 * kPi / (static_cast<double>(d) * g);
}

DiagonalTransform hamiltonian_evolution(const ClusterGraph& graph, double g, double t) {
  const int d = graph.dim();
  const int n = graph.n_sites();
  const std::size_t size = hilbert_dim(d, n);
  std::vector<std::size_t> strides(static_cast<std::size_t>(n) + 1);
  for (int a = 1; a <= n; ++a) strides[static_cast<std::size_t>(a)] = hilbert_dim(d, n - a);
  const auto ds = static_cast<std::size_t>(d);
  std::vector<Complex> phases(size);
  for (std::size_t i = 0; i < size; ++i) {
    long long sum = 0;
    for (auto [a, b] : graph.edges()) {
      sum += static_cast<long long>((i / strides[static_cast<std::size_t>(a)]) % ds) *
             static_cast<long long>((i / strides[static_cast<std::size_t>(b)]) % ds);
    }
    phases[i] = std::polar(1.0, g * t * static_cast<double>(sum));
  }
  return DiagonalTransform(d, n, std::move(phases));
}

StateVector apply_product(const StateVector& state, std::span<const LocalFactor> factors) {
  StateVector out = state;
  for (std::size_t k = factors.size(); k-- > 0;) out = apply_local(out, factors[k].site, factors[k].op);
  return out;
}

double eigen_residual(const StateVector& state, std::span<const LocalFactor> factors) {
  return (apply_product(state, factors).amplitudes() - state.amplitudes()).norm();
}

std::vector<LocalFactor> cluster_stabilizer(const ClusterGraph& graph, int a) {
  const QuditDim d(graph.dim());
  std::vector<LocalFactor> factors{{a, gen_x(d).adjoint()}};
  for (int b : graph.neighbors(a)) factors.push_back({b, gen_z(d)});
  return factors;
}

std::vector<SiteResidual> stabilizer_residuals(const StateVector& state, const ClusterGraph& graph) {
  std::vector<SiteResidual> out;
  for (int a = 1; a <= graph.n_sites(); ++a) {
    const auto k = cluster_stabilizer(graph, a);
    out.push_back({a, eigen_residual(state, k)});
  }
  return out;
}

}  // namespace qmbqc
