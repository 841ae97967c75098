#include "qudit_mbqc/state.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "qudit_mbqc/kernels.hpp"

namespace qmbqc {

namespace {

std::span<const Complex> view(const Amplitudes& a) {
  return {a.data(), static_cast<std::size_t>(a.size())};
}
std::span<Complex> view(Amplitudes& a) { return {a.data(), static_cast<std::size_t>(a.size())}; }

void check_site(const StateVector& s, int site) {
  if (site < 1 || site > s.n_sites()) {
    throw DomainError("site " + std::to_string(site) + " out of range 1.." +
                      std::to_string(s.n_sites()));
  }
}

}  // namespace

std::size_t hilbert_dim(int d, int n_sites) {
  if (d < 2) throw DomainError("qudit dimension must be >= 2");
  if (n_sites < 0) throw DomainError("negative site count");
  // 2^31 amplitudes is already 32 GiB.
  constexpr std::size_t kLimit = std::size_t{1} << 31;
  std::size_t size = 1;
  for (int i = 0; i < n_sites; ++i) {
    size *= static_cast<std::size_t>(d);
    if (size > kLimit) {
      throw DomainError("register of " + std::to_string(n_sites) + " qudits with d=" +
                        std::to_string(d) + " is too large");
    }
  }
  return size;
}

StateVector::StateVector(int d, int n_sites, Amplitudes amplitudes)
    : d_(QuditDim(d).value()), n_sites_(n_sites), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != hilbert_dim(d, n_sites)) {
    throw DomainError("amplitude count " + std::to_string(amps_.size()) + " does not match d^n");
  }
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  return StateVector(d_, n_sites_, amps_ / n);
}

std::size_t StateVector::stride(int site) const {
  if (site < 1 || site > n_sites_) throw DomainError("site out of range");
  std::size_t s = 1;
  for (int i = site; i < n_sites_; ++i) s *= static_cast<std::size_t>(d_);
  return s;
}

std::vector<int> StateVector::digits(std::size_t index) const {
  std::vector<int> out(static_cast<std::size_t>(n_sites_));
  for (int i = n_sites_ - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(d_));
    index /= static_cast<std::size_t>(d_);
  }
  return out;
}

std::size_t StateVector::index(const std::vector<int>& digits) const {
  if (digits.size() != static_cast<std::size_t>(n_sites_)) throw DomainError("digit count mismatch");
  std::size_t idx = 0;
  for (int t : digits) {
    if (t < 0 || t >= d_) throw DomainError("digit " + std::to_string(t) + " out of range");
    idx = idx * static_cast<std::size_t>(d_) + static_cast<std::size_t>(t);
  }
  return idx;
}

StateVector basis_ket(int d, int n_sites, const std::vector<int>& digits) {
  Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(hilbert_dim(d, n_sites)));
  StateVector shape(d, n_sites, a);
  a[static_cast<Eigen::Index>(shape.index(digits))] = 1.0;
  return StateVector(d, n_sites, std::move(a));
}

StateVector plus_state(int d, int n_sites) {
  const auto size = static_cast<Eigen::Index>(hilbert_dim(d, n_sites));
  return StateVector(d, n_sites, Amplitudes::Constant(size, 1.0 / std::sqrt(static_cast<double>(size))));
}

StateVector random_state(int d, int n_sites, std::mt19937_64& rng) {
  const auto size = static_cast<Eigen::Index>(hilbert_dim(d, n_sites));
  std::normal_distribution<double> gauss;
  Amplitudes a(size);
  for (Eigen::Index i = 0; i < size; ++i) a[i] = Complex(gauss(rng), gauss(rng));
  a.normalize();
  return StateVector(d, n_sites, std::move(a));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DomainError("tensor: dimension mismatch");
  Amplitudes out(static_cast<Eigen::Index>(a.size() * b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.segment(static_cast<Eigen::Index>(i * b.size()), static_cast<Eigen::Index>(b.size())) =
        a[i] * b.amplitudes();
  }
  return StateVector(a.dim(), a.n_sites() + b.n_sites(), std::move(out));
}

StateVector apply_local(const StateVector& state, int site, const Operator& op) {
  check_site(state, site);
  if (op.rows() != state.dim() || op.cols() != state.dim()) {
    throw DomainError("apply_local: operator must be d x d");
  }
  Amplitudes out(state.amplitudes().size());
  kernels::parallel::apply_local({state.dim(), state.n_sites()}, view(state.amplitudes()), view(out),
                                 site, op);
  return StateVector(state.dim(), state.n_sites(), std::move(out));
}

StateVector apply_sites(const StateVector& state, std::span<const int> sites, const Operator& op) {
  std::size_t sub = 1;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    check_site(state, sites[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (sites[i] == sites[j]) throw DomainError("apply_sites: repeated site");
    }
    sub *= static_cast<std::size_t>(state.dim());
  }
  if (static_cast<std::size_t>(op.rows()) != sub || op.cols() != op.rows()) {
    throw DomainError("apply_sites: operator size does not match the site list");
  }
  Amplitudes out(state.amplitudes().size());
  kernels::parallel::apply_sites({state.dim(), state.n_sites()}, view(state.amplitudes()), view(out),
                                 sites, op);
  return StateVector(state.dim(), state.n_sites(), std::move(out));
}

StateVector apply_phase_gate(const StateVector& state, int a, int b) {
  check_site(state, a);
  check_site(state, b);
  if (a == b) throw DomainError("apply_phase_gate: sites must differ");
  Amplitudes out = state.amplitudes();
  kernels::parallel::apply_phase_gate({state.dim(), state.n_sites()}, view(out), a, b);
  return StateVector(state.dim(), state.n_sites(), std::move(out));
}

ProjectionResult project_site(const StateVector& state, int site, const Amplitudes& direction) {
  check_site(state, site);
  if (direction.size() != state.dim()) throw DomainError("project_site: direction must have d entries");
  if (std::abs(direction.norm() - 1.0) > 1e-9) throw DomainError("project_site: direction not normalized");
  Amplitudes out(state.amplitudes().size());
  const double p = kernels::parallel::project_site({state.dim(), state.n_sites()},
                                                   view(state.amplitudes()), view(out), site,
                                                   view(direction));
  return {StateVector(state.dim(), state.n_sites(), std::move(out)), p, p < kZeroBranchProbability};
}

StateVector contract_sites(const StateVector& state, std::span<const SiteDirection> measured) {
  const int n = state.n_sites();
  const int d = state.dim();
  std::vector<int> slot(static_cast<std::size_t>(n + 1), -1);
  for (std::size_t k = 0; k < measured.size(); ++k) {
    check_site(state, measured[k].site);
    if (slot[static_cast<std::size_t>(measured[k].site)] >= 0) throw DomainError("contract_sites: repeated site");
    if (measured[k].direction.size() != d) throw DomainError("contract_sites: direction must have d entries");
    slot[static_cast<std::size_t>(measured[k].site)] = static_cast<int>(k);
  }
  const int remaining = n - static_cast<int>(measured.size());
  Amplitudes out = Amplitudes::Zero(static_cast<Eigen::Index>(hilbert_dim(d, remaining)));
  for (std::size_t i = 0; i < state.size(); ++i) {
    const Complex amp = state[i];
    if (amp == Complex(0.0)) continue;
    Complex coeff = amp;
    std::size_t rest = 0;
    std::size_t rem = i;
    std::size_t place = 1;
    for (int site = n; site >= 1; --site) {
      const int digit = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
      const int k = slot[static_cast<std::size_t>(site)];
      if (k >= 0) {
        coeff *= std::conj(measured[static_cast<std::size_t>(k)].direction[digit]);
      } else {
        rest += static_cast<std::size_t>(digit) * place;
        place *= static_cast<std::size_t>(d);
      }
    }
    out[static_cast<Eigen::Index>(rest)] += coeff;
  }
  return StateVector(d, remaining, std::move(out));
}

Operator reduced_density(const StateVector& state, std::span<const int> keep_sites) {
  const int n = state.n_sites();
  const int d = state.dim();
  std::vector<int> keep_pos(static_cast<std::size_t>(n + 1), -1);
  for (std::size_t k = 0; k < keep_sites.size(); ++k) {
    check_site(state, keep_sites[k]);
    if (keep_pos[static_cast<std::size_t>(keep_sites[k])] >= 0) throw DomainError("reduced_density: repeated site");
    keep_pos[static_cast<std::size_t>(keep_sites[k])] = static_cast<int>(k);
  }
  const int k_count = static_cast<int>(keep_sites.size());
  const auto rows = static_cast<Eigen::Index>(hilbert_dim(d, k_count));
  const auto cols = static_cast<Eigen::Index>(hilbert_dim(d, n - k_count));
  Operator m = Operator::Zero(rows, cols);
  std::vector<std::size_t> keep_weight(keep_sites.size());
  for (int k = 0; k < k_count; ++k) {
    keep_weight[static_cast<std::size_t>(k)] = hilbert_dim(d, k_count - 1 - k);
  }
  for (std::size_t i = 0; i < state.size(); ++i) {
    std::size_t rem = i;
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t place = 1;
    for (int site = n; site >= 1; --site) {
      const std::size_t digit = rem % static_cast<std::size_t>(d);
      rem /= static_cast<std::size_t>(d);
      const int k = keep_pos[static_cast<std::size_t>(site)];
      if (k >= 0) {
        row += digit * keep_weight[static_cast<std::size_t>(k)];
      } else {
        col += digit * place;
        place *= static_cast<std::size_t>(d);
      }
    }
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = state[i];
  }
  return m * m.adjoint();
}

double purity(const Operator& rho) { return (rho * rho).trace().real(); }

PhaseComparison equal_up_to_phase(const StateVector& s1, const StateVector& s2, double tol) {
  if (s1.dim() != s2.dim() || s1.n_sites() != s2.n_sites()) {
    throw DomainError("equal_up_to_phase: shape mismatch");
  }
  const double n1 = s1.norm();
  const double n2 = s2.norm();
  if (n1 == 0.0 || n2 == 0.0) return {false, 0.0};
  const double f = std::abs(s1.amplitudes().dot(s2.amplitudes())) / (n1 * n2);
  return {f >= 1.0 - tol, f};
}

}  // namespace qmbqc
