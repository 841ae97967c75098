#include <vector>

#include "qudit_mbqc/kernels.hpp"

namespace qmbqc::kernels::parallel {

namespace {

// Signed loop bounds keep older OpenMP runtimes happy.
using Idx = long long;

}  // namespace

void apply_local(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 int site, const Operator& op) {
  const Idx d = layout.d;
  const Idx s = static_cast<Idx>(layout.stride(site));
  const Idx groups = static_cast<Idx>(layout.size()) / d;
  const bool big = layout.size() >= kParallelThreshold;
#pragma omp parallel for if (big) schedule(static)
  for (Idx t = 0; t < groups; ++t) {
    const Idx base = (t / s) * s * d + t % s;
    for (Idx r = 0; r < d; ++r) {
      Complex acc = 0.0;
      for (Idx c = 0; c < d; ++c) acc += op(r, c) * in[static_cast<std::size_t>(base + c * s)];
      out[static_cast<std::size_t>(base + r * s)] = acc;
    }
  }
}

void apply_sites(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 std::span<const int> sites, const Operator& op) {
  const Idx d = layout.d;
  const Idx sub = op.rows();
  std::vector<Idx> offsets(static_cast<std::size_t>(sub), 0);
  for (Idx t = 0; t < sub; ++t) {
    Idx rem = t;
    for (std::size_t j = sites.size(); j-- > 0;) {
      offsets[static_cast<std::size_t>(t)] += (rem % d) * static_cast<Idx>(layout.stride(sites[j]));
      rem /= d;
    }
  }
  // Enumerate bases by skipping the listed digits: the free digits of the
  // group index t are spread over the unlisted sites.
  std::vector<Idx> free_strides;
  for (int site = layout.n_sites; site >= 1; --site) {
    bool listed = false;
    for (int s : sites) listed = listed || s == site;
    if (!listed) free_strides.push_back(static_cast<Idx>(layout.stride(site)));
  }
  Idx groups = 1;
  for (std::size_t i = 0; i < free_strides.size(); ++i) groups *= d;
  const bool big = layout.size() >= kParallelThreshold;
#pragma omp parallel for if (big) schedule(static)
  for (Idx t = 0; t < groups; ++t) {
    Idx base = 0;
    Idx rem = t;
    for (Idx stride : free_strides) {
      base += (rem % d) * stride;
      rem /= d;
    }
    for (Idx r = 0; r < sub; ++r) {
      Complex acc = 0.0;
      for (Idx c = 0; c < sub; ++c) {
        acc += op(r, c) * in[static_cast<std::size_t>(base + offsets[static_cast<std::size_t>(c)])];
      }
      out[static_cast<std::size_t>(base + offsets[static_cast<std::size_t>(r)])] = acc;
    }
  }
}

void apply_phase_gate(const Layout& layout, std::span<Complex> amps, int a, int b) {
  const QuditDim dim(layout.d);
  const Idx d = layout.d;
  const Idx sa = static_cast<Idx>(layout.stride(a));
  const Idx sb = static_cast<Idx>(layout.stride(b));
  std::vector<Complex> table(static_cast<std::size_t>(d));
  for (Idx k = 0; k < d; ++k) table[static_cast<std::size_t>(k)] = dim.q_pow(k);
  const Idx n = static_cast<Idx>(amps.size());
  const bool big = amps.size() >= kParallelThreshold;
#pragma omp parallel for if (big) schedule(static)
  for (Idx i = 0; i < n; ++i) {
    const Idx ja = (i / sa) % d;
    const Idx jb = (i / sb) % d;
    amps[static_cast<std::size_t>(i)] *= table[static_cast<std::size_t>((ja * jb) % d)];
  }
}

void multiply_diagonal(std::span<Complex> amps, std::span<const Complex> phases) {
  const Idx n = static_cast<Idx>(amps.size());
  const bool big = amps.size() >= kParallelThreshold;
#pragma omp parallel for if (big) schedule(static)
  for (Idx i = 0; i < n; ++i) amps[static_cast<std::size_t>(i)] *= phases[static_cast<std::size_t>(i)];
}

double project_site(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                    int site, std::span<const Complex> direction) {
  const Idx d = layout.d;
  const Idx s = static_cast<Idx>(layout.stride(site));
  const Idx groups = static_cast<Idx>(layout.size()) / d;
  const bool big = layout.size() >= kParallelThreshold;
  // Per-group weights are summed serially afterwards so the result does not
  // depend on the thread count.
  std::vector<double> weights(static_cast<std::size_t>(groups));
#pragma omp parallel for if (big) schedule(static)
  for (Idx t = 0; t < groups; ++t) {
    const Idx base = (t / s) * s * d + t % s;
    Complex overlap = 0.0;
    for (Idx c = 0; c < d; ++c) {
      overlap += std::conj(direction[static_cast<std::size_t>(c)]) * in[static_cast<std::size_t>(base + c * s)];
    }
    weights[static_cast<std::size_t>(t)] = std::norm(overlap);
    for (Idx r = 0; r < d; ++r) {
      out[static_cast<std::size_t>(base + r * s)] = direction[static_cast<std::size_t>(r)] * overlap;
    }
  }
  double norm2 = 0.0;
  for (double w : weights) norm2 += w;
  return norm2;
}

}  // namespace qmbqc::kernels::parallel
