#include <vector>

#include "qudit_mbqc/kernels.hpp"

namespace qmbqc::kernels {

std::size_t Layout::size() const {
  std::size_t s = 1;
  for (int i = 0; i < n_sites; ++i) s *= static_cast<std::size_t>(d);
  return s;
}

std::size_t Layout::stride(int site) const {
  std::size_t s = 1;
  for (int i = site; i < n_sites; ++i) s *= static_cast<std::size_t>(d);
  return s;
}

namespace serial {

void apply_local(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 int site, const Operator& op) {
  const std::size_t d = static_cast<std::size_t>(layout.d);
  const std::size_t s = layout.stride(site);
  const std::size_t block = s * d;
  const std::size_t n = layout.size();
  for (std::size_t outer = 0; outer < n; outer += block) {
    for (std::size_t inner = 0; inner < s; ++inner) {
      const std::size_t base = outer + inner;
      for (std::size_t r = 0; r < d; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[base + c * s];
        }
        out[base + r * s] = acc;
      }
    }
  }
}

void apply_sites(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 std::span<const int> sites, const Operator& op) {
  const std::size_t d = static_cast<std::size_t>(layout.d);
  const std::size_t sub = static_cast<std::size_t>(op.rows());
  std::vector<std::size_t> offsets(sub, 0);
  for (std::size_t t = 0; t < sub; ++t) {
    std::size_t rem = t;
    for (std::size_t j = sites.size(); j-- > 0;) {
      offsets[t] += (rem % d) * layout.stride(sites[j]);
      rem /= d;
    }
  }
  const std::size_t n = layout.size();
  for (std::size_t base = 0; base < n; ++base) {
    bool is_base = true;
    for (int site : sites) {
      if ((base / layout.stride(site)) % d != 0) {
        is_base = false;
        break;
      }
    }
    if (!is_base) continue;
    for (std::size_t r = 0; r < sub; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < sub; ++c) {
        acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[base + offsets[c]];
      }
      out[base + offsets[r]] = acc;
    }
  }
}

void apply_phase_gate(const Layout& layout, std::span<Complex> amps, int a, int b) {
  const QuditDim dim(layout.d);
  const std::size_t d = static_cast<std::size_t>(layout.d);
  const std::size_t sa = layout.stride(a);
  const std::size_t sb = layout.stride(b);
  std::vector<Complex> table(d);
  for (std::size_t k = 0; k < d; ++k) table[k] = dim.q_pow(static_cast<long long>(k));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t ja = (i / sa) % d;
    const std::size_t jb = (i / sb) % d;
    amps[i] *= table[(ja * jb) % d];
  }
}

void multiply_diagonal(std::span<Complex> amps, std::span<const Complex> phases) {
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= phases[i];
}

double project_site(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                    int site, std::span<const Complex> direction) {
  const std::size_t d = static_cast<std::size_t>(layout.d);
  const std::size_t s = layout.stride(site);
  const std::size_t block = s * d;
  const std::size_t n = layout.size();
  double norm2 = 0.0;
  for (std::size_t outer = 0; outer < n; outer += block) {
    for (std::size_t inner = 0; inner < s; ++inner) {
      const std::size_t base = outer + inner;
      Complex overlap = 0.0;
      for (std::size_t c = 0; c < d; ++c) overlap += std::conj(direction[c]) * in[base + c * s];
      norm2 += std::norm(overlap);
      for (std::size_t r = 0; r < d; ++r) out[base + r * s] = direction[r] * overlap;
    }
  }
  return norm2;
}

}  // namespace serial
}  // namespace qmbqc::kernels
