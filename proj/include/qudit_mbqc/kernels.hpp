#pragma once

// Data-parallel inner loops of the state engine. Every kernel exists twice:
// `serial` is the straightforward reference and `parallel` is the OpenMP
// version used by the public API. Tests check them against each other and the
// benchmark target times both.

#include <cstddef>
#include <span>

#include "qudit_mbqc/types.hpp"

namespace qmbqc::kernels {

/// Register shape: d levels per site, n sites, site 1 most significant.
struct Layout {
  int d;
  int n_sites;

  std::size_t size() const;
  std::size_t stride(int site) const;
};

namespace serial {

/// out = (I x op_site x I) in; `op` is d x d.
void apply_local(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 int site, const Operator& op);

/// out = op applied to the ordered site list `sites`; `op` is d^k x d^k with
/// sites[0] as its most significant digit.
void apply_sites(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 std::span<const int> sites, const Operator& op);

/// amps[i] *= q^(j_a j_b) where j_a, j_b are the digits of sites a and b.
void apply_phase_gate(const Layout& layout, std::span<Complex> amps, int a, int b);

/// amps[i] *= phases[i].
void multiply_diagonal(std::span<Complex> amps, std::span<const Complex> phases);

/// out = (|dir><dir|)_site in; returns the squared norm of out.
double project_site(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                    int site, std::span<const Complex> direction);

}  // namespace serial

namespace parallel {

void apply_local(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 int site, const Operator& op);
void apply_sites(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                 std::span<const int> sites, const Operator& op);
void apply_phase_gate(const Layout& layout, std::span<Complex> amps, int a, int b);
void multiply_diagonal(std::span<Complex> amps, std::span<const Complex> phases);
double project_site(const Layout& layout, std::span<const Complex> in, std::span<Complex> out,
                    int site, std::span<const Complex> direction);

}  // namespace parallel

/// Below this many amplitudes the parallel kernels run single-threaded.
inline constexpr std::size_t kParallelThreshold = 1u << 12;

}  // namespace qmbqc::kernels
