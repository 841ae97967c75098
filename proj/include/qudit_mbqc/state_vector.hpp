#pragma once

#include <cstddef>
#include <vector>

#include "qudit_mbqc/types.hpp"

namespace qmbqc {

/// Dense amplitude vector over (C^d)^{tensor n}.
///
/// Site numbering is 1-based and site 1 is the most significant digit of the
/// basis index: |t_1 ... t_n> has index sum_a t_a d^(n-a).
///
/// Normalization is not enforced at construction because projections produce
/// unnormalized intermediates; callers that need a unit vector use
/// normalized() or check is_normalized().
class StateVector {
 public:
  StateVector(int d, int n_sites, Amplitudes amplitudes);

  int dim() const { return d_; }
  int n_sites() const { return n_sites_; }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }

  const Amplitudes& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = 1e-12) const;
  StateVector normalized() const;

  /// d^(n - site): distance between consecutive digit values of `site`.
  std::size_t stride(int site) const;

  /// Digits of a basis index, site 1 first.
  std::vector<int> digits(std::size_t index) const;
  std::size_t index(const std::vector<int>& digits) const;

 private:
  int d_;
  int n_sites_;
  Amplitudes amps_;
};

/// d^n with overflow guarding; throws DomainError when the register would not
/// fit in memory-addressable size.
std::size_t hilbert_dim(int d, int n_sites);

}  // namespace qmbqc
