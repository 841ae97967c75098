#pragma once

#include <optional>
#include <vector>

#include "qudit_mbqc/state_vector.hpp"
#include "qudit_mbqc/types.hpp"

namespace qmbqc {

// ---------------------------------------------------------------------------
// Matrix helpers

Operator dagger(const Operator& a);
Operator kron(const Operator& a, const Operator& b);
/// Integer power; negative powers use the inverse (adjoint for unitaries is
/// not assumed, the inverse is computed exactly by LU).
Operator matrix_power(const Operator& a, long long k);
double max_abs(const Operator& a);
bool is_unitary(const Operator& a, double tol = kDefaultTol);
bool is_hermitian(const Operator& a, double tol = kDefaultTol);

/// Returns c with b = c * a (|c| = 1) when the two operators agree up to a
/// global phase within tol (entrywise), otherwise nullopt.
std::optional<Complex> phase_between(const Operator& a, const Operator& b,
                                     double tol = kProtocolTol);

// ---------------------------------------------------------------------------
// Generators of the quantum plane algebra, XZ = q ZX.

/// Clock operator diag(1, q, ..., q^(d-1)).
Operator gen_z(QuditDim d);
/// Shift operator with X|k> = |k-1 mod d>.
Operator gen_x(QuditDim d);

/// |x(j)> = d^(-1/2) sum_k q^(jk) |k>, the eigenvector of X with eigenvalue q^j.
StateVector x_eigenvector(QuditDim d, int j);

/// Z^j X^k for 0 <= j, k < d.
Operator weyl(QuditDim d, int j, int k);

/// exp(-i pi (d-1) m n / d) Z^m X^n. The phase uses the integer
/// representatives as given (it is not a power of q for even d), which makes
/// the result have spectrum {q^k} and d-th power equal to the identity.
/// Requires gcd(m, n) = 1.
Operator zbar(QuditDim d, int m, int n);

// ---------------------------------------------------------------------------
// Lifted logarithms N(Zbar, {m}) and one-parameter unitaries.

/// Integer lifts m_0..m_{d-1}; lifted exponent e_n = n + m_n d.
class LiftVector {
 public:
  LiftVector(QuditDim d, std::vector<long long> lifts);
  static LiftVector zeros(QuditDim d);
  /// Lift vector with m_j = 1 and zeros elsewhere.
  static LiftVector unit(QuditDim d, int j);

  QuditDim dim() const { return d_; }
  const std::vector<long long>& values() const { return m_; }
  long long exponent(int n) const { return n + m_[static_cast<std::size_t>(n)] * d_.value(); }

 private:
  QuditDim d_;
  std::vector<long long> m_;
};

/// Columns n = 0..d-1 hold |n(base)>, the eigenvector with eigenvalue q^n,
/// with the first nonzero component made real positive.
/// Throws DomainError on degenerate spectra or eigenvalues off the q-lattice.
Operator power_eigenbasis(const Operator& base, QuditDim d, double tol = kDefaultTol);

/// Hermitian N(base, {m}) = sum_n |n(base)> (n + m_n d) <n(base)|.
Operator diag_generator(const Operator& base, const LiftVector& lifts);

/// q^(beta N(base, {m})) = exp(i 2 pi beta N / d).
Operator param_unitary(const Operator& base, const LiftVector& lifts, double beta);

/// Trace-orthogonality Gram residual max |Tr[(Z^j X^k)^dag Z^j' X^k'] - d delta delta|.
double weyl_gram_residual(QuditDim d);

/// If `op` is proportional to a single Weyl operator Z^j X^k, returns (j, k)
/// and the coefficient.
struct WeylLabel {
  int z_pow;
  int x_pow;
  Complex coefficient;
};
std::optional<WeylLabel> weyl_decompose(const Operator& op, QuditDim d, double tol = kDefaultTol);

}  // namespace qmbqc
