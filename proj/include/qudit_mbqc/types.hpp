#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmbqc {

using Complex = std::complex<double>;

/// Dense complex matrix. Used for single-site operators (d x d), multi-site
/// operators on small registers, and reduced density matrices.
using Operator = Eigen::MatrixXcd;
using Amplitudes = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Default tolerance for unitarity and eigen-equation checks.
inline constexpr double kDefaultTol = 1e-10;
/// Default tolerance for checks on composed protocols.
inline constexpr double kProtocolTol = 1e-9;
/// Default limit on the number of enumerated measurement branches.
inline constexpr std::size_t kDefaultBranchCap = 1'000'000;

/// Precondition or domain violation in an argument (bad dimension, bad site,
/// digit out of range, gcd condition, malformed graph...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would visit more branches than the configured cap.
class BranchCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction could not be certified (e.g. a solve residual above
/// tolerance, or a factorization that does not reproduce its target).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension of a single qudit together with its root of unity
/// q_d = exp(2 pi i / d).
class QuditDim {
 public:
  explicit QuditDim(int d) : d_(d) {
    if (d < 2) {
      throw DomainError("qudit dimension must be >= 2, got " + std::to_string(d));
    }
  }

  int value() const { return d_; }

  /// q_d^k for integer k; k is reduced mod d first so the result is the same
  /// bit pattern for every k in one residue class.
  Complex q_pow(long long k) const {
    long long r = k % d_;
    if (r < 0) r += d_;
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / d_);
  }

  /// q_d^x for real x, i.e. exp(2 pi i x / d).
  Complex q_real(double x) const { return std::polar(1.0, 2.0 * kPi * x / d_); }

  /// Reduce an integer into 0..d-1.
  int mod(long long k) const {
    long long r = k % d_;
    return static_cast<int>(r < 0 ? r + d_ : r);
  }

  friend bool operator==(QuditDim a, QuditDim b) { return a.d_ == b.d_; }

 private:
  int d_;
};

}  // namespace qmbqc
