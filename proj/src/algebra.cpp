#include "qudit_mbqc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qmbqc {

namespace {

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DomainError(std::string(what) + ": expected a nonempty square matrix");
  }
}

void fix_phase(Eigen::Ref<Amplitudes> v, double tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      v[i] = std::abs(v[i]);
      return;
    }
  }
}

}  // namespace

Operator dagger(const Operator& a) { return a.adjoint(); }

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator matrix_power(const Operator& a, long long k) {
  require_square(a, "matrix_power");
  Operator base = k < 0 ? Operator(a.inverse()) : a;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Operator result = Operator::Identity(a.rows(), a.cols());
  while (e > 0) {
    if (e & 1ULL) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

double max_abs(const Operator& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_unitary(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a * a.adjoint() - Operator::Identity(a.rows(), a.cols())) <= tol;
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

std::optional<Complex> phase_between(const Operator& a, const Operator& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  Complex overlap = (a.adjoint() * b).trace();
  double na = a.squaredNorm();
  if (na == 0.0 || std::abs(overlap) == 0.0) return std::nullopt;
  Complex c = overlap / std::abs(overlap);
  if (max_abs(b - c * a) > tol) return std::nullopt;
  return c;
}

Operator gen_z(QuditDim d) {
  const int n = d.value();
  Operator z = Operator::Zero(n, n);
  for (int k = 0; k < n; ++k) z(k, k) = d.q_pow(k);
  return z;
}

Operator gen_x(QuditDim d) {
  const int n = d.value();
  Operator x = Operator::Zero(n, n);
  // X|k> = |k-1>: column k has its one in row k-1.
  for (int k = 0; k < n; ++k) x(d.mod(k - 1), k) = 1.0;
  return x;
}

StateVector x_eigenvector(QuditDim d, int j) {
  const int n = d.value();
  if (j < 0 || j >= n) {
    throw DomainError("x_eigenvector: j=" + std::to_string(j) + " outside 0.." + std::to_string(n - 1));
  }
  Amplitudes v(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) v[k] = scale * d.q_pow(static_cast<long long>(j) * k);
  return StateVector(n, 1, std::move(v));
}

Operator weyl(QuditDim d, int j, int k) {
  const int n = d.value();
  if (j < 0 || j >= n || k < 0 || k >= n) {
    throw DomainError("weyl: powers must lie in 0..d-1");
  }
  // (Z^j X^k)|t> = q^(j (t-k)) |t-k>
  Operator w = Operator::Zero(n, n);
  for (int t = 0; t < n; ++t) {
    const int row = d.mod(t - k);
    w(row, t) = d.q_pow(static_cast<long long>(j) * row);
  }
  return w;
}

Operator zbar(QuditDim d, int m, int n) {
  if (std::gcd(std::abs(m), std::abs(n)) != 1) {
    throw DomainError("zbar: gcd(" + std::to_string(m) + "," + std::to_string(n) + ") != 1");
  }
  const int dv = d.value();
  const double angle = -kPi * (dv - 1) * static_cast<double>(m) * static_cast<double>(n) / dv;
  return std::polar(1.0, angle) * weyl(d, d.mod(m), d.mod(n));
}

LiftVector::LiftVector(QuditDim d, std::vector<long long> lifts) : d_(d), m_(std::move(lifts)) {
  if (m_.size() != static_cast<std::size_t>(d.value())) {
    throw DomainError("lift vector must have length d=" + std::to_string(d.value()) + ", got " +
                      std::to_string(m_.size()));
  }
}

LiftVector LiftVector::zeros(QuditDim d) {
  return LiftVector(d, std::vector<long long>(static_cast<std::size_t>(d.value()), 0));
}

LiftVector LiftVector::unit(QuditDim d, int j) {
  if (j < 0 || j >= d.value()) throw DomainError("LiftVector::unit: index out of range");
  std::vector<long long> m(static_cast<std::size_t>(d.value()), 0);
  m[static_cast<std::size_t>(j)] = 1;
  return LiftVector(d, std::move(m));
}

Operator power_eigenbasis(const Operator& base, QuditDim d, double tol) {
  require_square(base, "power_eigenbasis");
  const int n = d.value();
  if (base.rows() != n) throw DomainError("power_eigenbasis: operator is not d x d");
  if (!is_unitary(base, tol)) throw DomainError("power_eigenbasis: operator is not unitary");

  Eigen::ComplexEigenSolver<Operator> solver(base);
  if (solver.info() != Eigen::Success) throw DomainError("power_eigenbasis: eigensolver failed");

  Operator basis = Operator::Zero(n, n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  const double lattice_tol = std::max(1e3 * tol, 1e-8);
  for (int i = 0; i < n; ++i) {
    const Complex lambda = solver.eigenvalues()[i];
    const double turns = std::arg(lambda) * n / (2.0 * kPi);
    const long long label = std::llround(turns);
    if (std::abs(turns - static_cast<double>(label)) > lattice_tol ||
        std::abs(std::abs(lambda) - 1.0) > lattice_tol) {
      throw DomainError("power_eigenbasis: eigenvalue is not a power of q_d");
    }
    const int s = d.mod(label);
    if (seen[static_cast<std::size_t>(s)]) {
      throw DomainError("power_eigenbasis: degenerate spectrum");
    }
    seen[static_cast<std::size_t>(s)] = true;
    Amplitudes v = solver.eigenvectors().col(i);
    v.normalize();
    fix_phase(v, 1e-9);
    basis.col(s) = v;
  }
  return basis;
}

Operator diag_generator(const Operator& base, const LiftVector& lifts) {
  const QuditDim d = lifts.dim();
  const Operator basis = power_eigenbasis(base, d);
  Eigen::VectorXd exps(d.value());
  for (int n = 0; n < d.value(); ++n) exps[n] = static_cast<double>(lifts.exponent(n));
  return basis * exps.cast<Complex>().asDiagonal() * basis.adjoint();
}

Operator param_unitary(const Operator& base, const LiftVector& lifts, double beta) {
  const QuditDim d = lifts.dim();
  const Operator basis = power_eigenbasis(base, d);
  Amplitudes phases(d.value());
  for (int n = 0; n < d.value(); ++n) {
    phases[n] = d.q_real(beta * static_cast<double>(lifts.exponent(n)));
  }
  return basis * phases.asDiagonal() * basis.adjoint();
}

double weyl_gram_residual(QuditDim d) {
  const int n = d.value();
  std::vector<Operator> ops;
  ops.reserve(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) ops.push_back(weyl(d, j, k));
  double worst = 0.0;
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = 0; b < ops.size(); ++b) {
      const Complex g = (ops[a].adjoint() * ops[b]).trace();
      const double expected = a == b ? static_cast<double>(n) : 0.0;
      worst = std::max(worst, std::abs(g - expected));
    }
  }
  return worst;
}

std::optional<WeylLabel> weyl_decompose(const Operator& op, QuditDim d, double tol) {
  const int n = d.value();
  if (op.rows() != n || op.cols() != n) return std::nullopt;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Operator w = weyl(d, j, k);
      const Complex c = (w.adjoint() * op).trace() / static_cast<double>(n);
      if (std::abs(c) < 0.5) continue;
      if (max_abs(op - c * w) <= tol) return WeylLabel{j, k, c};
    }
  }
  return std::nullopt;
}

}  // namespace qmbqc
