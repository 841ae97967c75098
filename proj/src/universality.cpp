#include <cmath>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "qudit_mbqc/protocols.hpp"

namespace qmbqc {

Operator random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Operator g(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Operator> qr(g);
  Operator q = qr.householderQ();
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

namespace {

struct Factor {
  RotationFactor spec;
  Operator basis;                 // eigenvectors of Zbar
  std::vector<double> exponents;  // lifted exponents e_n
};

Operator factor_matrix(QuditDim d, const Factor& f, double beta) {
  Amplitudes phases(d.value());
  for (int k = 0; k < d.value(); ++k) phases[k] = d.q_real(beta * f.exponents[static_cast<std::size_t>(k)]);
  return f.basis * phases.asDiagonal() * f.basis.adjoint();
}

Operator product_of(QuditDim d, const std::vector<Factor>& factors, const Eigen::VectorXd& betas) {
  Operator out = Operator::Identity(d.value(), d.value());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    out = out * factor_matrix(d, factors[i], betas[static_cast<Eigen::Index>(i)]);
  }
  return out;
}

struct Residual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  QuditDim d;
  const std::vector<Factor>* factors;
  const Operator* target;

  int inputs() const { return static_cast<int>(factors->size()); }
  int values() const { return 2 * d.value() * d.value(); }

  int operator()(const Eigen::VectorXd& betas, Eigen::VectorXd& out) const {
    const Operator u = product_of(d, *factors, betas);
    const Complex overlap = (target->adjoint() * u).trace();
    const Complex phase = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Complex(1.0);
    const Operator diff = phase * u - *target;
    const int n = d.value();
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        out[2 * (r * n + c)] = diff(r, c).real();
        out[2 * (r * n + c) + 1] = diff(r, c).imag();
      }
    }
    return 0;
  }
};

double fidelity_of(QuditDim d, const Operator& target, const Operator& u) {
  return std::abs((target.adjoint() * u).trace()) / d.value();
}

}  // namespace

Approximation approximate_unitary(QuditDim d, const Operator& target, std::uint64_t seed, int layers, int restarts) {
  if (target.rows() != d.value() || target.cols() != d.value() || !is_unitary(target, 1e-9)) {
    throw DomainError("approximate_unitary: target must be a d x d unitary");
  }
  if (layers < 1 || restarts < 1) throw DomainError("approximate_unitary: layers and restarts must be positive");
  std::vector<std::pair<int, int>> bases{{1, 0}, {0, 1}};
  for (int k = 1; k < d.value(); ++k) bases.emplace_back(1, k);
  std::vector<Factor> factors;
  for (int layer = 0; layer < layers; ++layer) {
    for (auto [m, n] : bases) {
      const Operator base = zbar(d, m, n);
      const Operator eig = power_eigenbasis(base, d);
      for (int j = 1; j < d.value(); ++j) {
        LiftVector lifts = LiftVector::unit(d, j);
        std::vector<double> e;
        for (int k = 0; k < d.value(); ++k) e.push_back(static_cast<double>(lifts.exponent(k)));
        factors.push_back({{m, n, lifts, 0.0}, eig, std::move(e)});
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> start(-1.0, 1.0);
  Residual functor{d, &factors, &target};
  Eigen::NumericalDiff<Residual> numeric(functor);
  Eigen::VectorXd best_betas = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(factors.size()));
  double best = -1.0;
  for (int attempt = 0; attempt < restarts && best < 1.0 - 1e-12; ++attempt) {
    Eigen::VectorXd betas(static_cast<Eigen::Index>(factors.size()));
    for (Eigen::Index i = 0; i < betas.size(); ++i) betas[i] = start(rng);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual>, double> lm(numeric);
    lm.parameters.maxfev = 4000;
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.minimize(betas);
    const double f = fidelity_of(d, target, product_of(d, factors, betas));
    if (f > best) {
      best = f;
      best_betas = betas;
    }
  }

  Approximation out{{}, product_of(d, factors, best_betas), best};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    RotationFactor rf = factors[i].spec;
    rf.beta = best_betas[static_cast<Eigen::Index>(i)];
    out.factors.push_back(std::move(rf));
  }
  return out;
}

}  // namespace qmbqc
