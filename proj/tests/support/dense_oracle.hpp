#pragma once

// Test-only reference implementations. Everything here is built from the
// definitions with full d^n x d^n matrices and plain loops, sharing no code
// with the library beyond the Eigen types.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dense {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline C root(int d, double k) {
  const double a = 2.0 * 3.14159265358979323846 * k / d;
  return {std::cos(a), std::sin(a)};
}

inline Mat clock(int d) {
  Mat z = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = root(d, k);
  return z;
}

// X|k> = |k-1 mod d>
inline Mat shift(int d) {
  Mat x = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) x((k + d - 1) % d, k) = 1.0;
  return x;
}

inline Mat power(const Mat& a, int k) {
  Mat out = Mat::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

/// op on `site` (1-based, site 1 most significant) of n sites.
inline Mat on_site(const Mat& op, int site, int n, int d) {
  Mat out = Mat::Identity(1, 1);
  for (int s = 1; s <= n; ++s) out = kron(out, s == site ? op : Mat(Mat::Identity(d, d)));
  return out;
}

inline int digit(std::size_t index, int site, int n, int d) {
  for (int s = n; s > site; --s) index /= static_cast<std::size_t>(d);
  return static_cast<int>(index % static_cast<std::size_t>(d));
}

inline std::size_t dim(int d, int n) {
  std::size_t s = 1;
  for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(d);
  return s;
}

/// Graph state from the edge-product definition, amplitude by amplitude.
inline Vec cluster(int d, int n, const std::vector<std::pair<int, int>>& edges) {
  const std::size_t size = dim(d, n);
  Vec v(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) {
    C amp = 1.0 / std::sqrt(static_cast<double>(size));
    for (auto [a, b] : edges) amp *= root(d, digit(i, a, n, d) * digit(i, b, n, d));
    v[static_cast<Eigen::Index>(i)] = amp;
  }
  return v;
}

/// |x(j)> = d^(-1/2) sum_k q^(jk) |k>
inline Vec x_state(int d, int j) {
  Vec v(d);
  for (int k = 0; k < d; ++k) v[k] = root(d, static_cast<double>(j) * k) / std::sqrt(static_cast<double>(d));
  return v;
}

/// Full projector |v><v| on one site.
inline Mat site_projector(const Vec& v, int site, int n, int d) {
  return on_site(v * v.adjoint(), site, n, d);
}

/// Reduced density matrix on `keep` (in the given order) by explicit sums.
inline Mat partial_trace(const Vec& psi, int n, int d, const std::vector<int>& keep) {
  const std::size_t k_dim = dim(d, static_cast<int>(keep.size()));
  Mat rho = Mat::Zero(static_cast<Eigen::Index>(k_dim), static_cast<Eigen::Index>(k_dim));
  const std::size_t size = dim(d, n);
  auto keep_index = [&](std::size_t i) {
    std::size_t r = 0;
    for (int s : keep) r = r * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit(i, s, n, d));
    return r;
  };
  auto same_rest = [&](std::size_t i, std::size_t j) {
    for (int s = 1; s <= n; ++s) {
      bool kept = false;
      for (int k : keep) kept = kept || k == s;
      if (!kept && digit(i, s, n, d) != digit(j, s, n, d)) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (!same_rest(i, j)) continue;
      rho(static_cast<Eigen::Index>(keep_index(i)), static_cast<Eigen::Index>(keep_index(j))) +=
          psi[static_cast<Eigen::Index>(i)] * std::conj(psi[static_cast<Eigen::Index>(j)]);
    }
  }
  return rho;
}

inline double fidelity(const Vec& a, const Vec& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

inline double max_abs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace dense
