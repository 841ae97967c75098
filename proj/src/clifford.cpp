#include "qudit_mbqc/clifford.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace qmbqc {

namespace {

int gcd_abs(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

void check_algebra(QuditDim d, int n_sites, std::span<const Operator> zs,
                   std::span<const Operator> xs, double tol) {
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(d.value(), n_sites));
  if (zs.size() != static_cast<std::size_t>(n_sites) || xs.size() != zs.size()) {
    throw DomainError("clifford_from_action: need one Z and one X image per site");
  }
  const Operator id = Operator::Identity(dim, dim);
  auto check_gen = [&](const Operator& g, const char* which, std::size_t i) {
    if (g.rows() != dim || g.cols() != dim) {
      throw DomainError(std::string("clifford_from_action: ") + which + " image " +
                        std::to_string(i + 1) + " has the wrong dimension");
    }
    if (!is_unitary(g, tol)) {
      throw DomainError(std::string("clifford_from_action: ") + which + " image " +
                        std::to_string(i + 1) + " is not unitary");
    }
    if (max_abs(matrix_power(g, d.value()) - id) > tol * d.value()) {
      throw DomainError(std::string("clifford_from_action: ") + which + " image " +
                        std::to_string(i + 1) + " does not have order d");
    }
  };
  for (std::size_t i = 0; i < zs.size(); ++i) {
    check_gen(zs[i], "Z", i);
    check_gen(xs[i], "X", i);
  }
  const double rel_tol = 10 * tol;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (i < j) {
        if (max_abs(zs[i] * zs[j] - zs[j] * zs[i]) > rel_tol ||
            max_abs(xs[i] * xs[j] - xs[j] * xs[i]) > rel_tol) {
          throw DomainError("clifford_from_action: images of distinct sites do not commute");
        }
      }
      // X_i Z_j = q^(delta_ij) Z_j X_i
      const Complex phase = i == j ? d.q_pow(1) : Complex(1.0);
      if (max_abs(xs[i] * zs[j] - phase * zs[j] * xs[i]) > rel_tol) {
        throw DomainError("clifford_from_action: images violate XZ = qZX");
      }
    }
  }
}

using Label = std::pair<int, int>;  // (a, b) of Z^a X^b

Label act(QuditDim d, const CliffordStep& step, Label in) {
  auto [a, b] = in;
  switch (step.kind) {
    case CliffordKind::V:
      return {a, d.mod(a + b)};
    case CliffordKind::W:
      return {d.mod(a + b), b};
    case CliffordKind::U1n:
      return {a, d.mod(static_cast<long long>(step.power) * a + b)};
    case CliffordKind::Un1:
      return {d.mod(static_cast<long long>(step.power) * a - b), a};
  }
  return in;
}

std::vector<CliffordStep> bfs_word(QuditDim d, Label target) {
  const int n = d.value();
  std::vector<int> parent(static_cast<std::size_t>(n * n), -1);
  std::vector<int> via(static_cast<std::size_t>(n * n), -1);
  auto key = [n](Label l) { return l.first * n + l.second; };
  const std::array<CliffordStep, 2> gens{CliffordStep{CliffordKind::V, 1, 1},
                                         CliffordStep{CliffordKind::W, 1, 1}};
  // The word is built left to right as g_1 g_2 ... with g_k applied after the
  // previously found part, so a new generator is prepended to the word and
  // acts last on the label.
  std::queue<Label> frontier;
  const Label start{1, 0};
  parent[static_cast<std::size_t>(key(start))] = key(start);
  frontier.push(start);
  while (!frontier.empty()) {
    const Label cur = frontier.front();
    frontier.pop();
    if (cur == target) break;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const Label next = act(d, gens[g], cur);
      auto& p = parent[static_cast<std::size_t>(key(next))];
      if (p >= 0) continue;
      p = key(cur);
      via[static_cast<std::size_t>(key(next))] = static_cast<int>(g);
      frontier.push(next);
    }
  }
  if (parent[static_cast<std::size_t>(key(target))] < 0) {
    throw VerificationError("factor_clifford: target label unreachable");
  }
  // Walk back: the generator leading into `target` is the outermost factor.
  std::vector<CliffordStep> word;
  int k = key(target);
  while (k != key(start)) {
    const int g = via[static_cast<std::size_t>(k)];
    if (!word.empty() && word.back().kind == gens[static_cast<std::size_t>(g)].kind) {
      ++word.back().repeat;
    } else {
      word.push_back(gens[static_cast<std::size_t>(g)]);
    }
    k = parent[static_cast<std::size_t>(k)];
  }
  return word;
}

}  // namespace

void CliffordSpec::validate(QuditDim d) const {
  if (gcd_abs(m1, n1) != 1 || gcd_abs(m2, n2) != 1) {
    throw DomainError("CliffordSpec: (m1,n1) and (m2,n2) must each be coprime");
  }
  if (d.mod(static_cast<long long>(m1) * n2 - static_cast<long long>(m2) * n1) != 1) {
    throw DomainError("CliffordSpec: m1 n2 - m2 n1 must be 1 mod d");
  }
}

Operator embed(const Operator& op, int site, int n_sites, QuditDim d) {
  if (site < 1 || site > n_sites) throw DomainError("embed: site out of range");
  const Operator id = Operator::Identity(d.value(), d.value());
  Operator out = Operator::Identity(1, 1);
  for (int s = 1; s <= n_sites; ++s) out = kron(out, s == site ? op : id);
  return out;
}

Operator clifford_from_action(QuditDim d, int n_sites, std::span<const Operator> z_images,
                              std::span<const Operator> x_images, double tol) {
  if (n_sites < 1) throw DomainError("clifford_from_action: need at least one site");
  check_algebra(d, n_sites, z_images, x_images, tol);
  const auto dim = static_cast<Eigen::Index>(hilbert_dim(d.value(), n_sites));

  // Joint +1 eigenvector of the Z images: it is U|0...0>.
  Operator projector = Operator::Identity(dim, dim);
  for (const Operator& z : z_images) {
    Operator avg = Operator::Zero(dim, dim);
    Operator power = Operator::Identity(dim, dim);
    for (int k = 0; k < d.value(); ++k) {
      avg += power;
      power = power * z;
    }
    projector = projector * (avg / static_cast<double>(d.value()));
  }
  if (std::abs(projector.trace() - Complex(1.0)) > 1e-6) {
    throw VerificationError("clifford_from_action: joint +1 eigenspace of the Z images is not one-dimensional");
  }
  Eigen::Index best = 0;
  projector.colwise().norm().maxCoeff(&best);
  Amplitudes vacuum = projector.col(best);
  vacuum.normalize();

  // U|t> = prod_i (X_i')^(dag t_i) U|0>.
  std::vector<std::vector<Operator>> raise(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) {
    auto& powers = raise[static_cast<std::size_t>(i)];
    powers.push_back(Operator::Identity(dim, dim));
    const Operator up = x_images[static_cast<std::size_t>(i)].adjoint();
    for (int k = 1; k < d.value(); ++k) powers.push_back(powers.back() * up);
  }
  Operator u(dim, dim);
  std::vector<int> digits(static_cast<std::size_t>(n_sites), 0);
  for (Eigen::Index col = 0; col < dim; ++col) {
    std::size_t rem = static_cast<std::size_t>(col);
    for (int i = n_sites - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(d.value()));
      rem /= static_cast<std::size_t>(d.value());
    }
    Amplitudes v = vacuum;
    for (int i = 0; i < n_sites; ++i) {
      v = raise[static_cast<std::size_t>(i)][static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])] * v;
    }
    u.col(col) = v;
  }

  for (Eigen::Index r = 0; r < dim; ++r) {
    if (std::abs(u(r, 0)) > 1e-9) {
      u *= std::conj(u(r, 0)) / std::abs(u(r, 0));
      break;
    }
  }

  double residual = max_abs(u * u.adjoint() - Operator::Identity(dim, dim));
  for (int i = 0; i < n_sites; ++i) {
    const Operator zi = embed(gen_z(d), i + 1, n_sites, d);
    const Operator xi = embed(gen_x(d), i + 1, n_sites, d);
    residual = std::max(residual, max_abs(u * zi * u.adjoint() - z_images[static_cast<std::size_t>(i)]));
    residual = std::max(residual, max_abs(u * xi * u.adjoint() - x_images[static_cast<std::size_t>(i)]));
  }
  if (residual > tol) {
    throw VerificationError("clifford_from_action: solve residual " + std::to_string(residual) +
                            " above tolerance");
  }
  return u;
}

Operator clifford_from_spec(QuditDim d, const CliffordSpec& spec, double tol) {
  spec.validate(d);
  const std::array<Operator, 1> z{zbar(d, spec.m1, spec.n1)};
  const std::array<Operator, 1> x{zbar(d, spec.m2, spec.n2)};
  return clifford_from_action(d, 1, z, x, tol);
}

std::string to_string(CliffordKind kind) {
  switch (kind) {
    case CliffordKind::U1n: return "u1n";
    case CliffordKind::Un1: return "un1";
    case CliffordKind::V: return "v";
    case CliffordKind::W: return "w";
  }
  return "?";
}

CliffordKind clifford_kind_from_string(const std::string& name) {
  if (name == "u1n") return CliffordKind::U1n;
  if (name == "un1") return CliffordKind::Un1;
  if (name == "v") return CliffordKind::V;
  if (name == "w") return CliffordKind::W;
  throw DomainError("unknown Clifford kind '" + name + "' (expected u1n, un1, v, w)");
}

Operator basic_clifford(QuditDim d, CliffordKind kind, int n) {
  Operator z_image;
  Operator x_image;
  switch (kind) {
    case CliffordKind::U1n:
      z_image = zbar(d, 1, n);
      x_image = gen_x(d);
      break;
    case CliffordKind::Un1:
      z_image = zbar(d, n, 1);
      x_image = gen_z(d).adjoint();
      break;
    case CliffordKind::V:
      z_image = zbar(d, 1, 1);
      x_image = gen_x(d);
      break;
    case CliffordKind::W:
      z_image = gen_z(d);
      x_image = zbar(d, 1, 1);
      break;
  }
  const std::array<Operator, 1> z{z_image};
  const std::array<Operator, 1> x{x_image};
  return clifford_from_action(d, 1, z, x);
}

Operator compose_word(QuditDim d, std::span<const CliffordStep> word) {
  Operator product = Operator::Identity(d.value(), d.value());
  for (const CliffordStep& step : word) {
    const Operator g = basic_clifford(d, step.kind, step.power);
    for (int r = 0; r < step.repeat; ++r) product = product * g;
  }
  return product;
}

double factor_residual(QuditDim d, int m, int n, std::span<const CliffordStep> word) {
  const Operator p = compose_word(d, word);
  const Operator image = p * gen_z(d) * p.adjoint();
  const Operator target = zbar(d, m, n);
  const Complex overlap = (target.adjoint() * image).trace();
  if (std::abs(overlap) < 1e-12) return max_abs(image - target) + 1.0;
  const Complex c = overlap / std::abs(overlap);
  return max_abs(image - c * target);
}

std::vector<CliffordStep> factor_clifford(QuditDim d, int m, int n, double tol) {
  if (gcd_abs(m, n) != 1) {
    throw DomainError("factor_clifford: gcd(" + std::to_string(m) + "," + std::to_string(n) + ") != 1");
  }
  const int mr = d.mod(m);
  const int nr = d.mod(n);
  std::vector<CliffordStep> word;
  if (mr == 1) {
    word = {{CliffordKind::U1n, nr, 1}};
  } else if (nr == 1) {
    word = {{CliffordKind::Un1, mr, 1}};
  } else {
    // W^i U^{1 n}: (1, n) -> (1 + i n, n).  V^i U^{m 1}: (m, 1) -> (m, 1 + i m).
    for (int i = 1; i < d.value() && word.empty(); ++i) {
      if (d.mod(static_cast<long long>(i) * nr) == d.mod(mr - 1)) {
        word = {{CliffordKind::W, 1, i}, {CliffordKind::U1n, nr, 1}};
      }
    }
    for (int i = 1; i < d.value() && word.empty(); ++i) {
      if (d.mod(static_cast<long long>(i) * mr) == d.mod(nr - 1)) {
        word = {{CliffordKind::V, 1, i}, {CliffordKind::Un1, mr, 1}};
      }
    }
    if (word.empty()) word = bfs_word(d, {mr, nr});
  }
  const double residual = factor_residual(d, m, n, word);
  if (residual > tol) {
    throw VerificationError("factor_clifford: word misses Zbar(" + std::to_string(m) + "," +
                            std::to_string(n) + ") by " + std::to_string(residual));
  }
  return word;
}

}  // namespace qmbqc
