#include "qudit_mbqc/protocols.hpp"

#include <array>
#include <string>

namespace qmbqc {

namespace {

ByproductOp single(QuditDim d, long long z_pow, long long x_pow) {
  ByproductOp b(d, 1);
  b.set(0, z_pow, x_pow);
  return b;
}

Operator pauli(QuditDim d, long long z_pow, long long x_pow) {
  return weyl(d, d.mod(z_pow), d.mod(x_pow));
}

/// Measurement basis of G X^dag G^dag with G = diag(q^(-theta_a)).
Operator dressed_x_dagger_basis(QuditDim d, const std::vector<double>& theta) {
  Operator g = Operator::Zero(d.value(), d.value());
  for (int a = 0; a < d.value(); ++a) g(a, a) = d.q_real(-theta[static_cast<std::size_t>(a)]);
  return basis::eigenbasis(g * gen_x(d).adjoint() * g.adjoint(), d);
}

void check_lifts(QuditDim d, const LiftVector& lifts) {
  if (!(lifts.dim() == d)) throw DomainError("lift vector dimension does not match d");
}

}  // namespace

ByproductOp eigen_form_byproduct(const GateProtocol& protocol, const Outcomes& outcomes) {
  const auto lambdas = protocol.lambda_rule(outcomes);
  const auto& inputs = protocol.graph.inputs();
  ByproductOp out(protocol.d, protocol.n_logical());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const long long s = outcomes.at(inputs[i]);
    out.set(static_cast<int>(i), -static_cast<long long>(lambdas[i].x) - s, lambdas[i].z);
  }
  return out;
}

std::vector<double> solve_lift_exponents(QuditDim d, std::span<const double> target_exponents) {
  const int n = d.value();
  if (target_exponents.size() != static_cast<std::size_t>(n)) {
    throw DomainError("solve_lift_exponents: need one target exponent per eigenvector");
  }
  // Row k, column j: exponent of eigenvector k in N(X, e_j), i.e. k + d delta_jk.
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd rhs(n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) m(k, j) = k + (j == k ? n : 0);
    rhs(k) = target_exponents[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd x = m.partialPivLu().solve(rhs);
  return {x.data(), x.data() + n};
}

std::vector<double> conjugated_rotation_exponents(const LiftVector& lifts, double alpha, int c) {
  const QuditDim d = lifts.dim();
  std::vector<double> target(static_cast<std::size_t>(d.value()));
  for (int k = 0; k < d.value(); ++k) {
    target[static_cast<std::size_t>(k)] = alpha * static_cast<double>(lifts.exponent(d.mod(k + c)));
  }
  return solve_lift_exponents(d, target);
}

GateProtocol protocol_rot_x(QuditDim d, double alpha, const LiftVector& lifts) {
  check_lifts(d, lifts);
  const Operator target = param_unitary(gen_x(d), lifts, alpha);
  // Site 4 is measured in the eigenbasis of (Z^-c X^alpha Z^c)-dressed X^dag,
  // c = s1 + s3.
  auto theta_for = [d, lifts, alpha](int c) {
    std::vector<double> theta(static_cast<std::size_t>(d.value()));
    for (int k = 0; k < d.value(); ++k) {
      theta[static_cast<std::size_t>(k)] = alpha * static_cast<double>(lifts.exponent(d.mod(k + c)));
    }
    return theta;
  };
  Stage first{{SiteMeasurement::fixed(1, basis::fourier(d)), SiteMeasurement::fixed(2, basis::fourier(d)),
               SiteMeasurement::fixed(3, basis::fourier_dagger(d))}};
  Stage second{{SiteMeasurement::adaptive(4, {1, 3}, [d, theta_for](const Outcomes& o) {
    return dressed_x_dagger_basis(d, theta_for(o.at(1) + o.at(3)));
  })}};
  const ClusterGraph graph = gate_graph(GateGraphKind::Rot5, d.value());
  MeasurementPattern pattern(5, {first, second});
  return GateProtocol{
      "rot_x",
      d,
      graph,
      std::move(pattern),
      target,
      [](const Outcomes& o) { return std::vector<LambdaPair>{{o.at(3), o.at(2) + o.at(4)}}; },
      [d, target](const Outcomes& o) {
        const int c = o.at(1) + o.at(3);
        return Operator(pauli(d, -c, 0) * target * pauli(d, c, 0));
      },
      [d](const Outcomes& o) { return single(d, -o.at(1) - o.at(3), o.at(2) + o.at(4)); }};
}

GateProtocol protocol_rot_z(QuditDim d, double alpha, const LiftVector& lifts) {
  check_lifts(d, lifts);
  const Operator target = param_unitary(gen_z(d), lifts, alpha);
  auto basis_for = [d, lifts, alpha](int s2, int s4) {
    const int shift = s2 + s4;
    std::vector<double> theta(static_cast<std::size_t>(d.value()));
    for (int a = 0; a < d.value(); ++a) {
      const int k = d.mod(-static_cast<long long>(s4) - a);
      theta[static_cast<std::size_t>(a)] = alpha * static_cast<double>(lifts.exponent(d.mod(k + shift)));
    }
    return dressed_x_dagger_basis(d, theta);
  };
  Stage first{{SiteMeasurement::fixed(1, basis::fourier(d)), SiteMeasurement::fixed(2, basis::fourier(d)),
               SiteMeasurement::fixed(4, basis::fourier_dagger(d))}};
  Stage second{{SiteMeasurement::adaptive(3, {2, 4}, [basis_for](const Outcomes& o) {
    return basis_for(o.at(2), o.at(4));
  })}};
  const ClusterGraph graph = gate_graph(GateGraphKind::Rot5, d.value());
  MeasurementPattern pattern(5, {first, second});
  return GateProtocol{
      "rot_z",
      d,
      graph,
      std::move(pattern),
      target,
      [](const Outcomes& o) { return std::vector<LambdaPair>{{o.at(3), o.at(2) + o.at(4)}}; },
      [d, target](const Outcomes& o) {
        const int shift = o.at(2) + o.at(4);
        return Operator(pauli(d, 0, shift) * target * pauli(d, 0, -shift));
      },
      [d](const Outcomes& o) { return single(d, -o.at(1) - o.at(3), o.at(2) + o.at(4)); }};
}

GateProtocol protocol_clifford(QuditDim d, CliffordKind kind, int n) {
  if (kind == CliffordKind::V) {
    GateProtocol p = protocol_clifford(d, CliffordKind::U1n, 1);
    p.name = "v";
    return p;
  }
  const Operator target = basic_clifford(d, kind, n);
  auto fixed_target = [target](const Outcomes&) { return target; };
  const Operator x = basis::fourier(d);
  const Operator x_dag = basis::fourier_dagger(d);
  switch (kind) {
    case CliffordKind::U1n: {
      Stage stage{{SiteMeasurement::fixed(1, x), SiteMeasurement::fixed(2, x), SiteMeasurement::fixed(3, x_dag),
                   SiteMeasurement::fixed(4, basis::eigenbasis(zbar(d, n, 1).adjoint(), d))}};
      return GateProtocol{
          "u1n",
          d,
          gate_graph(GateGraphKind::Rot5, d.value()),
          MeasurementPattern(5, {stage}),
          target,
          [](const Outcomes& o) { return std::vector<LambdaPair>{{o.at(3), o.at(2) + o.at(4)}}; },
          fixed_target,
          [d, n](const Outcomes& o) {
            const long long c = o.at(1) + o.at(3);
            return single(d, -c, o.at(2) + o.at(4) - n * c);
          }};
    }
    case CliffordKind::W: {
      Stage stage{{SiteMeasurement::fixed(1, x), SiteMeasurement::fixed(2, x),
                   SiteMeasurement::fixed(3, basis::eigenbasis(zbar(d, 1, -1), d)),
                   SiteMeasurement::fixed(4, x_dag)}};
      return GateProtocol{
          "w",
          d,
          gate_graph(GateGraphKind::Rot5, d.value()),
          MeasurementPattern(5, {stage}),
          target,
          [](const Outcomes& o) { return std::vector<LambdaPair>{{o.at(3) + o.at(4), o.at(2) + o.at(4)}}; },
          fixed_target,
          [d](const Outcomes& o) { return single(d, o.at(2) - o.at(1) - o.at(3), o.at(2) + o.at(4)); }};
    }
    case CliffordKind::Un1: {
      Stage stage{{SiteMeasurement::fixed(1, x), SiteMeasurement::fixed(2, x), SiteMeasurement::fixed(3, x_dag),
                   SiteMeasurement::fixed(4, basis::eigenbasis(zbar(d, n, -1), d)),
                   SiteMeasurement::fixed(5, x)}};
      return GateProtocol{
          "un1",
          d,
          gate_graph(GateGraphKind::Un1Six, d.value()),
          MeasurementPattern(6, {stage}),
          target,
          [n](const Outcomes& o) {
            return std::vector<LambdaPair>{{o.at(3) + o.at(5), o.at(2) + o.at(4) - n * o.at(5)}};
          },
          fixed_target,
          [d, n](const Outcomes& o) {
            const long long c = o.at(1) + o.at(3);
            return single(d, -n * c - o.at(2) - o.at(4), -c - o.at(5));
          }};
    }
    case CliffordKind::V:
      break;
  }
  throw DomainError("unsupported Clifford kind");
}

Operator t_gate(QuditDim d) {
  const Operator id = Operator::Identity(d.value(), d.value());
  const Operator z_dag = gen_z(d).adjoint();
  const Operator x_dag = gen_x(d).adjoint();
  const std::array<Operator, 2> z_images{kron(z_dag, x_dag), kron(x_dag, z_dag)};
  const std::array<Operator, 2> x_images{kron(x_dag, id), kron(id, x_dag)};
  return clifford_from_action(d, 2, z_images, x_images);
}

ByproductOp t_moved_byproduct(QuditDim d, int s1, int s2, int s3, int s4) {
  return ByproductOp::from_powers(d, {{s1, s2 - s3}, {s2, s1 - s4}},
                                  d.q_pow(static_cast<long long>(s1) * s2));
}

GateProtocol protocol_t(QuditDim d) {
  const Operator target = t_gate(d);
  const Operator x = basis::fourier(d);
  Stage stage{{SiteMeasurement::fixed(1, x), SiteMeasurement::fixed(2, x), SiteMeasurement::fixed(3, x),
               SiteMeasurement::fixed(4, x)}};
  return GateProtocol{
      "t",
      d,
      gate_graph(GateGraphKind::TSix, d.value()),
      MeasurementPattern(6, {stage}),
      target,
      [](const Outcomes& o) { return std::vector<LambdaPair>{{0, o.at(3)}, {0, o.at(4)}}; },
      [target](const Outcomes&) { return target; },
      [d](const Outcomes& o) { return t_moved_byproduct(d, o.at(1), o.at(2), o.at(3), o.at(4)); }};
}

}  // namespace qmbqc
