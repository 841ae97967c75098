#include <gtest/gtest.h>

#include <array>
#include <random>

#include "qudit_mbqc/algebra.hpp"
#include "qudit_mbqc/clifford.hpp"
#include "qudit_mbqc/state.hpp"
#include "support/dense_oracle.hpp"

namespace qmbqc {
namespace {

TEST(State, BasisKetIndexing) {
  // site 1 is the most significant digit
  const StateVector ket = basis_ket(3, 3, {1, 0, 2});
  EXPECT_EQ(ket.size(), 27u);
  EXPECT_EQ(ket[11], Complex(1.0));
  EXPECT_DOUBLE_EQ(ket.norm(), 1.0);
  EXPECT_EQ(ket.digits(11), (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(ket.index({1, 0, 2}), 11u);
  EXPECT_EQ(ket.stride(1), 9u);
  EXPECT_EQ(ket.stride(3), 1u);
}

TEST(State, BasisKetRejectsBadDigits) {
  EXPECT_THROW(basis_ket(3, 2, {0, 3}), DomainError);
  EXPECT_THROW(basis_ket(3, 2, {0}), DomainError);
  EXPECT_THROW(hilbert_dim(2, 40), DomainError);
}

TEST(State, PlusStateIsUniform) {
  const StateVector plus = plus_state(5, 3);
  for (std::size_t i = 0; i < plus.size(); ++i) EXPECT_NEAR(std::abs(plus[i] - Complex(1.0 / std::sqrt(125.0))), 0.0, 1e-15);
}

TEST(State, RandomStateIsNormalizedAndSeeded) {
  std::mt19937_64 a(7), b(7);
  const StateVector s1 = random_state(3, 2, a);
  const StateVector s2 = random_state(3, 2, b);
  EXPECT_TRUE(s1.is_normalized());
  EXPECT_EQ(s1.amplitudes(), s2.amplitudes());
}

TEST(State, PhaseGateOnTwoPlusStates) {
  for (int d : {2, 3, 4}) {
    const StateVector s = apply_phase_gate(plus_state(d, 2), 1, 2);
    const dense::Vec expected = dense::cluster(d, 2, {{1, 2}});
    EXPECT_LE((s.amplitudes() - expected).norm(), 1e-14);
  }
}

TEST(State, PhaseGateConjugationIdentities) {
  // S X_a S^dag = X_a Z_b^dag and S Z_a S^dag = Z_a on a random two-site state.
  const int dv = 3;
  const QuditDim d(dv);
  std::mt19937_64 rng(3);
  const StateVector psi = random_state(dv, 2, rng);
  Operator s = Operator::Zero(9, 9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) s(3 * j + k, 3 * j + k) = d.q_pow(j * k);
  }
  const Operator x1 = dense::on_site(gen_x(d), 1, 2, dv);
  const Operator z2 = dense::on_site(gen_z(d), 2, 2, dv);
  EXPECT_LE(max_abs(s * x1 * s.adjoint() - x1 * z2.adjoint()), 1e-12);
  const StateVector lhs = apply_phase_gate(psi, 1, 2);
  EXPECT_LE((lhs.amplitudes() - s * psi.amplitudes()).norm(), 1e-14);
}

TEST(State, ApplyLocalMatchesDense) {
  for (int dv : {2, 3, 5}) {
    const QuditDim d(dv);
    std::mt19937_64 rng(static_cast<unsigned>(dv));
    const StateVector psi = random_state(dv, 3, rng);
    const Operator op = zbar(d, 1, 1) * gen_x(d);
    for (int site = 1; site <= 3; ++site) {
      const StateVector out = apply_local(psi, site, op);
      EXPECT_LE((out.amplitudes() - dense::on_site(op, site, 3, dv) * psi.amplitudes()).norm(), 1e-13);
    }
  }
}

TEST(State, ApplySitesRespectsSiteOrder) {
  const int dv = 3;
  const QuditDim d(dv);
  std::mt19937_64 rng(11);
  const StateVector psi = random_state(dv, 3, rng);
  const Operator op = kron(gen_x(d), gen_z(d));
  const std::array<int, 2> sites{3, 1};
  const StateVector out = apply_sites(psi, sites, op);
  const dense::Mat expected = dense::on_site(gen_x(d), 3, 3, dv) * dense::on_site(gen_z(d), 1, 3, dv);
  EXPECT_LE((out.amplitudes() - expected * psi.amplitudes()).norm(), 1e-13);
  const std::array<int, 2> repeated{1, 1};
  EXPECT_THROW(apply_sites(psi, repeated, op), DomainError);
}

TEST(State, ProjectSiteMatchesDenseProjector) {
  const int dv = 3;
  std::mt19937_64 rng(5);
  const StateVector psi = random_state(dv, 3, rng);
  const dense::Vec dir = dense::x_state(dv, 2);
  const ProjectionResult r = project_site(psi, 2, dir);
  const dense::Vec expected = dense::site_projector(dir, 2, 3, dv) * psi.amplitudes();
  EXPECT_LE((r.state.amplitudes() - expected).norm(), 1e-14);
  EXPECT_NEAR(r.probability, expected.squaredNorm(), 1e-14);
  EXPECT_FALSE(r.zero_branch);
}

TEST(State, ProjectionsOnOneSiteSumToOne) {
  const int dv = 5;
  std::mt19937_64 rng(9);
  const StateVector psi = random_state(dv, 3, rng);
  double total = 0.0;
  for (int j = 0; j < dv; ++j) total += project_site(psi, 1, dense::x_state(dv, j)).probability;
  EXPECT_NEAR(total, 1.0, 1e-13);
}

TEST(State, ContractSitesDropsMeasuredSites) {
  const int dv = 2;
  const StateVector psi = tensor(basis_ket(dv, 1, {1}), plus_state(dv, 2));
  const std::vector<SiteDirection> measured{{1, dense::x_state(dv, 1)}};
  const StateVector rest = contract_sites(psi, measured);
  EXPECT_EQ(rest.n_sites(), 2);
  // <x(1)|1> = -1/sqrt(2)
  EXPECT_LE((rest.amplitudes() + plus_state(dv, 2).amplitudes() / std::sqrt(2.0)).norm(), 1e-14);
}

TEST(State, ReducedDensityMatchesDensePartialTrace) {
  for (int dv : {2, 3}) {
    std::mt19937_64 rng(static_cast<unsigned>(17 + dv));
    const StateVector psi = random_state(dv, 4, rng);
    for (const std::vector<int>& keep : {std::vector<int>{2}, std::vector<int>{3, 1}, std::vector<int>{1, 2, 4}}) {
      const Operator rho = reduced_density(psi, keep);
      EXPECT_LE(max_abs(rho - dense::partial_trace(psi.amplitudes(), 4, dv, keep)), 1e-14);
      EXPECT_NEAR(rho.trace().real(), 1.0, 1e-13);
    }
  }
}

TEST(State, PurityOfProductAndMaximallyMixed) {
  EXPECT_NEAR(purity(reduced_density(plus_state(3, 2), std::vector<int>{1})), 1.0, 1e-14);
  const StateVector bell = apply_phase_gate(plus_state(3, 2), 1, 2);
  EXPECT_NEAR(purity(reduced_density(bell, std::vector<int>{2})), 1.0 / 3.0, 1e-14);
}

TEST(State, EqualUpToPhase) {
  std::mt19937_64 rng(1);
  const StateVector psi = random_state(2, 3, rng);
  const StateVector rotated(2, 3, std::polar(1.0, 0.7) * psi.amplitudes());
  EXPECT_TRUE(equal_up_to_phase(psi, rotated).equal);
  const StateVector other = random_state(2, 3, rng);
  EXPECT_FALSE(equal_up_to_phase(psi, other).equal);
}

TEST(State, TensorOrdersSites) {
  const StateVector t = tensor(basis_ket(3, 1, {2}), basis_ket(3, 1, {1}));
  EXPECT_EQ(t[7], Complex(1.0));
}

}  // namespace
}  // namespace qmbqc
