#include <gtest/gtest.h>

#include <array>

#include "qudit_mbqc/oracle.hpp"
#include "support/dense_oracle.hpp"

namespace qmbqc {
namespace {

TEST(Oracle, ProductFormulaMatchesDenseEdgeProduct) {
  for (int d : {2, 3, 4}) {
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::pair<int, int>> edges;
      for (int a = 1; a < n; ++a) edges.emplace_back(a, a + 1);
      const StateVector s = oracle_cluster_state_1d(d, n);
      EXPECT_LE((s.amplitudes() - dense::cluster(d, n, edges)).norm(), 1e-13);
    }
  }
}

TEST(Oracle, EntropyExamples) {
  const std::array<int, 1> first{1};
  const std::array<int, 2> left{1, 2};
  for (int d : {2, 3, 5}) {
    EXPECT_NEAR(entanglement_entropy(plus_state(d, 3), first), 0.0, 1e-12);
    // every cut of a chain cluster carries one unit of entanglement
    EXPECT_NEAR(entanglement_entropy(cluster_state(chain(d, 4)), first), 1.0, 1e-12);
    EXPECT_NEAR(entanglement_entropy(cluster_state(chain(d, 4)), left), 1.0, 1e-12);
  }
  // 2 x 2 ring: cutting {1, 2} off {3, 4} crosses two edges
  EXPECT_NEAR(entanglement_entropy(cluster_state(grid(3, 2, 2)), left), 2.0, 1e-12);
}

TEST(Oracle, EntropyRejectsTrivialCuts) {
  const StateVector s = plus_state(2, 2);
  const std::array<int, 2> all{1, 2};
  EXPECT_THROW(entanglement_entropy(s, std::span<const int>{}), DomainError);
  EXPECT_THROW(entanglement_entropy(s, all), DomainError);
}

TEST(Oracle, VerificationReportThresholds) {
  VerificationReport r;
  r.add_check("a", 1e-12, 1e-9);
  EXPECT_TRUE(r.all_pass());
  r.add_check("b", 0.0, 0.0);
  EXPECT_TRUE(r.all_pass());
  r.add_check("c", 2.0, 1.0);
  EXPECT_FALSE(r.all_pass());
  EXPECT_FALSE(r.checks.back().pass);
}

TEST(Oracle, CertificationInputs) {
  const auto basis = certification_inputs(3, 2, {InputSpec::Kind::Basis, 0, 0});
  ASSERT_EQ(basis.size(), 9u);
  EXPECT_EQ(basis[4][4], Complex(1.0));
  const auto a = certification_inputs(2, 1, {InputSpec::Kind::Random, 4, 9});
  const auto b = certification_inputs(2, 1, {InputSpec::Kind::Random, 4, 9});
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].amplitudes(), b[i].amplitudes());
  EXPECT_THROW(certification_inputs(2, 1, {InputSpec::Kind::Random, 0, 0}), DomainError);
}

TEST(Oracle, CertificationOnBasisInputs) {
  const QuditDim d(3);
  const auto r = certify_protocol(protocol_t(d), {InputSpec::Kind::Basis, 0, 0});
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.branch_count, 81u);
  ASSERT_EQ(r.checks.size(), 5u);
  EXPECT_EQ(r.checks[3].name, "lambda_mismatches");
  EXPECT_EQ(r.checks[3].value, 0.0);
}

}  // namespace
}  // namespace qmbqc
