#include <gtest/gtest.h>

#include <random>

#include "qudit_mbqc/protocols.hpp"

namespace qmbqc {
namespace {

struct ChainCase {
  int d;
  int m;
  int n;
};

class CompiledChains : public ::testing::TestWithParam<ChainCase> {};

TEST_P(CompiledChains, ComposedTargetEqualsRequestedRotation) {
  const auto [dv, m, n] = GetParam();
  const QuditDim d(dv);
  for (const LiftVector& lifts : {LiftVector::zeros(d), LiftVector::unit(d, dv - 1)}) {
    const ProtocolChain chain = compile_single_qudit(d, m, n, 0.37, lifts);
    EXPECT_LE(chain.residual, 1e-9);
    EXPECT_TRUE(phase_between(chain.requested, chain.composed_target, 1e-9).has_value());
    Operator product = Operator::Identity(dv, dv);
    for (const GateProtocol& step : chain.steps) product = step.target * product;
    EXPECT_LE(max_abs(product - chain.composed_target), 1e-12);
  }
}

TEST_P(CompiledChains, SampledRunReproducesTarget) {
  const auto [dv, m, n] = GetParam();
  const QuditDim d(dv);
  const ProtocolChain chain = compile_single_qudit(d, m, n, 0.37, LiftVector::zeros(d));
  std::mt19937_64 rng(static_cast<unsigned>(dv * 100 + m * 10 + n));
  const StateVector in = random_state(dv, 1, rng);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const ChainRun run = run_chain(chain, in, seed);
    EXPECT_GE(run.fidelity, 1.0 - 1e-9) << "seed " << seed;
    EXPECT_EQ(run.outcomes_per_step.size(), chain.steps.size());
  }
}

INSTANTIATE_TEST_SUITE_P(Labels, CompiledChains,
                         ::testing::Values(ChainCase{2, 1, 1}, ChainCase{2, 0, 1}, ChainCase{3, 1, 2},
                                           ChainCase{3, 2, 1}, ChainCase{3, 1, 1}, ChainCase{5, 2, 3},
                                           ChainCase{5, 1, 0}),
                         [](const ::testing::TestParamInfo<ChainCase>& info) {
                           const ChainCase& c = info.param;
                           return "d" + std::to_string(c.d) + "_m" + std::to_string(c.m) + "_n" + std::to_string(c.n);
                         });

TEST(Compile, RejectsNonCoprimeLabels) {
  const QuditDim d(3);
  EXPECT_THROW(compile_single_qudit(d, 0, 0, 0.5, LiftVector::zeros(d)), DomainError);
}

TEST(Universality, RandomUnitaryIsUnitary) {
  std::mt19937_64 rng(3);
  for (int d : {2, 3, 5}) EXPECT_TRUE(is_unitary(random_unitary(d, rng)));
}

TEST(Universality, FitsRandomTargets) {
  for (int dv : {2, 3}) {
    const QuditDim d(dv);
    std::mt19937_64 rng(static_cast<unsigned>(dv));
    const Operator target = random_unitary(dv, rng);
    const Approximation fit = approximate_unitary(d, target, 1);
    EXPECT_GE(fit.fidelity, 1.0 - 1e-6) << dv;
    Operator product = Operator::Identity(dv, dv);
    for (const RotationFactor& f : fit.factors) product = product * param_unitary(zbar(d, f.m, f.n), f.lifts, f.beta);
    EXPECT_LE(max_abs(product - fit.product), 1e-10);
  }
}

TEST(Universality, RejectsNonUnitaryTarget) {
  const QuditDim d(2);
  EXPECT_THROW(approximate_unitary(d, 2.0 * Operator::Identity(2, 2), 0), DomainError);
}

}  // namespace
}  // namespace qmbqc
