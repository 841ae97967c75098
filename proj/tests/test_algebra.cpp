#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "qudit_mbqc/algebra.hpp"
#include "support/dense_oracle.hpp"

namespace qmbqc {
namespace {

class AlgebraByDim : public ::testing::TestWithParam<int> {};

TEST_P(AlgebraByDim, GeneratorsMatchDefinitions) {
  const QuditDim d(GetParam());
  EXPECT_LE(dense::max_abs(gen_z(d) - dense::clock(d.value())), 1e-15);
  EXPECT_LE(dense::max_abs(gen_x(d) - dense::shift(d.value())), 0.0);
}

TEST_P(AlgebraByDim, CommutationAndOrder) {
  const QuditDim d(GetParam());
  const Operator z = gen_z(d);
  const Operator x = gen_x(d);
  const Operator id = Operator::Identity(d.value(), d.value());
  EXPECT_LE(max_abs(x * z - d.q_pow(1) * z * x), 1e-12);
  EXPECT_LE(max_abs(matrix_power(x, d.value()) - id), 1e-12);
  EXPECT_LE(max_abs(matrix_power(z, d.value()) - id), 1e-12);
}

TEST_P(AlgebraByDim, ReorderingPhaseForAllPowers) {
  const QuditDim d(GetParam());
  for (int j = 0; j < d.value(); ++j) {
    for (int k = 0; k < d.value(); ++k) {
      const Operator lhs = matrix_power(gen_x(d), j) * matrix_power(gen_z(d), k);
      const Operator rhs = d.q_pow(j * k) * matrix_power(gen_z(d), k) * matrix_power(gen_x(d), j);
      EXPECT_LE(max_abs(lhs - rhs), 1e-12) << j << "," << k;
    }
  }
}

TEST_P(AlgebraByDim, WeylBasisIsTraceOrthogonal) {
  const QuditDim d(GetParam());
  EXPECT_LE(weyl_gram_residual(d), 1e-12);
}

TEST_P(AlgebraByDim, XEigenvectors) {
  const QuditDim d(GetParam());
  for (int j = 0; j < d.value(); ++j) {
    const Amplitudes v = x_eigenvector(d, j).amplitudes();
    EXPECT_LE((v - dense::x_state(d.value(), j)).norm(), 1e-14);
    EXPECT_LE((gen_x(d) * v - d.q_pow(j) * v).norm(), 1e-12);
  }
}

TEST_P(AlgebraByDim, ZbarSpectrumAndOrder) {
  const QuditDim d(GetParam());
  for (int m = 0; m < d.value(); ++m) {
    for (int n = 0; n < d.value(); ++n) {
      if (std::gcd(m, n) != 1) continue;
      const Operator zb = zbar(d, m, n);
      EXPECT_TRUE(is_unitary(zb));
      EXPECT_LE(max_abs(matrix_power(zb, d.value()) - Operator::Identity(d.value(), d.value())), 1e-10);
      Eigen::ComplexEigenSolver<Operator> solver(zb);
      std::vector<int> labels;
      for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const Complex e = solver.eigenvalues()[i];
        int best = 0;
        for (int k = 1; k < d.value(); ++k) {
          if (std::abs(e - d.q_pow(k)) < std::abs(e - d.q_pow(best))) best = k;
        }
        EXPECT_LE(std::abs(e - d.q_pow(best)), 1e-10);
        labels.push_back(best);
      }
      std::sort(labels.begin(), labels.end());
      for (int k = 0; k < d.value(); ++k) EXPECT_EQ(labels[static_cast<std::size_t>(k)], k);
    }
  }
}

TEST_P(AlgebraByDim, ParamUnitaryGroupLaw) {
  const QuditDim d(GetParam());
  std::vector<long long> m(static_cast<std::size_t>(d.value()));
  for (int k = 0; k < d.value(); ++k) m[static_cast<std::size_t>(k)] = (k % 3) - 1;
  const LiftVector lifts(d, m);
  for (const Operator& base : {gen_z(d), gen_x(d), zbar(d, 1, 1)}) {
    const Operator a = param_unitary(base, lifts, 0.3);
    const Operator b = param_unitary(base, lifts, -1.7);
    EXPECT_LE(max_abs(a * b - param_unitary(base, lifts, -1.4)), 1e-10);
    EXPECT_LE(max_abs(param_unitary(base, LiftVector::zeros(d), 1.0) - base), 1e-10);
    EXPECT_TRUE(is_unitary(a));
  }
}

TEST_P(AlgebraByDim, DiagGeneratorIsHermitianWithLiftedSpectrum) {
  const QuditDim d(GetParam());
  const LiftVector lifts = LiftVector::unit(d, d.value() - 1);
  const Operator n = diag_generator(zbar(d, 1, d.value() - 1), lifts);
  EXPECT_TRUE(is_hermitian(n));
  Eigen::SelfAdjointEigenSolver<Operator> solver(n);
  std::vector<double> expected;
  for (int k = 0; k < d.value(); ++k) expected.push_back(static_cast<double>(lifts.exponent(k)));
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < d.value(); ++k) EXPECT_NEAR(solver.eigenvalues()[k], expected[static_cast<std::size_t>(k)], 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Dims, AlgebraByDim, ::testing::Values(2, 3, 4, 5, 6, 7));

TEST(Algebra, RejectsDimensionOne) { EXPECT_THROW(QuditDim(1), DomainError); }

TEST(Algebra, PauliReductionForQubits) {
  const QuditDim d(2);
  Operator sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  EXPECT_LE(max_abs(gen_z(d) - sz), 1e-15);
  EXPECT_LE(max_abs(gen_x(d) - sx), 0.0);
  EXPECT_LE(max_abs(weyl(d, 1, 1) - Complex(0, 1) * sy), 1e-15);
  EXPECT_LE(max_abs(zbar(d, 1, 1) - sy), 1e-15);
}

TEST(Algebra, QutritShiftWrapsAround) {
  const QuditDim d(3);
  Amplitudes ket0 = Amplitudes::Zero(3);
  ket0[0] = 1.0;
  const Amplitudes out = gen_x(d) * ket0;
  EXPECT_EQ(out[2], Complex(1.0));
  EXPECT_LE(max_abs(gen_x(d) * gen_z(d).adjoint() * gen_z(d) - gen_x(d)), 1e-15);
  // X Z^2 = q^2 Z^2 X
  EXPECT_LE(max_abs(weyl(d, 0, 1) * weyl(d, 2, 0) - d.q_pow(2) * weyl(d, 2, 1)), 1e-12);
}

TEST(Algebra, ZbarRejectsNonCoprimeLabels) {
  EXPECT_THROW(zbar(QuditDim(3), 2, 2), DomainError);
  EXPECT_THROW(zbar(QuditDim(4), 0, 0), DomainError);
  EXPECT_LE(max_abs(zbar(QuditDim(5), 1, 0) - gen_z(QuditDim(5))), 0.0);
}

TEST(Algebra, EvenDimensionSignedRepresentativesDiffer) {
  const QuditDim d(2);
  // exp(-i pi (d-1) m n / d) is not periodic in n with period d for even d.
  const auto c = phase_between(zbar(d, 1, -1), zbar(d, 1, 1));
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(std::abs(*c + Complex(1.0)), 0.0, 1e-12);
}

TEST(Algebra, DiagGeneratorExamples) {
  const QuditDim d3(3);
  Operator expected = Operator::Zero(3, 3);
  expected.diagonal() << 3, 1, 2;
  EXPECT_LE(max_abs(diag_generator(gen_z(d3), LiftVector(d3, {1, 0, 0})) - expected), 1e-12);
  Operator counting = Operator::Zero(3, 3);
  counting.diagonal() << 0, 1, 2;
  EXPECT_LE(max_abs(diag_generator(gen_z(d3), LiftVector::zeros(d3)) - counting), 1e-12);

  const QuditDim d2(2);
  Operator sqrt_z = Operator::Zero(2, 2);
  sqrt_z.diagonal() << 1, Complex(0, 1);
  EXPECT_LE(max_abs(param_unitary(gen_z(d2), LiftVector::zeros(d2), 0.5) - sqrt_z), 1e-12);
  EXPECT_LE(max_abs(param_unitary(gen_z(d3), LiftVector::zeros(d3), 0.0) - Operator::Identity(3, 3)), 1e-12);
}

TEST(Algebra, PowerEigenbasisOfShiftIsFourier) {
  for (int dv : {2, 3, 5}) {
    const QuditDim d(dv);
    const Operator u = power_eigenbasis(gen_x(d), d);
    for (int n = 0; n < dv; ++n) {
      EXPECT_LE((u.col(n) - dense::x_state(dv, n)).norm(), 1e-10) << "d=" << dv << " n=" << n;
    }
  }
}

TEST(Algebra, PowerEigenbasisRejectsDegenerateOrOffLattice) {
  const QuditDim d(3);
  EXPECT_THROW(power_eigenbasis(Operator::Identity(3, 3), d), DomainError);
  Operator off = gen_z(d);
  off(1, 1) = std::polar(1.0, 0.5);
  EXPECT_THROW(power_eigenbasis(off, d), DomainError);
}

TEST(Algebra, LiftVectorValidatesLength) {
  EXPECT_THROW(LiftVector(QuditDim(3), {0, 0}), DomainError);
  const LiftVector l(QuditDim(3), {0, -1, 2});
  EXPECT_EQ(l.exponent(1), -2);
  EXPECT_EQ(l.exponent(2), 8);
}

TEST(Algebra, WeylDecompose) {
  const QuditDim d(5);
  const auto label = weyl_decompose(Complex(0, 1) * weyl(d, 3, 4), d);
  ASSERT_TRUE(label.has_value());
  EXPECT_EQ(label->z_pow, 3);
  EXPECT_EQ(label->x_pow, 4);
  EXPECT_NEAR(std::abs(label->coefficient - Complex(0, 1)), 0.0, 1e-12);
  EXPECT_FALSE(weyl_decompose(param_unitary(gen_x(d), LiftVector::zeros(d), 0.5), d).has_value());
}

}  // namespace
}  // namespace qmbqc
