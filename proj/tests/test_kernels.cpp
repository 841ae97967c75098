#include <gtest/gtest.h>

#include <array>
#include <random>
#include <vector>

#include "qudit_mbqc/algebra.hpp"
#include "qudit_mbqc/kernels.hpp"

namespace qmbqc {
namespace {

std::vector<Complex> random_amps(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v;
}

Operator random_op(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Operator m(dim, dim);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = {g(rng), g(rng)};
  return m;
}

double diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

struct Shape {
  int d;
  int n;
};

class KernelAgreement : public ::testing::TestWithParam<Shape> {};

// Sizes straddle kParallelThreshold so both code paths of the parallel
// kernels are exercised.
TEST_P(KernelAgreement, ApplyLocal) {
  const kernels::Layout layout{GetParam().d, GetParam().n};
  const auto in = random_amps(layout.size(), 1);
  const Operator op = random_op(layout.d, 2);
  for (int site = 1; site <= layout.n_sites; ++site) {
    std::vector<Complex> a(in.size()), b(in.size());
    kernels::serial::apply_local(layout, in, a, site, op);
    kernels::parallel::apply_local(layout, in, b, site, op);
    EXPECT_LE(diff(a, b), 1e-13) << "site " << site;
  }
}

TEST_P(KernelAgreement, ApplySites) {
  const kernels::Layout layout{GetParam().d, GetParam().n};
  const auto in = random_amps(layout.size(), 3);
  const Operator op = random_op(layout.d * layout.d, 4);
  const std::array<int, 2> sites{layout.n_sites, 1};
  std::vector<Complex> a(in.size()), b(in.size());
  kernels::serial::apply_sites(layout, in, a, sites, op);
  kernels::parallel::apply_sites(layout, in, b, sites, op);
  EXPECT_LE(diff(a, b), 1e-12);
}

TEST_P(KernelAgreement, PhaseGateIsBitIdentical) {
  const kernels::Layout layout{GetParam().d, GetParam().n};
  auto a = random_amps(layout.size(), 5);
  auto b = a;
  kernels::serial::apply_phase_gate(layout, a, 1, layout.n_sites);
  kernels::parallel::apply_phase_gate(layout, b, 1, layout.n_sites);
  EXPECT_EQ(a, b);
}

TEST_P(KernelAgreement, MultiplyDiagonalIsBitIdentical) {
  const kernels::Layout layout{GetParam().d, GetParam().n};
  auto a = random_amps(layout.size(), 6);
  auto b = a;
  const auto phases = random_amps(layout.size(), 7);
  kernels::serial::multiply_diagonal(a, phases);
  kernels::parallel::multiply_diagonal(b, phases);
  EXPECT_EQ(a, b);
}

TEST_P(KernelAgreement, ProjectSite) {
  const kernels::Layout layout{GetParam().d, GetParam().n};
  const auto in = random_amps(layout.size(), 8);
  std::vector<Complex> dir = random_amps(static_cast<std::size_t>(layout.d), 9);
  double norm = 0.0;
  for (auto c : dir) norm += std::norm(c);
  for (auto& c : dir) c /= std::sqrt(norm);
  for (int site : {1, layout.n_sites}) {
    std::vector<Complex> a(in.size()), b(in.size());
    const double wa = kernels::serial::project_site(layout, in, a, site, dir);
    const double wb = kernels::parallel::project_site(layout, in, b, site, dir);
    EXPECT_LE(diff(a, b), 1e-12);
    EXPECT_NEAR(wa, wb, 1e-9 * wa);
  }
}

TEST_P(KernelAgreement, ParallelProjectionIsDeterministic) {
  const kernels::Layout layout{GetParam().d, GetParam().n};
  const auto in = random_amps(layout.size(), 10);
  std::vector<Complex> dir(static_cast<std::size_t>(layout.d), Complex(1.0 / std::sqrt(layout.d)));
  std::vector<Complex> a(in.size()), b(in.size());
  const double wa = kernels::parallel::project_site(layout, in, a, 2, dir);
  const double wb = kernels::parallel::project_site(layout, in, b, 2, dir);
  EXPECT_EQ(wa, wb);
  EXPECT_EQ(a, b);
}

INSTANTIATE_TEST_SUITE_P(Shapes, KernelAgreement,
                         ::testing::Values(Shape{2, 4}, Shape{3, 3}, Shape{2, 14}, Shape{3, 9},
                                           Shape{5, 6}),
                         [](const ::testing::TestParamInfo<Shape>& info) {
                           return "d" + std::to_string(info.param.d) + "_n" + std::to_string(info.param.n);
                         });

TEST(Kernels, LayoutStrides) {
  const kernels::Layout layout{3, 4};
  EXPECT_EQ(layout.size(), 81u);
  EXPECT_EQ(layout.stride(1), 27u);
  EXPECT_EQ(layout.stride(4), 1u);
}

}  // namespace
}  // namespace qmbqc
