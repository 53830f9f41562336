#include <gtest/gtest.h>

#include <numbers>

#include "gwt/errors.hpp"
#include "gwt/linalg.hpp"
#include "gwt/mediators.hpp"
#include "gwt/protocol.hpp"
#include "gwt/rng.hpp"
#include "gwt/states.hpp"
#include "oracle.hpp"

using namespace gwt;
using oracle::max_diff;

namespace {

DensityState ket_state(const oracle::Ket& k, std::vector<std::size_t> dims) {
  return DensityState(oracle::projector(k), std::move(dims));
}

oracle::Ket bell_plus() { return {oracle::kSqrtHalf, 0, 0, oracle::kSqrtHalf}; }

}  // namespace

TEST(DensityState, RejectsInvalidMatrices) {
  EXPECT_THROW(DensityState(oracle::mat2(1, 0, 0, 1), {2}), ValidationError);         // trace 2
  EXPECT_THROW(DensityState(oracle::mat2(1.5, 0, 0, -0.5), {2}), ValidationError);    // negative
  EXPECT_THROW(DensityState(oracle::mat2(0.5, 1, 0, 0.5), {2}), ValidationError);     // not Hermitian
  EXPECT_THROW(DensityState(oracle::mat2(0.5, 0, 0, 0.5), {3}), ValidationError);     // dims mismatch
}

TEST(ProductState, RankOneEightByEight) {
  const DensityState locals[] = {qubit_state('+'), qubit_state('0'), qubit_state('0')};
  auto s = product_state(locals);
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{2, 2, 2}));
  auto want = oracle::projector(oracle::product_ket({oracle::ket_plus(), oracle::ket0(), oracle::ket0()}));
  EXPECT_LT(max_diff(s.matrix(), want), 1e-15);
  EXPECT_NEAR(s.purity(), 1.0, 1e-12);
}

TEST(ProductState, MixedTimesMixed) {
  const DensityState locals[] = {DensityState::maximally_mixed({2}), DensityState::maximally_mixed({2})};
  auto s = product_state(locals);
  auto want = DenseOperator::identity(4);
  want *= 0.25;
  EXPECT_LT(max_diff(s.matrix(), want), 1e-15);
}

TEST(ProductState, PurityMultiplies) {
  StreamRng rng(2, 0);
  for (int t = 0; t < 10; ++t) {
    DensityState a(random_density_matrix(2, rng), {2}), b(random_density_matrix(3, rng), {3});
    const DensityState locals[] = {a, b};
    EXPECT_NEAR(product_state(locals).purity(), a.purity() * b.purity(), 1e-12);
  }
}

TEST(PartialTrace, ProductKeepsFirst) {
  auto s = ket_state(oracle::basis_ket(0, 4), {2, 2});
  auto r = partial_trace(s, {0});
  EXPECT_LT(max_diff(r.matrix(), oracle::mat2(1, 0, 0, 0)), 1e-15);
}

TEST(PartialTrace, BellIsMaximallyMixed) {
  auto r = partial_trace(ket_state(bell_plus(), {2, 2}), {1});
  EXPECT_LT(max_diff(r.matrix(), oracle::mat2(0.5, 0, 0, 0.5)), 1e-15);
}

TEST(PartialTrace, EmptyKeepThrows) {
  EXPECT_THROW(partial_trace(ket_state(bell_plus(), {2, 2}), {}), ValidationError);
  EXPECT_THROW(partial_trace(ket_state(bell_plus(), {2, 2}), {2}), ValidationError);
}

TEST(PartialTrace, RelayFinalStateIsBell) {
  // Oracle: simulate the relay on kets.
  auto psi = oracle::product_ket({oracle::ket_plus(), oracle::ket0(), oracle::ket0()});
  psi = oracle::apply_cnot(psi, 0, 1);
  psi = oracle::apply_cnot(psi, 1, 2);
  psi = oracle::apply_cnot(psi, 2, 1);
  auto reduced = partial_trace(ket_state(psi, {2, 2, 2}), {0, 2});
  EXPECT_LT(max_diff(reduced.matrix(), oracle::projector(bell_plus())), 1e-12);
}

TEST(PartialTrace, ComposesAcrossSteps) {
  StreamRng rng(6, 0);
  for (int t = 0; t < 10; ++t) {
    DensityState s(random_density_matrix(12, rng), {2, 3, 2});
    auto once = partial_trace(s, {0});
    auto twice = partial_trace(partial_trace(s, {0, 1}), {0});
    EXPECT_LT(max_diff(once.matrix(), twice.matrix()), 1e-12);
    EXPECT_NEAR(partial_trace(s, {1}).matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, MatchesIndexSumOracle) {
  StreamRng rng(7, 0);
  DensityState s(random_density_matrix(8, rng), {2, 2, 2});
  auto r = partial_trace(s, {0, 2});
  DenseOperator want(4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2)
          for (std::size_t m = 0; m < 2; ++m) want(a * 2 + b, a2 * 2 + b2) += s.matrix()(a * 4 + m * 2 + b, a2 * 4 + m * 2 + b2);
  EXPECT_LT(max_diff(r.matrix(), want), 1e-14);
}

TEST(Evolve, PreservesInvariants) {
  StreamRng rng(10, 0);
  DensityState s(random_density_matrix(8, rng), {2, 2, 2});
  auto e = evolve(s, random_unitary(8, rng));
  EXPECT_NEAR(e.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(e.purity(), s.purity(), 1e-12);
}

TEST(BlochDecompose, MaximallyMixed) {
  auto b = bloch_decompose_AM(DensityState::maximally_mixed({2, 2}));
  for (double v : b.bloch.r_A) EXPECT_NEAR(v, 0, 1e-15);
  for (double v : b.bloch.t_A) EXPECT_NEAR(v, 0, 1e-15);
  EXPECT_NEAR(b.bloch.s_z, 0, 1e-15);
}

TEST(BlochDecompose, SharpZValues) {
  auto b = bloch_decompose_AM(ket_state(oracle::basis_ket(0, 4), {2, 2}));
  EXPECT_NEAR(b.bloch.r_A[2], 1, 1e-15);
  EXPECT_NEAR(b.bloch.s_z, 1, 1e-15);
  EXPECT_NEAR(b.bloch.t_A[2], 1, 1e-15);
  EXPECT_NEAR(b.bloch.r_A[0], 0, 1e-15);
}

TEST(BlochDecompose, ZOnlyCouplingStaysInFamily) {
  auto s = ket_state(oracle::product_ket({oracle::ket_plus(), oracle::ket0()}), {2, 2});
  auto u = expm_hermitian_generator(oracle::tensor(oracle::X2(), oracle::Z2()), std::numbers::pi / 4);
  auto e = evolve(s, u);
  auto b = bloch_decompose_AM(e);
  EXPECT_LT(b.max_residual(), 1e-12);
  EXPECT_LT(max_diff(reconstruct_bloch_AM(b.bloch), e.matrix()), 1e-10);
}

TEST(BlochDecompose, RoundTripOnZeroResidualStates) {
  StreamRng rng(13, 0);
  int checked = 0;
  while (checked < 50) {
    BlochAM b;
    for (auto& v : b.r_A) v = rng.uniform(-1, 1);
    for (auto& v : b.t_A) v = rng.uniform(-1, 1);
    b.s_z = rng.uniform(-1, 1);
    auto m = reconstruct_bloch_AM(b);
    if (hermitian_eig(m).values.front() < 0) continue;
    auto d = bloch_decompose_AM(DensityState(m, {2, 2}));
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(d.bloch.r_A[k], b.r_A[k], 1e-12);
      EXPECT_NEAR(d.bloch.t_A[k], b.t_A[k], 1e-12);
    }
    EXPECT_NEAR(d.bloch.s_z, b.s_z, 1e-12);
    EXPECT_LT(d.max_residual(), 1e-12);
    ++checked;
  }
}

TEST(BlochDecompose, ReportsResiduals) {
  auto d = bloch_decompose_AM(ket_state(bell_plus(), {2, 2}));
  EXPECT_NEAR(d.residuals.at("XX"), 1.0, 1e-12);
  EXPECT_NEAR(d.residuals.at("YY"), -1.0, 1e-12);
  EXPECT_THROW(bloch_decompose_AM(DensityState::maximally_mixed({2, 3})), ValidationError);
}

TEST(StateInvariants, EveryProtocolStatePasses) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto trace = run(sample_quantum_local(99, 8, i));
    for (const auto& r : trace.records)
      for (const DensityState* s : {&r.plus, &r.minus}) {
        EXPECT_TRUE(s->matrix().is_hermitian(1e-12));
        EXPECT_NEAR(s->matrix().trace().real(), 1.0, 1e-12);
        EXPECT_GE(hermitian_eig(s->matrix()).values.front(), -1e-10);
      }
  }
}

TEST(BlochDecompose, ClosedFormMinEigenvalueMatchesEigensolver) {
  StreamRng rng(15, 0);
  for (int t = 0; t < 500; ++t) {
    BlochAM b;
    for (auto& v : b.r_A) v = rng.uniform(-1, 1);
    for (auto& v : b.t_A) v = rng.uniform(-1, 1);
    b.s_z = rng.uniform(-1, 1);
    EXPECT_NEAR(bloch_AM_min_eigenvalue(b), hermitian_eig(reconstruct_bloch_AM(b)).values.front(), 1e-12);
  }
}
