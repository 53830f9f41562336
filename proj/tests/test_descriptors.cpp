#include <gtest/gtest.h>

#include <numbers>

#include "gwt/descriptors.hpp"
#include "gwt/errors.hpp"
#include "gwt/linalg.hpp"
#include "gwt/rng.hpp"
#include "gwt/steps.hpp"
#include "oracle.hpp"

using namespace gwt;
using oracle::max_diff;

namespace {

LayoutPtr amb() { return make_layout({{"A", 2}, {"M", 2}, {"B", 2}}); }

const DescriptorSet& find(const std::vector<DescriptorSet>& sets, const std::string& name) {
  for (const auto& s : sets)
    if (s.subsystem == name) return s;
  throw std::runtime_error("no set " + name);
}

void expect_single_term(const PauliOp& op, const SiteLayout& l, const std::string& text, cplx coeff = 1.0) {
  ASSERT_EQ(op.size(), 1u) << op.to_string();
  EXPECT_LT(std::abs(op.coefficient(string_from_text(l, text)) - coeff), 1e-12) << op.to_string();
}

// Random unitary acting on two of the three qubits, assembled with the oracle Kronecker product.
DenseOperator two_site_unitary(StreamRng& rng, int a, int b) {
  auto local = random_unitary(4, rng);
  // Permute the qubits so the local pair sits on (a, b).
  DenseOperator full(8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      const int other = 3 - a - b;
      if (oracle::bit(r, other) != oracle::bit(c, other)) continue;
      const std::size_t lr = oracle::bit(r, a) * 2 + oracle::bit(r, b);
      const std::size_t lc = oracle::bit(c, a) * 2 + oracle::bit(c, b);
      full(r, c) = local(lr, lc);
    }
  return full;
}

}  // namespace

TEST(InitDescriptors, QuantumProbeGetsPaddedPaulis) {
  auto l = amb();
  auto sets = init_descriptors(l, {"M"});
  const auto& a = find(sets, "A");
  ASSERT_EQ(a.components.size(), 3u);
  expect_single_term(a.component("x"), *l, "XII");
  expect_single_term(a.component("y"), *l, "YII");
  expect_single_term(a.component("z"), *l, "ZII");
  EXPECT_EQ(a.timestamp, "t0");
}

TEST(InitDescriptors, ClassicalMediatorHasSingleZ) {
  auto l = amb();
  const auto sets = init_descriptors(l, {"M"});
  const auto& m = find(sets, "M");
  ASSERT_EQ(m.components.size(), 1u);
  EXPECT_EQ(m.components[0].label, "z");
  expect_single_term(m.component("z"), *l, "IZI");
}

TEST(InitDescriptors, SecondProbe) {
  auto l = amb();
  const auto sets = init_descriptors(l, {"M"});
  const auto& b = find(sets, "B");
  expect_single_term(b.component("x"), *l, "IIX");
  expect_single_term(b.component("y"), *l, "IIY");
  expect_single_term(b.component("z"), *l, "IIZ");
}

TEST(InitDescriptors, UnknownClassicalSite) {
  EXPECT_THROW(init_descriptors(amb(), {"Q"}), ValidationError);
}

TEST(InitDescriptors, QutritClassicalMediator) {
  auto l = make_layout({{"A", 2}, {"M", 3}, {"B", 2}});
  const auto sets = init_descriptors(l, {"M"});
  const auto& m = find(sets, "M");
  auto d = to_dense(m.component("z"));
  std::vector<cplx> want;
  for (int a = 0; a < 2; ++a)
    for (double v : {2.0, 0.0, -2.0})
      for (int b = 0; b < 2; ++b) want.push_back(v);
  EXPECT_LT(max_diff(d, DenseOperator::diagonal(want)), 1e-12);
  EXPECT_THROW(init_descriptors(l, {}), ValidationError);
}

TEST(EvolveDescriptors, IdentityLeavesUnchanged) {
  auto l = amb();
  auto sets = init_descriptors(l, {});
  auto next = evolve_descriptors(sets, DenseOperator::identity(8));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t k = 0; k < sets[i].components.size(); ++k)
      EXPECT_TRUE((next[i].components[k].op - sets[i].components[k].op).is_zero());
}

TEST(EvolveDescriptors, CnotSpreadsMediatorZ) {
  auto l = amb();
  auto sets = init_descriptors(l, {"M"});
  auto u = oracle::cnot3(0, 1);
  auto next = evolve_descriptors(sets, u, "t1");
  // Oracle: dense U^dagger (I Z I) U.
  auto want = oracle::matmul(oracle::matmul(oracle::dagger(u), oracle::tensor(oracle::I2(), oracle::Z2(), oracle::I2())), u);
  EXPECT_LT(max_diff(to_dense(find(next, "M").component("z")), want), 1e-12);
  expect_single_term(find(next, "M").component("z"), *l, "ZZI");
  EXPECT_EQ(find(next, "M").timestamp, "t1");
  EXPECT_TRUE((find(next, "B").component("x") - find(sets, "B").component("x")).is_zero());
}

TEST(EvolveDescriptors, RejectsNonUnitary) {
  auto sets = init_descriptors(amb(), {});
  DenseOperator m = DenseOperator::identity(8);
  m(0, 0) = 2.0;
  EXPECT_THROW(evolve_descriptors(sets, m), ValidationError);
}

TEST(Support, FreshAndAfterCnot) {
  auto l = amb();
  auto sets = init_descriptors(l, {"M"});
  EXPECT_EQ(support(find(sets, "A")), (std::set<std::string>{"A"}));
  auto next = evolve_descriptors(sets, oracle::cnot3(0, 1));
  EXPECT_EQ(support(find(next, "M")), (std::set<std::string>{"A", "M"}));
}

TEST(Support, DiagonalMBCouplingStaysInside) {
  auto l = amb();
  auto sets = init_descriptors(l, {"M"});
  auto h = oracle::tensor(oracle::I2(), oracle::Z2(), oracle::X2());
  auto next = evolve_descriptors(sets, expm_hermitian_generator(h, 0.7));
  auto s = support(find(next, "M"));
  EXPECT_TRUE(std::includes(std::set<std::string>{"M", "B"}.begin(), std::set<std::string>{"M", "B"}.end(), s.begin(),
                            s.end()));
}

TEST(Microcausality, FreshSetsCommute) {
  auto v = microcausality_check(init_descriptors(amb(), {"M"}));
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.max_violation, 0.0);
}

TEST(Microcausality, SurvivesRandomGlobalUnitaries) {
  StreamRng rng(4, 0);
  auto sets = init_descriptors(amb(), {});
  for (int i = 0; i < 10; ++i) {
    sets = evolve_descriptors(sets, random_unitary(8, rng));
    EXPECT_TRUE(microcausality_check(sets).ok);
  }
}

TEST(Microcausality, CorruptedSetReportsTwo) {
  auto l = amb();
  std::vector<DescriptorSet> sets{{"A", {{"x", PauliOp::term(l, "XII")}}}, {"B", {{"z", PauliOp::term(l, "ZII")}}}};
  auto v = microcausality_check(sets);
  EXPECT_FALSE(v.ok);
  EXPECT_NEAR(v.max_violation, 2.0, 1e-15);
  EXPECT_FALSE(v.worst_pair.empty());
}

TEST(LocalityAudit, ProbeUntouchedByAMStep) {
  auto l = amb();
  auto before = init_descriptors(l, {});
  auto after = evolve_descriptors(before, oracle::cnot3(0, 1));
  EXPECT_TRUE(locality_audit(find(before, "B"), find(after, "B"), {"A", "M"}).ok);
}

TEST(LocalityAudit, DirectCouplingMovesB) {
  auto l = amb();
  auto before = init_descriptors(l, {});
  auto u = expm_hermitian_generator(oracle::tensor(oracle::Z2(), oracle::I2(), oracle::Z2()), std::numbers::pi / 4);
  auto after = evolve_descriptors(before, u);
  // Oracle: U^dagger (I I X) U gains A support.
  auto qx = oracle::matmul(oracle::matmul(oracle::dagger(u), oracle::tensor(oracle::I2(), oracle::I2(), oracle::X2())), u);
  EXPECT_GT(max_diff(qx, oracle::tensor(oracle::I2(), oracle::I2(), oracle::X2())), 0.5);
  auto r = locality_audit(find(before, "B"), find(after, "B"), {"A", "M"});
  EXPECT_FALSE(r.ok);
  EXPECT_GT(r.max_change, 0.5);
}

TEST(LocalityAudit, IdentityStep) {
  auto before = init_descriptors(amb(), {"M"});
  auto after = evolve_descriptors(before, DenseOperator::identity(8));
  for (const char* s : {"A", "M", "B"}) EXPECT_TRUE(locality_audit(find(before, s), find(after, s), {"Q"}).ok);
}

TEST(LocalityAudit, RejectsSubsystemInsideStep) {
  auto before = init_descriptors(amb(), {});
  EXPECT_THROW(locality_audit(find(before, "A"), find(before, "A"), {"A", "M"}), ValidationError);
}

TEST(DescriptorProperties, InvolutionAfterEvolution) {
  StreamRng rng(8, 0);
  auto sets = init_descriptors(amb(), {"M"});
  for (int i = 0; i < 5; ++i) sets = evolve_descriptors(sets, random_unitary(8, rng));
  for (const auto& s : sets)
    for (const auto& c : s.components) {
      auto d = to_dense(c.op);
      EXPECT_TRUE(d.is_hermitian(1e-10));
      EXPECT_LT(max_diff(oracle::matmul(d, d), DenseOperator::identity(8)), 1e-10);
    }
}

TEST(DescriptorProperties, SupportMonotonicity) {
  StreamRng rng(12, 0);
  const char* names[] = {"A", "M", "B"};
  for (int t = 0; t < 30; ++t) {
    auto sets = init_descriptors(amb(), {});
    sets = evolve_descriptors(sets, two_site_unitary(rng, 0, 1));
    int a = static_cast<int>(rng.below(3)), b = (a + 1 + static_cast<int>(rng.below(2))) % 3;
    auto after = evolve_descriptors(sets, two_site_unitary(rng, a, b));
    const std::set<std::string> step{names[a], names[b]};
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto s0 = support(sets[i]);
      auto s1 = support(after[i]);
      bool touches = false;
      for (auto& x : s0) touches |= step.count(x) > 0;
      bool changed = false;
      for (std::size_t k = 0; k < sets[i].components.size(); ++k)
        changed |= !(after[i].components[k].op - sets[i].components[k].op).is_zero();
      if (!touches) EXPECT_FALSE(changed);
      for (auto& x : s1) EXPECT_TRUE(s0.count(x) || step.count(x)) << x;
    }
  }
}
