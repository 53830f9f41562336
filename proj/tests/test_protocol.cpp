#include <gtest/gtest.h>

#include "gwt/errors.hpp"
#include "gwt/mediators.hpp"
#include "gwt/protocol.hpp"
#include "oracle.hpp"

using namespace gwt;
using oracle::Ket;
using oracle::max_diff;

namespace {

ProtocolSpec identity_protocol() {
  auto spec = build_cnot_relay();
  spec.name = "identity";
  for (auto& st : spec.stages) st.steps.clear();
  return spec;
}

Ket relay_ket(const Ket& a, int stages) {
  Ket psi = oracle::product_ket({a, oracle::ket0(), oracle::ket0()});
  psi = oracle::apply_cnot(psi, 0, 1);
  if (stages > 1) psi = oracle::apply_cnot(oracle::apply_cnot(psi, 1, 2), 2, 1);
  return psi;
}

}  // namespace

TEST(Run, CnotRelayStagesPlus) {
  auto t = run(build_cnot_relay());
  ASSERT_EQ(t.records.size(), 3u);
  EXPECT_EQ(t.records[1].timestamp, "t1");
  EXPECT_EQ(t.records[2].timestamp, "t2");
  // t1: (|00> + |11>)/sqrt2 on A,M with B in |0>.
  Ket t1(8, 0.0);
  t1[0b000] = t1[0b110] = oracle::kSqrtHalf;
  EXPECT_LT(max_diff(t.records[1].plus.matrix(), oracle::projector(t1)), 1e-12);
  EXPECT_LT(max_diff(t.records[1].plus.matrix(), oracle::projector(relay_ket(oracle::ket_plus(), 1))), 1e-12);
  // t2: Bell on A,B with M in |0>.
  Ket t2(8, 0.0);
  t2[0b000] = t2[0b101] = oracle::kSqrtHalf;
  EXPECT_LT(max_diff(t.records[2].plus.matrix(), oracle::projector(t2)), 1e-12);
}

TEST(Run, CnotRelayMinusIsBellMinus) {
  auto t = run(build_cnot_relay());
  Ket t2(8, 0.0);
  t2[0b000] = oracle::kSqrtHalf;
  t2[0b101] = -oracle::kSqrtHalf;
  EXPECT_LT(max_diff(t.final_record().minus.matrix(), oracle::projector(t2)), 1e-12);
}

TEST(Run, IdentityProtocolKeepsInitializations) {
  auto spec = identity_protocol();
  auto t = run(spec);
  for (const auto& r : t.records) {
    EXPECT_LT(max_diff(r.plus.matrix(), spec.s_plus.matrix()), 1e-15);
    EXPECT_LT(max_diff(r.minus.matrix(), spec.s_minus.matrix()), 1e-15);
  }
  EXPECT_FALSE(task_te_check(t).ok);
}

TEST(Run, RejectsInvalidSpecs) {
  auto spec = build_cnot_relay();
  spec.stages[0].steps.push_back(gate_step(GateKind::H, {"B"}));
  EXPECT_THROW(run(spec), ValidationError);

  auto entangled = build_cnot_relay();
  entangled.s_plus = run(build_cnot_relay()).final_record().plus;
  EXPECT_THROW(run(entangled), ValidationError);

  auto same = build_cnot_relay();
  same.s_minus = same.s_plus;
  EXPECT_THROW(run(same), ValidationError);
}

TEST(TaskTE, Examples) {
  auto relay = task_te_check(run(build_cnot_relay()));
  EXPECT_TRUE(relay.ok);
  EXPECT_NEAR(relay.plus.negativity, 0.5, 1e-9);
  EXPECT_NEAR(relay.minus.negativity, 0.5, 1e-9);
  EXPECT_NEAR(relay.probe_distance, 1.0, 1e-9);
  EXPECT_FALSE(task_te_check(run(sample_classical_local(42, 12, 0))).ok);
}

TEST(Factorization, Examples) {
  EXPECT_TRUE(factorization_audit(build_cnot_relay()).ok);
  EXPECT_FALSE(factorization_audit(build_nonlocal_demo()).ok);
  EXPECT_TRUE(factorization_audit(build_bmv_phase({0, 0, 0, 1})).ok);
  auto only_am = build_cnot_relay();
  only_am.stages.pop_back();
  EXPECT_FALSE(factorization_audit(only_am).ok);
}

TEST(MediatorAnalysis, CnotRelay) {
  auto a = mediator_variable_analysis(run(build_cnot_relay()));
  ASSERT_FALSE(a.suppressed);
  ASSERT_FALSE(a.boundaries.empty());
  EXPECT_EQ(a.boundaries.front().timestamp, "t1");
  EXPECT_LE(a.boundaries.front().mediator_distance, 1e-9);
  EXPECT_FALSE(a.boundaries.front().mediator_distinguishable);
  EXPECT_GE(a.boundaries.front().joint_distance, 1 - 1e-9);
  EXPECT_TRUE(a.boundaries.front().joint_distinguishable);
  EXPECT_TRUE(a.non_classical_usage);
  EXPECT_NE(a.note.find("proxy"), std::string::npos);
}

TEST(MediatorAnalysis, ClassicalSampleAndNonlocalDemo) {
  EXPECT_FALSE(mediator_variable_analysis(run(sample_classical_local(42, 12, 1))).non_classical_usage);
  auto a = mediator_variable_analysis(run(build_nonlocal_demo()));
  EXPECT_TRUE(a.suppressed);
  EXPECT_TRUE(a.boundaries.empty());
}

TEST(MediatorAnalysis, BmvReportsEveryAMBoundary) {
  auto a = mediator_variable_analysis(run(build_bmv_phase({0, 0, 0, 3.14159})));
  ASSERT_EQ(a.boundaries.size(), 2u);
  EXPECT_EQ(a.boundaries[0].timestamp, "t1");
  EXPECT_EQ(a.boundaries[1].timestamp, "t3");
}

TEST(Verdict, Examples) {
  auto relay = evaluate(build_cnot_relay());
  EXPECT_EQ(relay.report.final_verdict, FinalVerdict::WitnessFiresNonclassical);
  EXPECT_TRUE(relay.report.locality_ok);
  EXPECT_TRUE(relay.report.factorization.ok);

  auto nonlocal = evaluate(build_nonlocal_demo());
  EXPECT_EQ(nonlocal.report.final_verdict, FinalVerdict::WitnessInvalidNonlocal);
  EXPECT_NEAR(nonlocal.report.task.plus.negativity, 0.5, 1e-9);

  auto classical = evaluate(sample_classical_local(42, 12, 2));
  EXPECT_EQ(classical.report.final_verdict, FinalVerdict::ClassicalConsistent);
  EXPECT_EQ(verdict_name(FinalVerdict::WitnessInvalidNonlocal), "witness_invalid_nonlocal");
}

TEST(ProtocolProperties, ClassicalLocalCertification) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto e = evaluate(sample_classical_local(7, 12, i));
    EXPECT_LE(e.report.task.plus.negativity, 1e-9);
    EXPECT_LE(e.report.task.minus.negativity, 1e-9);
  }
}

TEST(ProtocolProperties, ContrapositiveWiring) {
  std::vector<ProtocolSpec> specs{build_cnot_relay(), build_bmv_phase({0, 0, 0, 3.0}), build_nonlocal_demo()};
  for (std::uint64_t i = 0; i < 40; ++i) {
    specs.push_back(sample_quantum_local(5, 6, i));
    specs.push_back(sample_classical_local(5, 6, i));
    specs.push_back(sample_nonlocal_direct(5, 6, i));
  }
  for (const auto& s : specs) {
    auto e = evaluate(s);
    if (e.report.final_verdict == FinalVerdict::WitnessFiresNonclassical) EXPECT_TRUE(e.report.mediator.non_classical_usage);
    if (!e.report.locality_ok) EXPECT_EQ(e.report.final_verdict, FinalVerdict::WitnessInvalidNonlocal);
  }
}

TEST(ProtocolProperties, StageLocalitySoundness) {
  // Subsystems outside each stage's declared sites keep exactly the same descriptors.
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto t = run(sample_quantum_local(11, 8, i));
    for (std::size_t r = 1; r < t.records.size(); ++r) {
      const auto& before = t.records[r - 1].descriptors;
      const auto& after = t.records[r].descriptors;
      const auto sites = t.spec.stages[r - 1].site_set();
      for (std::size_t k = 0; k < before.size(); ++k) {
        if (sites.count(before[k].subsystem)) continue;
        for (std::size_t c = 0; c < before[k].components.size(); ++c)
          EXPECT_TRUE((after[k].components[c].op - before[k].components[c].op).is_zero());
      }
      for (const auto& a : t.records[r].stage_locality) EXPECT_TRUE(a.ok);
    }
  }
}

TEST(ProtocolProperties, PictureConsistency) {
  std::vector<ProtocolSpec> specs{build_cnot_relay(), build_bmv_phase({0.1, 0.2, 0.3, 0.4}), build_nonlocal_demo()};
  for (std::uint64_t i = 0; i < 20; ++i) specs.push_back(sample_quantum_local(3, 10, i));
  for (const auto& s : specs) {
    auto t = run(s);
    EXPECT_LE(t.max_picture_error, 1e-10);
    EXPECT_TRUE(t.microcausality_ok());
    // Independent recheck of one component: Tr(rho0 W^dagger Z_A W) vs Tr(W rho0 W^dagger Z_A).
    auto za = oracle::tensor(oracle::Z2(), oracle::I2(), oracle::I2());
    const auto& w = t.total_unitary;
    const cplx h = s.s_plus.expectation(oracle::matmul(oracle::matmul(oracle::dagger(w), za), w));
    const cplx sch = t.final_record().plus.expectation(za);
    EXPECT_LT(std::abs(h - sch), 1e-10);
  }
}
