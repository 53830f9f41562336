#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "gwt/errors.hpp"
#include "gwt/linalg.hpp"
#include "gwt/nonclassicality.hpp"
#include "gwt/rng.hpp"
#include "gwt/steps.hpp"
#include "oracle.hpp"

using namespace gwt;

namespace {

VariableSpec spec_of(std::size_t dim, std::vector<std::vector<std::vector<cplx>>> attrs, std::string name = "V") {
  VariableSpec v{std::move(name), dim, {}};
  for (std::size_t i = 0; i < attrs.size(); ++i) v.attributes.push_back({"a" + std::to_string(i), std::move(attrs[i])});
  return v;
}

std::vector<DenseOperator> projectors(const std::vector<VariableSpec>& vars) {
  std::vector<DenseOperator> out;
  for (const auto& v : vars)
    for (std::size_t i = 0; i < v.attributes.size(); ++i) out.push_back(v.projector(i));
  return out;
}

// Z basis with shuffled order and random phases: the same variable in disguise.
VariableSpec disguised_z(std::size_t d, StreamRng& rng) {
  std::vector<std::size_t> order(d);
  for (std::size_t i = 0; i < d; ++i) order[i] = i;
  for (std::size_t i = d; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  DenseOperator u(d);
  for (std::size_t c = 0; c < d; ++c) u(order[c], c) = std::polar(1.0, rng.uniform(0, 6.28));
  return basis_from_columns(u, "V");
}

}  // namespace

TEST(AlgebraClosure, Examples) {
  auto z = algebra_closure({oracle::Z2()});
  EXPECT_EQ(z.dimension(), 2u);
  EXPECT_TRUE(z.commutative);
  auto zx = algebra_closure({oracle::Z2(), oracle::X2()});
  EXPECT_EQ(zx.dimension(), 4u);
  EXPECT_FALSE(zx.commutative);
  auto zz = algebra_closure({oracle::tensor(oracle::Z2(), oracle::I2()), oracle::tensor(oracle::I2(), oracle::Z2())});
  EXPECT_EQ(zz.dimension(), 4u);
  EXPECT_TRUE(zz.commutative);
  EXPECT_THROW(algebra_closure({oracle::Z2(), DenseOperator::identity(4)}), ValidationError);
}

TEST(AlgebraClosure, BasisIsOrthonormalAndHermitian) {
  auto alg = algebra_closure({oracle::Z2(), oracle::X2()});
  for (std::size_t i = 0; i < alg.dimension(); ++i) {
    EXPECT_TRUE(alg.elements[i].is_hermitian(1e-12));
    for (std::size_t j = 0; j < alg.dimension(); ++j) {
      cplx ip = 0;
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) ip += std::conj(alg.elements[i](r, c)) * alg.elements[j](r, c);
      EXPECT_NEAR(std::abs(ip), i == j ? 1.0 : 0.0, 1e-12);
    }
  }
  EXPECT_NEAR(alg.elements[0](0, 0).real(), oracle::kSqrtHalf, 1e-12);
}

TEST(AlgebraClosure, Idempotent) {
  StreamRng rng(4, 0);
  for (int t = 0; t < 10; ++t) {
    std::vector<DenseOperator> gens{random_hermitian(3, rng)};
    if (t % 2) gens.push_back(DenseOperator::diagonal(std::vector<cplx>{1, 0, 0}));
    auto once = algebra_closure(gens);
    auto twice = algebra_closure(once.elements);
    EXPECT_EQ(once.dimension(), twice.dimension());
    EXPECT_EQ(once.commutative, twice.commutative);
  }
}

TEST(AlgebraClosure, CommutativityMatchesClassicalCompatibility) {
  auto layout = make_layout({{"A", 2}, {"M", 2}, {"B", 2}});
  const auto zm = to_dense(PauliOp::term(layout, "IZI"));
  StreamRng rng(21, 0);
  const char* letters = "IXYZ";
  for (int t = 0; t < 40; ++t) {
    std::string text = "III";
    text[0] = letters[1 + rng.below(3)];
    text[1] = letters[rng.below(4)];
    auto step = generator_step({"A", "M"}, PauliOp::term(layout, text), rng.uniform(0.1, 3.0));
    auto u = step_unitary(step, layout);
    const auto re = cplx(0.5) * (u + u.adjoint());
    const auto im = cplx(0, -0.5) * (u - u.adjoint());
    const bool commutative = algebra_closure({zm, re, im}).commutative;
    EXPECT_EQ(commutative, classical_compatibility(step, layout, "M").compatible) << text;
  }
}

TEST(InformationVariable, Examples) {
  EXPECT_TRUE(information_variable_check(computational_basis(2)).ok);
  auto bad = spec_of(2, {{{1, 0}}, {{oracle::kSqrtHalf, oracle::kSqrtHalf}}});
  auto r = information_variable_check(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_NEAR(r.max_overlap, oracle::kSqrtHalf, 1e-12);
  auto blocks = spec_of(4, {{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}});
  auto rb = information_variable_check(blocks);
  EXPECT_TRUE(rb.ok);
  EXPECT_TRUE(rb.permutation_unitary_exists);
}

TEST(InformationVariable, MalformedSubspaces) {
  EXPECT_THROW(information_variable_check(spec_of(2, {{{1, 1}}, {{0, 1}}})), ValidationError);
  EXPECT_THROW(information_variable_check(spec_of(2, {{{1, 0, 0}}, {{0, 1}}})), ValidationError);
  EXPECT_THROW(information_variable_check(spec_of(2, {{{1, 0}}})), ValidationError);
}

TEST(InformationVariable, PermutationInvariant) {
  StreamRng rng(6, 0);
  for (int t = 0; t < 20; ++t) {
    auto u = random_unitary(3, rng);
    VariableSpec v = basis_from_columns(u, "V");
    if (t % 2) v.attributes[1].vectors[0] = random_ket(3, rng);
    auto r0 = information_variable_check(v);
    std::reverse(v.attributes.begin(), v.attributes.end());
    auto r1 = information_variable_check(v);
    EXPECT_EQ(r0.ok, r1.ok);
    EXPECT_NEAR(r0.max_overlap, r1.max_overlap, 1e-12);
  }
}

TEST(Superinformation, Examples) {
  auto zx = superinformation_check(computational_basis(2), qubit_x_basis());
  EXPECT_TRUE(zx.ok);
  EXPECT_NEAR(zx.max_cross_overlap, oracle::kSqrtHalf, 1e-12);

  auto relabeled = spec_of(2, {{{0, 1}}, {{1, 0}}});
  auto same = superinformation_check(computational_basis(2), relabeled);
  EXPECT_FALSE(same.ok);
  EXPECT_FALSE(same.disjoint);

  DenseOperator perm(4);
  perm(0, 1) = perm(1, 0) = perm(2, 3) = perm(3, 2) = 1;
  auto permuted = superinformation_check(computational_basis(4), basis_from_columns(perm, "P"));
  EXPECT_FALSE(permuted.ok);
  EXPECT_TRUE(permuted.union_is_variable);

  EXPECT_THROW(superinformation_check(computational_basis(2), computational_basis(3)), ValidationError);
}

TEST(Classify, Examples) {
  EXPECT_FALSE(classify_system({computational_basis(2)}).non_classical);
  auto c = classify_system({computational_basis(2, "Z"), qubit_x_basis("X")});
  EXPECT_TRUE(c.non_classical);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(*c.witness, (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(c.name(), "non-classical");

  // Z on qubit 1 and Z on qubit 2 of a two-qubit system.
  auto z1 = spec_of(4, {{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}}, "Z1");
  auto z2 = spec_of(4, {{{1, 0, 0, 0}, {0, 0, 1, 0}}, {{0, 1, 0, 0}, {0, 0, 0, 1}}}, "Z2");
  EXPECT_FALSE(classify_system({z1, z2}).non_classical);
  EXPECT_TRUE(algebra_closure(projectors({z1, z2})).commutative);
}

TEST(Classify, MatchesAlgebraNonCommutativity) {
  StreamRng rng(77, 0);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = 2 + rng.below(2);
    VariableSpec z = computational_basis(d, "Z");
    VariableSpec v = rng.below(2) ? basis_from_columns(random_unitary(d, rng), "V") : disguised_z(d, rng);
    const bool non_classical = classify_system({z, v}).non_classical;
    const bool non_commutative = !algebra_closure(projectors({z, v})).commutative;
    EXPECT_EQ(non_classical, non_commutative);
  }
}
