#include <gtest/gtest.h>

#include <cstdlib>

#include "gcnnvc/constructions.hpp"
#include "gcnnvc/errors.hpp"
#include "gcnnvc/verify.hpp"

using namespace gcnnvc;

TEST(Shattering, IntervalInstanceOnZ8) {
  const auto rep = verify_shattering(build_shatter_instance(build_cyclic(8), 0.0, 1.0));
  EXPECT_EQ(rep.m, 3u);
  EXPECT_EQ(rep.labelings_total, 8u);
  EXPECT_EQ(rep.checked, 8u);
  EXPECT_EQ(rep.realized, 8u);
  EXPECT_EQ(rep.distinct_patterns, 8u);
  EXPECT_TRUE(rep.success);
  EXPECT_TRUE(rep.certified);
  EXPECT_EQ(rep.max_margin_violation, 0.0);
  EXPECT_GE(rep.min_margin, 0.5 - 1e-12);
  EXPECT_TRUE(rep.failed_labelings.empty());
  EXPECT_EQ(rep.provenance, Construction::interval_indicator);
}

TEST(Shattering, RaisedThresholdIsReported) {
  auto inst = build_shatter_instance(build_cyclic(8), 0.0, 1.0);
  inst.threshold = 1.5;
  const auto rep = verify_shattering(inst);
  EXPECT_FALSE(rep.success);
  // Only the all-negative labeling survives.
  EXPECT_EQ(rep.realized, 1u);
  EXPECT_EQ(rep.failed_labelings, (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_NEAR(rep.max_margin_violation, 0.5, 1e-6);
  EXPECT_LT(rep.min_margin, 0.0);
}

TEST(Shattering, BrokenFamilyMemberIsReported) {
  auto inst = build_shatter_instance(build_cyclic(4), 0.0, 1.0);
  // Zero the output weights of labeling 3's window.
  for (auto& w : inst.blocks.front().family[3].layers.back().weights) w = 0.0;
  const auto rep = verify_shattering(inst);
  EXPECT_FALSE(rep.success);
  EXPECT_EQ(rep.failed_labelings, (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(rep.realized, 3u);
  EXPECT_EQ(rep.distinct_patterns, 3u);
}

TEST(Shattering, EmptyInstanceIsVacuous) {
  const ShatterInstance inst{build_cyclic(4), {}, {}, 0.5, Construction::custom};
  const auto rep = verify_shattering(inst);
  EXPECT_EQ(rep.m, 0u);
  EXPECT_TRUE(rep.success);
  EXPECT_EQ(rep.labelings_total, 1u);
}

TEST(Shattering, LargeInstancesNeedSampling) {
  const auto inst = build_composite_instance(build_cyclic(4), 11);
  ASSERT_EQ(inst.size(), 22u);
  EXPECT_THROW(verify_shattering(inst), ResourceLimit);
  VerifyOptions opt;
  opt.allow_sampling = true;
  opt.samples = 64;
  opt.seed = 3;
  const auto rep = verify_shattering(inst, opt);
  EXPECT_FALSE(rep.certified);
  EXPECT_FALSE(rep.success);
  // Duplicate draws are dropped.
  EXPECT_LE(rep.checked, 64u);
  EXPECT_GE(rep.checked, 60u);
  EXPECT_EQ(rep.realized, rep.checked);
}

TEST(Shattering, SameReportForAnyThreadCount) {
  const auto inst = build_composite_instance(build_cyclic(8), 3);
  VerifyOptions one;
  one.threads = 1;
  VerifyOptions many;
  many.threads = 7;
  const auto a = verify_shattering(inst, one);
  const auto b = verify_shattering(inst, many);
  EXPECT_EQ(a.realized, b.realized);
  EXPECT_EQ(a.distinct_patterns, b.distinct_patterns);
  EXPECT_EQ(a.min_margin, b.min_margin);
  EXPECT_EQ(a.failed_labelings, b.failed_labelings);
  EXPECT_TRUE(a.success);
}

TEST(Shattering, EnvironmentCapsThreads) {
  ::setenv("GCNNVC_THREADS", "2", 1);
  EXPECT_EQ(verifier_threads(8), 2u);
  EXPECT_EQ(verifier_threads(1), 1u);
  ::unsetenv("GCNNVC_THREADS");
  EXPECT_EQ(verifier_threads(3), 3u);
  EXPECT_GE(verifier_threads(0), 1u);
}

TEST(Invariance, IdentityElementIsExact) {
  const auto g = build_dihedral(4);
  const GcnnSpec spec{2, {1, 3, 1}, 8};
  Rng rng(1);
  const auto p = GcnnParams::random(spec, rng);
  const auto basis = random_basis(g, 2, rng);
  const auto rep = verify_invariance(spec, p, basis, g, 20, 5, g.identity());
  EXPECT_EQ(rep.max_abs_deviation, 0.0);
  EXPECT_TRUE(rep.passed);
}

TEST(Invariance, RandomElementsOnZ8) {
  const auto g = build_cyclic(8);
  const GcnnSpec spec{3, {2, 4, 2}, 8};
  Rng rng(2);
  const auto p = GcnnParams::random(spec, rng);
  const auto rep = verify_invariance(spec, p, random_basis(g, 3, rng), g, 100, 9);
  EXPECT_EQ(rep.trials, 100u);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.max_rel_deviation, 1e-9);
}

TEST(Invariance, GridUnsupported) {
  const auto g = build_grid_translation(3, 3);
  const GcnnSpec spec{9, {1, 1}, 9};
  EXPECT_THROW(verify_invariance(spec, GcnnParams::zeros(spec), cnn_window_basis(g, 3), g, 5, 1),
               UnsupportedOperation);
}

TEST(LiftEquality, ZeroAndRandomNets) {
  const auto g = build_dihedral(3);
  const DnnSpec zero_spec{{1, 2, 1}};
  const DnnNetwork zero{zero_spec, DnnParams::zeros(zero_spec)};
  EXPECT_EQ(verify_lift_equality(zero, lift_dnn_to_gcnn(zero, g), g, 10, 1).max_residual, 0.0);

  Rng rng(4);
  const DnnSpec spec{{2, 5, 3, 2}};
  const DnnNetwork dnn{spec, DnnParams::random(spec, rng)};
  const auto rep = verify_lift_equality(dnn, lift_dnn_to_gcnn(dnn, g), g, 50, 2);
  EXPECT_EQ(rep.trials, 50u);
  EXPECT_LE(rep.max_rel_residual, 1e-9);
}

TEST(LiftEquality, WrongBasisShowsResidual) {
  const auto g = build_cyclic(5);
  // relu(x + 100) is the identity shifted by 100 on the sampled range, so
  // the lifted sum is sum(f) + 500 and a 1.5-weighted basis moves it.
  const DnnSpec spec{{1, 1}};
  DnnNetwork dnn{spec, DnnParams::zeros(spec)};
  dnn.params.layers[0].weights = {1.0};
  dnn.params.layers[0].biases = {-100.0};
  auto gnet = lift_dnn_to_gcnn(dnn, g);
  gnet.basis = KernelBasis(1, 5, {0.0, 1.0, 0.0, 0.0, 0.5});
  EXPECT_GT(verify_lift_equality(dnn, gnet, g, 20, 3).max_residual, 1e-6);
}

TEST(BoundConsistency, IntervalAndCompositeInstances) {
  const auto inst = build_shatter_instance(build_cyclic(16), 0.0, 1.0);
  const auto c = verify_bound_consistency(inst, GcnnSpec{1, {1, 4, 1}, 16});
  EXPECT_EQ(c.m, 4u);
  EXPECT_GE(c.vc_upper, 4u);
  EXPECT_TRUE(c.holds);

  const auto comp = build_composite_instance(build_cyclic(8), 3);
  EXPECT_EQ(comp.class_spec(), (GcnnSpec{1, {1, 12, 3}, 8}));
  EXPECT_TRUE(verify_bound_consistency(comp, comp.class_spec()).holds);
  EXPECT_TRUE(verify_bound_consistency(comp, GcnnSpec{2, {1, 20, 5}, 8}).holds);
}

TEST(BoundConsistency, RejectsSpecsNotContainingTheInstance) {
  const auto comp = build_composite_instance(build_cyclic(8), 3);
  EXPECT_THROW(verify_bound_consistency(comp, GcnnSpec{1, {1, 4, 1}, 8}), InvalidArgument);
  EXPECT_THROW(verify_bound_consistency(comp, GcnnSpec{1, {1, 12, 3}, 16}), InvalidArgument);
  EXPECT_THROW(verify_bound_consistency(comp, GcnnSpec{1, {1, 12, 3, 3}, 8}), InvalidArgument);
  EXPECT_THROW(verify_bound_consistency(comp, GcnnSpec{1, {2, 12, 3}, 8}), InvalidArgument);
}
