#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <set>

#include "gcnnvc/constructions.hpp"
#include "gcnnvc/errors.hpp"
#include "gcnnvc/verify.hpp"

using namespace gcnnvc;

namespace {

double eval1(const DnnNetwork& net, double x) { return net(std::vector<double>{x})[0]; }

// Sum over elements of a scalar DNN applied pointwise: the lifted network
// value, computed without the GCNN code path.
double pointwise_sum(const DnnSpec& spec, const DnnParams& p, const Signal& f) {
  double total = 0.0;
  for (Element j = 0; j < f.resolution(); ++j) {
    for (double v : dnn_forward(spec, p, f.value_at(j))) total += v;
  }
  return total;
}

}  // namespace

TEST(Indicator, ValuesOnPlateauRampsAndOutside) {
  const auto net = indicator_net(0.0, 1.0, 0.5);
  EXPECT_EQ(eval1(net, 0.5), 1.0);
  EXPECT_EQ(eval1(net, 0.0), 1.0);
  EXPECT_EQ(eval1(net, 1.0), 1.0);
  EXPECT_EQ(eval1(net, -1.0), 0.0);
  EXPECT_EQ(eval1(net, -0.5), 0.0);
  EXPECT_EQ(eval1(net, 1.5), 0.0);
  EXPECT_EQ(eval1(net, 7.0), 0.0);
  EXPECT_EQ(eval1(net, -0.25), 0.5);
  EXPECT_EQ(eval1(net, 1.25), 0.5);
  EXPECT_EQ(net.spec.widths, (std::vector<std::size_t>{1, 4, 1}));
}

TEST(Indicator, RejectsBadArguments) {
  EXPECT_THROW(indicator_net(1.0, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(indicator_net(2.0, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(indicator_net(0.0, 1.0, 0.0), InvalidArgument);
}

TEST(Lift, CopiesWidthsAndWeights) {
  Rng rng(1);
  const DnnSpec spec{{2, 3, 2}};
  const auto p = DnnParams::random(spec, rng);
  const auto g = build_cyclic(5);
  const auto gnet = lift_dnn_to_gcnn(spec, p, g);
  EXPECT_EQ(gnet.spec.k, 1u);
  EXPECT_EQ(gnet.spec.widths, spec.widths);
  EXPECT_EQ(gnet.basis, identity_indicator_basis(g));
  for (std::size_t l = 0; l < 2; ++l) {
    for (std::size_t i = 0; i < p.layers[l].in; ++i) {
      for (std::size_t j = 0; j < p.layers[l].out; ++j) {
        EXPECT_EQ(gnet.params.layers[l].kernel_weights(i, j)[0], p.layers[l].weight(j, i));
      }
    }
  }
}

TEST(Lift, ZeroDnnGivesZero) {
  const DnnSpec spec{{1, 3, 1}};
  const auto g = build_dihedral(3);
  Rng rng(2);
  EXPECT_EQ(lift_dnn_to_gcnn(spec, DnnParams::zeros(spec), g)(g, random_signal(1, 6, rng)), 0.0);
}

TEST(Lift, IndicatorOnConstantSignal) {
  const auto g = build_cyclic(4);
  const auto gnet = lift_dnn_to_gcnn(indicator_net(0.0, 1.0, 0.5), g);
  EXPECT_EQ(gnet(g, Signal(std::vector<double>(4, 0.5))), 4.0);
}

TEST(Lift, RandomNetsOnDihedral) {
  const auto g = build_dihedral(3);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const DnnSpec spec{{2, 4, 3}};
    const DnnNetwork dnn{spec, DnnParams::random(spec, rng)};
    const auto f = random_signal(2, 6, rng);
    const double oracle = pointwise_sum(spec, dnn.params, f);
    EXPECT_LE(std::abs(lift_dnn_to_gcnn(dnn, g)(g, f) - oracle), 1e-9 * (1 + std::abs(oracle)));
  }
}

TEST(Juxtapose, SumsPartsAndKeepsBlocksApart) {
  Rng rng(4);
  const DnnSpec a{{2, 3, 1}}, b{{2, 2, 2}};
  const DnnNetwork na{a, DnnParams::random(a, rng)}, nb{b, DnnParams::random(b, rng)};
  const DnnNetwork parts[] = {na, nb};
  const auto both = juxtapose(parts);
  EXPECT_EQ(both.spec.widths, (std::vector<std::size_t>{2, 5, 3}));
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> x{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const auto ya = na(x), yb = nb(x), y = both(x);
    EXPECT_EQ(y, (std::vector<double>{ya[0], yb[0], yb[1]}));
  }
  const DnnNetwork mismatched[] = {na, indicator_net(0, 1, 0.5)};
  EXPECT_THROW(juxtapose(mismatched), InvalidArgument);
}

TEST(PadDepth, IdentityOnNonnegativeOutputs) {
  const auto net = indicator_net(0.0, 1.0, 0.5);
  const auto padded = pad_depth(net, 4);
  EXPECT_EQ(padded.spec.depth(), 4u);
  for (double x = -1.0; x <= 2.0; x += 0.125) EXPECT_EQ(eval1(padded, x), eval1(net, x));
  EXPECT_THROW(pad_depth(padded, 2), InvalidArgument);
}

TEST(Subsets, NamedValuesAndBijection) {
  EXPECT_TRUE(subset_index(1, 3).empty());
  EXPECT_EQ(subset_index(4, 3), (std::vector<std::size_t>{1, 2}));
  EXPECT_THROW(subset_index(0, 3), InvalidArgument);
  EXPECT_THROW(subset_index(9, 3), InvalidArgument);
  for (std::size_t m = 0; m <= 10; ++m) {
    std::set<std::vector<std::size_t>> seen;
    for (std::uint64_t i = 1; i <= (std::uint64_t{1} << m); ++i) seen.insert(subset_index(i, m));
    EXPECT_EQ(seen.size(), std::size_t{1} << m);
  }
}

TEST(Intervals, ContainSampledOutputs) {
  Rng rng(6);
  const DnnSpec spec{{2, 5, 3, 1}};
  for (int t = 0; t < 20; ++t) {
    const auto p = DnnParams::random(spec, rng);
    const std::vector<Interval> box{{-1.0, 2.0}, {0.5, 3.0}};
    const auto out = propagate_intervals(spec, p, box);
    for (int s = 0; s < 200; ++s) {
      const std::vector<double> x{rng.uniform(-1.0, 2.0), rng.uniform(0.5, 3.0)};
      const double y = dnn_forward(spec, p, x)[0];
      EXPECT_LE(out[0].lo, y);
      EXPECT_GE(out[0].hi, y);
    }
  }
}

TEST(ShatterInstance, Layout) {
  const auto inst = build_shatter_instance(build_cyclic(4), 0.0, 1.0);
  ASSERT_EQ(inst.size(), 2u);
  const auto& block = inst.blocks.front();
  EXPECT_DOUBLE_EQ(block.delta, 1.0 / 12);
  ASSERT_EQ(block.points.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(block.points[static_cast<std::size_t>(i)], (i + 1) / 12.0);
  // f_1 takes y_i where 1 is in S_i (i = 2, 4), the filler elsewhere.
  const double filler = 1.0 - 1.0 / 12;
  EXPECT_EQ(inst.functions[0], Signal(std::vector<double>{filler, block.points[1], filler, block.points[3]}));
  EXPECT_EQ(inst.functions[1], Signal(std::vector<double>{filler, filler, block.points[2], block.points[3]}));
  EXPECT_EQ(inst.threshold, 0.5);
  for (const auto& p : block.family) EXPECT_EQ(p.layers.front().weights.size(), 4u);
}

TEST(ShatterInstance, WindowSelectsItsSubset) {
  const auto inst = build_shatter_instance(build_cyclic(4), 0.0, 1.0);
  const auto& g = inst.group;
  // Labeling 1 has positive set {1} = S_2; labeling 0 is S_1 = {}.
  const double hit = inst.classifier(1)(g, inst.functions[0]);
  EXPECT_GE(hit, 1.0);
  EXPECT_NEAR(hit, 1.0, 1e-6);
  EXPECT_EQ(inst.classifier(0)(g, inst.functions[0]), 0.0);
  const auto& b = inst.blocks.front();
  for (std::size_t i = 0; i < 4; ++i) {
    const DnnNetwork window{b.spec, b.family[i]};
    if (i > 0) EXPECT_EQ(eval1(window, b.points[i - 1]), 0.0);
    if (i + 1 < 4) EXPECT_EQ(eval1(window, b.points[i + 1]), 0.0);
    EXPECT_EQ(eval1(window, 1.0 - 1.0 / 12), 0.0);
    EXPECT_GE(eval1(window, b.points[i]), 1.0);
  }
}

TEST(ShatterInstance, MarginsAreExactForEveryResolution) {
  for (std::size_t r = 2; r <= 40; ++r) {
    const auto inst = build_shatter_instance(build_cyclic(r), -3.0, 5.0);
    EXPECT_EQ(inst.size(), static_cast<std::size_t>(std::bit_width(r)) - 1);
    for (std::uint64_t q = 0; q < inst.labelings(); ++q) {
      const auto net = inst.classifier(q);
      for (std::size_t j = 0; j < inst.size(); ++j) {
        const double v = net(inst.group, inst.functions[j]);
        const bool want = (q >> j) & 1u;
        if (want) {
          EXPECT_GE(v, 1.0);
          EXPECT_NEAR(v, 1.0, 1e-6);
        } else {
          EXPECT_EQ(v, 0.0);
        }
      }
    }
  }
}

TEST(ShatterInstance, Preconditions) {
  EXPECT_THROW(build_shatter_instance(build_cyclic(4), 1e9, 1e9 + 1e-3), InvalidArgument);
  EXPECT_THROW(build_shatter_instance(build_cyclic(1), 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(build_shatter_instance(build_cyclic(4), 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(build_shatter_instance(build_grid_translation(2, 2), 0.0, 1.0), UnsupportedOperation);
}

TEST(Composite, SingleBlockMatchesPlainInstance) {
  const auto g = build_cyclic(8);
  const auto one = build_composite_instance(g, 1);
  const auto plain = build_shatter_instance(g, 11.0, 16.0);  // m = 3: [(2m+5), (2m+5)+m+2]
  EXPECT_EQ(one.functions, plain.functions);
  for (std::uint64_t q = 0; q < 8; ++q) EXPECT_EQ(one.classifier_dnn(q), plain.classifier_dnn(q));
}

TEST(Composite, TwoBlocksOnZ4ShatterFour) {
  const auto inst = build_composite_instance(build_cyclic(4), 2);
  EXPECT_EQ(inst.size(), 4u);
  const auto rep = verify_shattering(inst);
  EXPECT_TRUE(rep.success);
  EXPECT_EQ(rep.realized, 16u);
  EXPECT_EQ(inst.class_spec().widths, (std::vector<std::size_t>{1, 8, 2}));
}

TEST(Composite, BlocksVanishOnOtherBlocks) {
  const auto inst = build_composite_instance(build_cyclic(8), 3);
  for (const auto& block : inst.blocks) {
    for (const auto& p : block.family) {
      for (std::size_t j = 0; j < inst.size(); ++j) {
        if (j >= block.first && j < block.first + block.count) continue;
        EXPECT_EQ(pointwise_sum(block.spec, p, inst.functions[j]), 0.0);
      }
    }
  }
  EXPECT_THROW(build_composite_instance(build_cyclic(8), 0), InvalidArgument);
  EXPECT_THROW(build_composite_instance(build_cyclic(1), 2), InvalidArgument);
}

TEST(LinearFamily, ShattersSmallSets) {
  const auto fam = linear_threshold_family({{-0.5}, {0.5}});
  EXPECT_EQ(fam.nets.size(), 4u);
  EXPECT_NO_THROW(fam.check());
  EXPECT_THROW(linear_threshold_family({{0.0}, {1.0}, {2.0}}), InvalidArgument);
}

TEST(HypercubeLift, TwoPointsOnZ4) {
  const auto fam = linear_threshold_family({{-0.5}, {0.5}});
  const auto inst = build_hypercube_lift(fam, build_cyclic(4), 2.0, 3.0);
  EXPECT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst.threshold, 0.0);
  const auto rep = verify_shattering(inst);
  EXPECT_TRUE(rep.success);
  EXPECT_EQ(rep.realized, 4u);
  for (std::uint64_t q = 0; q < 4; ++q) {
    EXPECT_EQ(inst.classifier_dnn(q).spec.depth(), 3u);
    EXPECT_GE(inst.blocks.front().output_bounds[q], 0.0);
  }
}

TEST(HypercubeLift, VanishesOnCubeValuedSignals) {
  const auto fam = linear_threshold_family({{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}});
  const auto g = build_dihedral(3);
  const auto inst = build_hypercube_lift(fam, g, 3.0, 5.0);
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_signal(2, 6, rng, 3.0, 5.0);
    for (std::uint64_t q = 0; q < inst.labelings(); ++q) {
      const auto dnn = inst.classifier_dnn(q);
      // Pre-activation of the final unit is non-positive at every element.
      for (Element e = 0; e < 6; ++e) EXPECT_EQ(dnn(f.value_at(e))[0], 0.0);
      EXPECT_LE(std::abs(inst.classifier(q)(g, f)), 1e-12);
    }
  }
}

TEST(HypercubeLift, PaddedIndicatorUnchanged) {
  const auto cube = hypercube_indicator(2, 3.0, 5.0);
  const auto padded = pad_depth(cube, 4);
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> in{rng.uniform(3, 5), rng.uniform(3, 5)};
    EXPECT_EQ(padded(in), cube(in));
    EXPECT_NEAR(cube(in)[0], 1.0, 1e-12);
  }
  for (const std::vector<double>& y : {std::vector<double>{1, 0}, {0, 1}, {0, 0}}) {
    EXPECT_EQ(padded(y)[0], 0.0);
  }
}

TEST(HypercubeLift, Preconditions) {
  const auto fam = linear_threshold_family({{-0.5}, {0.5}});
  EXPECT_THROW(build_hypercube_lift(fam, build_cyclic(4), 1.5, 3.0), InvalidArgument);
  EXPECT_THROW(build_hypercube_lift(fam, build_cyclic(4), 2.0, 2.0), InvalidArgument);
  auto broken = fam;
  broken.thresholds[3] = 100.0;
  EXPECT_THROW(build_hypercube_lift(broken, build_cyclic(4), 2.0, 3.0), InvalidArgument);
}

TEST(HypercubeLift, ParameterBudget) {
  // Nonzero parameters of each lifted classifier against six times the
  // dense weight count of the base class.
  for (const auto& pts : {std::vector<std::vector<double>>{{-0.5}, {0.5}},
                          std::vector<std::vector<double>>{{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}}}) {
    const auto fam = linear_threshold_family(pts);
    const auto inst = build_hypercube_lift(fam, build_cyclic(3), 3.0, 5.0);
    std::uint64_t W = 0;
    for (auto w : count_dnn_weights(fam.spec)) W += w;
    for (std::uint64_t q = 0; q < inst.labelings(); ++q) {
      EXPECT_LE(count_nonzero(inst.classifier_dnn(q).params), 6 * W) << q;
    }
  }
}
