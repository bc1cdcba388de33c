#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gcnnvc/errors.hpp"
#include "gcnnvc/group.hpp"

using namespace gcnnvc;

TEST(Cyclic, TablesMatchModularArithmetic) {
  const auto g = build_cyclic(4);
  EXPECT_EQ(g.resolution(), 4u);
  EXPECT_TRUE(g.closed());
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inverse(1), 3u);
  EXPECT_EQ(g.difference(1, 3), 2u);
  for (Element a = 0; a < 4; ++a) {
    for (Element b = 0; b < 4; ++b) EXPECT_EQ(g.compose(a, b), (a + b) % 4);
  }
}

TEST(Cyclic, TrivialGroup) {
  const auto g = build_cyclic(1);
  EXPECT_EQ(g.resolution(), 1u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.difference(0, 0), 0u);
  EXPECT_TRUE(validate_group_axioms(g).ok());
}

TEST(Cyclic, ZeroRejected) { EXPECT_THROW(build_cyclic(0), InvalidArgument); }

TEST(Dihedral, OrderAndNonCommutativity) {
  const auto g = build_dihedral(3);
  EXPECT_EQ(g.resolution(), 6u);
  bool noncommuting = false;
  for (Element a = 0; a < 6; ++a) {
    EXPECT_EQ(g.inverse(g.inverse(a)), a);
    for (Element b = 0; b < 6; ++b) noncommuting |= g.compose(a, b) != g.compose(b, a);
  }
  EXPECT_TRUE(noncommuting);
}

TEST(Dihedral, SmallNRejected) {
  EXPECT_THROW(build_dihedral(2), InvalidArgument);
  EXPECT_THROW(build_dihedral(0), InvalidArgument);
}

// Element s*n+k acts on vertices of the n-gon as v -> (-1)^s (v + k).
TEST(Dihedral, MatchesPolygonSymmetries) {
  for (std::size_t n : {3u, 4u, 7u}) {
    const auto g = build_dihedral(n);
    auto act = [n](Element e, std::size_t v) {
      const std::size_t moved = (v + e % n) % n;
      return e / n ? (n - moved) % n : moved;
    };
    for (Element a = 0; a < 2 * n; ++a) {
      for (Element b = 0; b < 2 * n; ++b) {
        for (std::size_t v = 0; v < n; ++v) {
          ASSERT_EQ(act(g.compose(a, b), v), act(a, act(b, v))) << "n=" << n;
        }
      }
    }
  }
}

TEST(Grid, ShapesAndDifferences) {
  EXPECT_EQ(build_grid_translation(28, 28).resolution(), 784u);
  const auto g = build_grid_translation(2, 2);
  EXPECT_EQ(g.diff_count(), 9u);
  EXPECT_FALSE(g.closed());
  const auto one = build_grid_translation(1, 1);
  EXPECT_EQ(one.resolution(), 1u);
  EXPECT_EQ(one.diff_count(), 1u);
  EXPECT_THROW(build_grid_translation(0, 3), InvalidArgument);
  EXPECT_THROW(g.compose(0, 1), UnsupportedOperation);
}

TEST(Grid, DifferenceIsCoordinateOffset) {
  const std::size_t H = 3, W = 4;
  const auto g = build_grid_translation(H, W);
  for (Element i = 0; i < H * W; ++i) {
    EXPECT_EQ(g.difference(i, i), g.identity_difference());
    for (Element j = 0; j < H * W; ++j) {
      const long dr = static_cast<long>(j / W) - static_cast<long>(i / W);
      const long dc = static_cast<long>(j % W) - static_cast<long>(i % W);
      EXPECT_EQ(g.difference(i, j), g.grid_offset_index(dr, dc));
    }
  }
}

TEST(Product, KleinAndOrders) {
  const auto v4 = build_product(build_cyclic(2), build_cyclic(2));
  EXPECT_EQ(v4.resolution(), 4u);
  for (Element a = 0; a < 4; ++a) EXPECT_EQ(v4.inverse(a), a);
  EXPECT_EQ(build_product(build_cyclic(2), build_cyclic(3)).resolution(), 6u);
  EXPECT_THROW(build_product(build_grid_translation(2, 2), build_cyclic(2)), UnsupportedOperation);
}

TEST(Validation, BuiltGroupsPass) {
  EXPECT_TRUE(validate_group_axioms(build_cyclic(5)).ok());
  EXPECT_TRUE(validate_group_axioms(build_dihedral(4)).ok());
  EXPECT_TRUE(validate_group_axioms(build_group("product:(dihedral:3,cyclic:4)")).ok());
  EXPECT_THROW(validate_group_axioms(build_grid_translation(2, 2)), UnsupportedOperation);
}

TEST(Validation, CorruptedTableReported) {
  const auto g = build_cyclic(4);
  auto compose = std::vector<std::uint32_t>(g.compose_table().begin(), g.compose_table().end());
  auto inverse = std::vector<std::uint32_t>(g.inverse_table().begin(), g.inverse_table().end());
  compose[0 * 4 + 1] = 2;
  const auto bad = DiscretizedGroup::from_tables(compose, inverse, 0, "corrupt");
  const auto rep = validate_group_axioms(bad);
  EXPECT_FALSE(rep.ok());
  const bool listed = std::any_of(rep.violations.begin(), rep.violations.end(), [](const auto& v) {
    return v.kind == AxiomKind::associativity || v.kind == AxiomKind::identity;
  });
  EXPECT_TRUE(listed);
}

TEST(Validation, DifferenceTableFromComposeAndInverse) {
  for (const char* desc : {"cyclic:7", "dihedral:5", "product:(cyclic:2,dihedral:3)"}) {
    const auto g = build_group(desc);
    for (Element i = 0; i < g.resolution(); ++i) {
      for (Element j = 0; j < g.resolution(); ++j) {
        EXPECT_EQ(g.difference(i, j), g.compose(g.inverse(i), j)) << desc;
      }
    }
  }
}

TEST(LeftAction, CyclicShift) {
  const auto g = build_cyclic(4);
  EXPECT_EQ(left_action_permutation(g, 0), (Permutation{0, 1, 2, 3}));
  EXPECT_EQ(left_action_permutation(g, 1), (Permutation{3, 0, 1, 2}));
  EXPECT_THROW(left_action_permutation(g, 4), InvalidArgument);
  EXPECT_THROW(left_action_permutation(build_grid_translation(2, 2), 0), UnsupportedOperation);
}

// (a o (b o f))(x) = f(b^-1 a^-1 x) = ((a b) o f)(x), so pi_{ab} = pi_b o pi_a.
TEST(LeftAction, CompositionLawExhaustive) {
  for (const char* desc : {"cyclic:4", "dihedral:4", "product:(cyclic:2,cyclic:3)"}) {
    const auto g = build_group(desc);
    const std::size_t r = g.resolution();
    for (Element a = 0; a < r; ++a) {
      const auto pa = left_action_permutation(g, a);
      auto sorted = pa;
      std::sort(sorted.begin(), sorted.end());
      Permutation iota(r);
      std::iota(iota.begin(), iota.end(), 0);
      EXPECT_EQ(sorted, iota);
      for (Element b = 0; b < r; ++b) {
        const auto pb = left_action_permutation(g, b);
        const auto pab = left_action_permutation(g, g.compose(a, b));
        for (Element j = 0; j < r; ++j) ASSERT_EQ(pab[j], pb[pa[j]]) << desc;
      }
    }
  }
}

TEST(Descriptor, ParseAndPrint) {
  for (const char* s : {"cyclic:8", "dihedral:3", "grid:28x28", "product:(cyclic:2,product:(cyclic:3,dihedral:4))"}) {
    EXPECT_EQ(GroupDescriptor::parse(s).to_string(), s);
  }
  for (const char* bad : {"", "cyclic", "cyclic:x", "torus:3", "grid:3", "product:(cyclic:2)",
                          "product:(cyclic:2,cyclic:3"}) {
    EXPECT_THROW(GroupDescriptor::parse(bad), InvalidArgument) << bad;
  }
  EXPECT_EQ(build_group("product:(cyclic:2,dihedral:3)").resolution(), 12u);
}
