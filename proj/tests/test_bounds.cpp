#include <gtest/gtest.h>

#include "support.hpp"

using namespace flowforge;
using namespace fftest;

namespace {

std::size_t ceil_frac(std::size_t m, std::size_t num, std::size_t den) { return (num * m + den - 1) / den; }

// Perfect matchings by trying every edge subset of size n/2.
std::size_t count_matchings_oracle(const MultiGraph& g) {
  const std::size_t m = g.edge_count(), half = g.vertex_count() / 2;
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != half) continue;
    std::set<VertexId> hit;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      if (mask >> i & 1) {
        const Edge& e = g.edges()[i];
        ok = !e.is_loop() && hit.insert(e.u).second && hit.insert(e.v).second;
      }
    count += ok;
  }
  return count;
}

std::size_t nullity(const MultiGraph& g) { return g.edge_count() - g.vertex_count() + 1; }

}  // namespace

TEST(ThreeQuarter, Examples) {
  const auto c5 = three_quarter_flow(named("C5"));
  EXPECT_EQ(c5.support, 5u);
  const auto k4 = three_quarter_flow(named("K4"));
  EXPECT_GE(k4.support, 5u);
  EXPECT_TRUE(k4.boundary_ok);
  const auto pet = three_quarter_flow(named("Petersen"));
  EXPECT_GE(pet.support, 12u);
  EXPECT_TRUE(pet.boundary_ok);
  MultiGraph bridge(2);
  bridge.add_edge(0, 1);
  EXPECT_THROW(three_quarter_flow(bridge), PreconditionError);
}

TEST(ThreeQuarter, CatalogBoundAndClassArithmetic) {
  int checked = 0;
  for (const auto& g : catalog_filtered("connected_le7.g6", "2ec")) {
    if (nullity(g) > 5) continue;
    const auto r = three_quarter_flow_detailed(g);
    const auto m = g.edge_count();
    ASSERT_TRUE(r.certificate.boundary_ok);
    ASSERT_GE(r.certificate.support, ceil_frac(m, 3, 4)) << write_edgelist(g);
    ASSERT_EQ(is_flow_with_boundary(WeightedGraph::zero(g), r.certificate.labelling).support, r.certificate.support);
    if (!r.eulerian) {
      ASSERT_EQ(r.class_counts[0] + r.class_counts[1] + r.class_counts[2] + r.class_counts[3], m);
      ASSERT_EQ(r.certificate.support, m - r.class_counts[r.dropped_class]);
      ASSERT_EQ(r.class_counts[r.dropped_class], *std::min_element(r.class_counts.begin(), r.class_counts.end()));
    }
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Matchings, CountsAgreeWithSubsetOracle) {
  for (const char* name : {"K4", "K3_3", "Prism", "Cube", "Petersen", "Theta"}) {
    const auto g = named(name);
    const auto ms = perfect_matchings(g);
    EXPECT_EQ(ms.size(), count_matchings_oracle(g)) << name;
  }
  EXPECT_EQ(perfect_matchings(named("K4")).size(), 3u);
  EXPECT_EQ(perfect_matchings(named("K3_3")).size(), 6u);
  EXPECT_EQ(perfect_matchings(named("Petersen")).size(), 6u);
}

TEST(Matchings, PairExamples) {
  EXPECT_EQ(matching_pair_small_intersection(named("K4"), {}).intersection_weight, 0u);
  EXPECT_EQ(matching_pair_small_intersection(named("K3_3"), {}).intersection_weight, 0u);
  const auto p = matching_pair_small_intersection(named("Petersen"), {});
  EXPECT_EQ(p.intersection_weight, 1u);
  EXPECT_EQ(p.total_weight, 15u);
  EXPECT_THROW(matching_pair_small_intersection(named("C4"), {}), PreconditionError);
}

TEST(Matchings, WeightedPairMeetsFifteenth) {
  std::mt19937_64 rng(51);
  for (const auto& g : catalog_filtered("cubic_le10.g6", "2ec")) {
    std::map<EdgeId, std::size_t> w;
    for (const Edge& e : g.edges()) w[e.id] = 1 + rng() % 5;
    const auto p = matching_pair_small_intersection(g, w);
    EXPECT_LE(15 * p.intersection_weight, p.total_weight);
  }
}

TEST(Mader, Examples) {
  const auto k4 = named("K4");
  const auto id = mader_lift_to_subcubic(k4);
  EXPECT_TRUE(id.trace.empty());
  EXPECT_EQ(id.total_weight(), 6u);

  auto k5 = named("K5");
  k5.add_edge(0, 1);  // K5 itself is Eulerian
  const auto r = mader_lift_to_subcubic(k5);
  for (VertexId v : r.lifted.vertices()) EXPECT_LE(r.lifted.degree(v), 3u);
  EXPECT_TRUE(is_cubic(r.suppressed.graph));
  EXPECT_EQ(r.total_weight(), k5.edge_count());
  EXPECT_EQ(r.lifted.edge_count(), k5.edge_count());
  EXPECT_TRUE(is_k_edge_connected(r.lifted, 2));
}

TEST(Mader, WeightBookkeepingOnCatalog) {
  for (const auto& g : catalog_filtered("connected_le7.g6", "2ec")) {
    if (is_eulerian(g)) continue;
    const auto r = mader_lift_to_subcubic(g);
    ASSERT_EQ(r.total_weight(), g.edge_count());
    ASSERT_TRUE(is_cubic(r.suppressed.graph)) << write_edgelist(g);
    ASSERT_TRUE(is_k_edge_connected(r.lifted, 2));
    for (VertexId v : r.lifted.vertices()) ASSERT_LE(r.lifted.degree(v), 3u);
  }
}

TEST(FourteenFifteenths, Examples) {
  EXPECT_EQ(fourteen_fifteenths_flow(named("Petersen")).support, 14u);
  EXPECT_EQ(fourteen_fifteenths_flow(named("C7")).support, 7u);
  EXPECT_EQ(fourteen_fifteenths_flow(named("K4")).support, 6u);
  MultiGraph bridge(2);
  bridge.add_edge(0, 1);
  EXPECT_THROW(fourteen_fifteenths_flow(bridge), PreconditionError);
}

TEST(FourteenFifteenths, CatalogBound) {
  for (const auto& g : catalog_filtered("connected_le7.g6", "2ec")) {
    const auto c = fourteen_fifteenths_flow(g);
    ASSERT_TRUE(c.boundary_ok);
    ASSERT_GE(c.support, ceil_frac(g.edge_count(), 14, 15)) << write_edgelist(g);
  }
  for (const auto& g : catalog_filtered("cubic_le10.g6", "2ec")) {
    const auto c = fourteen_fifteenths_flow(g);
    ASSERT_TRUE(c.boundary_ok);
    ASSERT_GE(c.support, ceil_frac(g.edge_count(), 14, 15));
  }
}

TEST(TwoFlow, Examples) {
  const auto k4 = two_flow_bound(named("K4"));
  EXPECT_EQ(k4.support, 4u);
  ASSERT_TRUE(k4.integer_witness);
  EXPECT_TRUE(verify_integer_lift(named("K4"), k4.orientation, k4.labelling, *k4.integer_witness));
  EXPECT_GE(two_flow_bound(named("Petersen")).support, 10u);
  EXPECT_EQ(two_flow_bound(named("C6")).support, 6u);
  EXPECT_THROW(two_flow_bound(named("C6"), 2), PreconditionError);
}

TEST(TwoFlow, CatalogBound) {
  for (const auto& g : catalog_filtered("connected_le7.g6", "2ec")) {
    const auto c = two_flow_bound(g);
    ASSERT_TRUE(c.boundary_ok);
    ASSERT_GE(c.support, ceil_frac(g.edge_count(), 2, 3)) << write_edgelist(g);
    ASSERT_TRUE(verify_integer_lift(g, c.orientation, c.labelling, *c.integer_witness));
  }
}

TEST(TwoFlow, HigherConnectivity) {
  for (const char* name : {"K6", "K4_4"}) {
    const auto g = named(name);
    const auto c = two_flow_bound(g, 2);
    EXPECT_TRUE(c.boundary_ok);
    EXPECT_GE(c.support, ceil_frac(g.edge_count(), 4, 5)) << name;
  }
}
