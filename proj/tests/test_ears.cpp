#include <gtest/gtest.h>

#include "support.hpp"

using namespace flowforge;
using namespace fftest;

namespace {

// Theta with edge 0 replaced by a path of the given length; returns the ear
// along that path.
struct PathHost {
  WeightedGraph wg;
  Ear ear;
};

PathHost theta_path(std::size_t len, std::map<VertexId, std::uint8_t> mu = {}) {
  auto s = subdivide(named("Theta"), {{0, len}});
  for (VertexId v : s.graph.vertices()) mu.emplace(v, 0);
  WeightedGraph wg(s.graph, s.orientation, mu);
  for (const Ear& e : find_ears(s.graph))
    if (e.length() == len) return {wg, e};
  throw std::logic_error("no ear of requested length");
}

// Interior vertices of the path in order, mu given in that order.
std::map<VertexId, std::uint8_t> interior_mu(std::size_t len, const std::vector<std::uint8_t>& vals) {
  const auto h = theta_path(len);
  std::map<VertexId, std::uint8_t> mu;
  const auto in = h.ear.interior();
  unsigned s = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    mu[in[i]] = vals[i];
    s += vals[i];
  }
  mu[h.ear.first()] = static_cast<std::uint8_t>((3 - s % 3) % 3);
  return mu;
}

// Forward values of the labelling starting at s, recomputed edge by edge from
// the interior boundary condition.
std::vector<Element> oracle_forward(const WeightedGraph& wg, const Ear& p, Element s) {
  std::vector<Element> f{s};
  for (std::size_t i = 1; i < p.length(); ++i) {
    // at v_i: out-flow along e_i minus in-flow along e_{i-1} equals mu
    f.push_back(static_cast<Element>((f.back() + wg.mu(p.vertices[i])) % 3));
  }
  return f;
}

std::size_t zeros_in(const std::vector<Element>& f) { return static_cast<std::size_t>(std::count(f.begin(), f.end(), 0)); }

}  // namespace

TEST(FindEars, Examples) {
  const auto k4 = find_ears(named("K4"));
  EXPECT_EQ(k4.size(), 6u);
  for (const Ear& e : k4) EXPECT_EQ(e.kind, EarKind::open_path);
  const auto c5 = find_ears(named("C5"));
  ASSERT_EQ(c5.size(), 1u);
  EXPECT_EQ(c5[0].kind, EarKind::whole_cycle);
  EXPECT_EQ(c5[0].length(), 5u);
  const auto th = find_ears(subdivide(named("Theta"), {{0, 2}, {1, 3}}).graph);
  std::multiset<std::size_t> lens;
  for (const Ear& e : th) lens.insert(e.length());
  EXPECT_EQ(lens, (std::multiset<std::size_t>{1, 2, 3}));
}

TEST(FullDecomposition, Examples) {
  const auto c = full_ear_decomposition(named("C6"));
  ASSERT_EQ(c.ears.size(), 1u);
  EXPECT_EQ(c.ears[0].length(), 6u);

  const auto th = full_ear_decomposition(named("Theta"));
  ASSERT_EQ(th.ears.size(), 2u);
  EXPECT_EQ(th.ears[0].length(), 2u);
  EXPECT_EQ(th.ears[1].length(), 1u);

  const auto k4g = named("K4");
  const auto k4 = full_ear_decomposition(k4g);
  EXPECT_EQ(k4.ears.size(), 3u);
  EXPECT_EQ(k4.ears[0].length(), 3u);
  std::size_t total = 0;
  for (const Ear& e : k4.ears) total += e.length();
  EXPECT_EQ(total, 6u);
  EXPECT_EQ(decomposition_problem(k4g, k4), "");
  for (std::size_t j = 1; j <= k4.ears.size(); ++j) EXPECT_TRUE(is_k_edge_connected(union_of(k4g, k4.ears, j), 2));
}

TEST(FullDecomposition, PrefixesAreTwoEdgeConnected) {
  for (const auto& g : catalog_filtered("connected_le7.g6", "2ec")) {
    const auto d = full_ear_decomposition(g);
    ASSERT_EQ(decomposition_problem(g, d), "");
    EXPECT_EQ(d.ears.size(), g.edge_count() - g.vertex_count() + 1);
    for (std::size_t j = 1; j <= d.ears.size(); ++j) ASSERT_TRUE(is_k_edge_connected(union_of(g, d.ears, j), 2));
  }
  MultiGraph bridge(2);
  bridge.add_edge(0, 1);
  EXPECT_THROW(full_ear_decomposition(bridge), PreconditionError);
}

TEST(EarLabellings, Examples) {
  const auto one = theta_path(1);
  const auto l1 = ear_labellings(one.ear, one.wg);
  for (Element s = 0; s < 3; ++s) EXPECT_EQ(forward_values(one.wg.orientation(), one.ear, l1[s]), std::vector<Element>{s});

  const auto two = theta_path(2, interior_mu(2, {1}));
  const auto l2 = ear_labellings(two.ear, two.wg);
  EXPECT_EQ(forward_values(two.wg.orientation(), two.ear, l2[0]), (std::vector<Element>{0, 1}));
  EXPECT_EQ(forward_values(two.wg.orientation(), two.ear, l2[1]), (std::vector<Element>{1, 2}));
  EXPECT_EQ(forward_values(two.wg.orientation(), two.ear, l2[2]), (std::vector<Element>{2, 0}));

  const auto three = theta_path(3, interior_mu(3, {1, 1}));
  const auto l3 = ear_labellings(three.ear, three.wg);
  EXPECT_EQ(forward_values(three.wg.orientation(), three.ear, l3[0]), (std::vector<Element>{0, 1, 2}));
  EXPECT_EQ(forward_values(three.wg.orientation(), three.ear, l3[1]), (std::vector<Element>{1, 2, 0}));
  EXPECT_EQ(forward_values(three.wg.orientation(), three.ear, l3[2]), (std::vector<Element>{2, 0, 1}));
  for (const auto& l : l3) EXPECT_EQ(l.support(), 2u);
}

TEST(EarLabellings, WholeCycleMatchesBoundaryEverywhere) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    const auto g = named("C" + std::to_string(1 + rng() % 8));
    const auto o = random_orientation(rng, g);
    const WeightedGraph wg(g, o, random_zero_sum(rng, g));
    const auto ear = find_ears(g).at(0);
    for (const auto& psi : ear_labellings(ear, wg)) {
      const auto c = is_flow_with_boundary(wg, psi);
      EXPECT_TRUE(c.boundary_ok);
    }
  }
}

TEST(Classify, Examples) {
  const auto eq = theta_path(3, interior_mu(3, {1, 1}));
  const auto c = classify_equitable(eq.ear, eq.wg);
  EXPECT_TRUE(c.equitable);
  EXPECT_EQ(c.bonus, 0);
  for (std::uint8_t a = 0; a < 3; ++a) {
    const auto two = theta_path(2, interior_mu(2, {a}));
    const auto k = classify_equitable(two.ear, two.wg);
    EXPECT_FALSE(k.equitable);
    EXPECT_EQ(k.bonus, 3);
  }
  const auto flat = theta_path(3);
  const auto f = classify_equitable(flat.ear, flat.wg);
  EXPECT_FALSE(f.equitable);
  EXPECT_EQ(f.bonus, 4);
  EXPECT_EQ(f.zero_counts, (std::array<std::size_t, 3>{3, 0, 0}));
}

TEST(BestLabelling, Examples) {
  const auto one = theta_path(1);
  const auto b1 = best_labelling(one.ear, one.wg);
  EXPECT_EQ(b1.support(), 1u);
  EXPECT_EQ(labelling_gain(b1), 8);
  const auto two = theta_path(2, interior_mu(2, {1}));
  const auto b2 = best_labelling(two.ear, two.wg);
  EXPECT_EQ(forward_values(two.wg.orientation(), two.ear, b2), (std::vector<Element>{1, 2}));
  EXPECT_EQ(labelling_gain(b2), 16);
  const auto eq = theta_path(3, interior_mu(3, {1, 1}));
  EXPECT_EQ(labelling_gain(best_labelling(eq.ear, eq.wg)), 0);
}

// Each edge is zero in exactly one labelling, total support is 2|E(P)|, and
// the labellings agree with an edge-by-edge recomputation.
TEST(EarLabellings, TripleStructure) {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 2000; ++it) {
    const std::size_t len = 1 + rng() % 14;
    std::vector<std::uint8_t> vals(len - 1);
    for (auto& x : vals) x = static_cast<std::uint8_t>(rng() % 3);
    auto h = theta_path(len, interior_mu(len, vals));
    const auto o = random_orientation(rng, h.wg.graph());
    const WeightedGraph wg(h.wg.graph(), o, h.wg.mu());
    const auto ls = ear_labellings(h.ear, wg);
    std::size_t total = 0;
    for (EdgeId e : h.ear.edges) {
      int z = 0;
      for (const auto& l : ls) z += l.at(e) == 0;
      ASSERT_EQ(z, 1);
    }
    for (Element s = 0; s < 3; ++s) {
      ASSERT_EQ(forward_values(o, h.ear, ls[s]), oracle_forward(wg, h.ear, s));
      ASSERT_TRUE(is_ear_labelling(h.ear, wg, ls[s]));
      total += ls[s].support();
    }
    ASSERT_EQ(total, 2 * len);
  }
}

TEST(BestLabelling, GoodGainBound) {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 10000; ++it) {
    const std::size_t len = 1 + rng() % 15;
    std::vector<std::uint8_t> vals(len - 1);
    for (auto& x : vals) x = static_cast<std::uint8_t>(rng() % 3);
    const auto h = theta_path(len, interior_mu(len, vals));
    std::array<std::size_t, 3> z{};
    for (Element s = 0; s < 3; ++s) z[s] = zeros_in(oracle_forward(h.wg, h.ear, s));
    const bool equitable = len % 3 == 0 && z[0] == z[1] && z[1] == z[2];
    const auto best = best_labelling(h.ear, h.wg);
    const auto g = labelling_gain(best);
    ASSERT_EQ(best.support(), len - *std::min_element(z.begin(), z.end()));
    if (equitable)
      ASSERT_EQ(g, 0);
    else
      ASSERT_GE(g, 8 * static_cast<std::int64_t>(len % 3 == 0 ? 3 : len % 3)) << len;
    ASSERT_EQ(classify_equitable(h.ear, h.wg).equitable, equitable);
  }
}

TEST(PsiRemoval, ThetaExample) {
  const auto g = named("Theta");
  std::mt19937_64 rng(34);
  const WeightedGraph wg(g, Orientation::of(g), random_zero_sum(rng, g));
  const Ear p = find_ears(g)[0];
  EarLabelling psi(GroupSpec::z3());
  psi.values[p.edges[0]] = 1;  // edge 0 is oriented 0 -> 1
  const auto h = psi_removal(wg, p, psi);
  EXPECT_EQ(h.graph().edge_count(), 2u);
  EXPECT_EQ(h.mu(0), (wg.mu(0) + 2) % 3);
  EXPECT_EQ(h.mu(1), (wg.mu(1) + 1) % 3);

  const auto c = named("C4");
  const WeightedGraph wc(c, Orientation::of(c), random_zero_sum(rng, c));
  const Ear whole = find_ears(c)[0];
  EXPECT_TRUE(psi_removal(wc, whole, ear_labellings(whole, wc)[1]).graph().empty());

  EarLabelling bad(GroupSpec::z3());
  const auto two = theta_path(2);
  bad.values = {{two.ear.edges[0], 1}, {two.ear.edges[1], 0}};
  if (!is_ear_labelling(two.ear, two.wg, bad)) EXPECT_THROW(psi_removal(two.wg, two.ear, bad), InvalidArgument);
}

TEST(PsiRemoval, PutbackRoundTrip) {
  std::mt19937_64 rng(35);
  const auto gs = catalog_filtered("connected_le7.g6", "2ec");
  int checked = 0;
  for (int it = 0; it < 400; ++it) {
    const auto& g = gs[rng() % gs.size()];
    const WeightedGraph wg(g, random_orientation(rng, g), random_zero_sum(rng, g));
    const auto ears = find_ears(g);
    const Ear& p = ears[rng() % ears.size()];
    const auto psi = ear_labellings(p, wg)[rng() % 3];
    const auto h = psi_removal(wg, p, psi);
    unsigned s = 0;
    for (auto [v, x] : h.mu()) s += x;
    ASSERT_EQ(s % 3, 0u);
    for (VertexId v : h.graph().vertices())
      if (std::find(p.vertices.begin(), p.vertices.end(), v) == p.vertices.end()) ASSERT_EQ(h.mu(v), wg.mu(v));
    const auto sub = particular_solution(h);
    if (!sub) continue;
    const auto phi = putback(wg, p, psi, *sub);
    const auto b = boundary(g, wg.orientation(), phi);
    for (VertexId v : g.vertices()) ASSERT_EQ(b.at(v), wg.mu(v));
    ASSERT_EQ(phi.support(), sub->support() + psi.support());
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Construct, Examples) {
  const auto k4 = WeightedGraph::zero(named("K4"));
  const auto d = full_ear_decomposition(k4.graph());
  EXPECT_EQ(decomposition_gain(d), 24);
  const auto c = construct_flow_via_decomposition(k4, d);
  EXPECT_TRUE(c.boundary_ok);
  EXPECT_GE(c.gain, 24);
  EXPECT_LE(c.support, max_support_flow(k4).optimum);

  const auto c4 = WeightedGraph::zero(named("C4"));
  const auto dc = full_ear_decomposition(c4.graph());
  EXPECT_EQ(decomposition_gain(dc), 8);
  EXPECT_EQ(construct_flow_via_decomposition(c4, dc).gain, 32);

  const auto th = WeightedGraph::zero(named("Theta"));
  const auto dt = full_ear_decomposition(th.graph());
  EXPECT_EQ(decomposition_gain(dt), 24);
  EXPECT_EQ(construct_flow_via_decomposition(th, dt).gain, 24);

  EarDecomposition partial = d;
  partial.full = false;
  EXPECT_THROW(construct_flow_via_decomposition(k4, partial), InvalidArgument);
}

TEST(Construct, GainBoundOnCatalog) {
  std::mt19937_64 rng(36);
  for (const auto& g : catalog_filtered("connected_le7.g6", "2ec")) {
    const WeightedGraph wg(g, random_orientation(rng, g), random_zero_sum(rng, g));
    const auto d = full_ear_decomposition(g);
    const auto c = construct_flow_via_decomposition(wg, d);
    ASSERT_TRUE(c.boundary_ok);
    ASSERT_GE(c.gain, decomposition_gain(d));
  }
}

TEST(InequitableMerge, Examples) {
  // K4 with 0-2 of length 1 and 0-3 of length 2; p is the edge 0-1.
  const auto k4 = named("K4");
  EdgeId e01 = 0, e02 = 0, e03 = 0;
  for (const Edge& e : k4.edges()) {
    if (e.u == 0 && e.v == 1) e01 = e.id;
    if (e.u == 0 && e.v == 2) e02 = e.id;
    if (e.u == 0 && e.v == 3) e03 = e.id;
  }
  const auto s = subdivide(k4, {{e03, 2}});
  std::mt19937_64 rng(37);
  for (int it = 0; it < 60; ++it) {
    const WeightedGraph wg(s.graph, s.orientation, random_zero_sum(rng, s.graph));
    const auto ears = find_ears(s.graph);
    const Ear& p = ears[ear_index_of(ears, s.paths.at(e01).front())];
    const Ear& q = ears[ear_index_of(ears, s.paths.at(e02).front())];
    const Ear& qq = ears[ear_index_of(ears, s.paths.at(e03).front())];
    const auto psi = choose_labelling_inequitable_merge(wg, p, q, qq);
    EXPECT_EQ(psi.support(), 1u);
    const auto h = psi_removal(wg, p, psi);
    const auto hears = find_ears(h.graph());
    const Ear& merged = hears[ear_index_of(hears, q.edges.front())];
    ASSERT_EQ(merged.length(), 3u);
    std::array<std::size_t, 3> z{};
    for (Element x = 0; x < 3; ++x) z[x] = zeros_in(oracle_forward(h, merged, x));
    EXPECT_FALSE(z[0] == z[1] && z[1] == z[2]);
  }
  const WeightedGraph wg = WeightedGraph::zero(s.graph);
  const auto ears = find_ears(s.graph);
  const Ear& q = ears[ear_index_of(ears, s.paths.at(e02).front())];
  const Ear& qq = ears[ear_index_of(ears, s.paths.at(e03).front())];
  EXPECT_THROW(choose_labelling_inequitable_merge(wg, qq, q, q), PreconditionError);
}
