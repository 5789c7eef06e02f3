#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "indset/pairing.hpp"
#include "indset/verify.hpp"
#include "oracles.hpp"

using namespace indset;

TEST(GraphConfig, RejectsImpossibleInstances) {
  EXPECT_THROW((GraphConfig{10, 2, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((GraphConfig{3, 3, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((GraphConfig{7, 3, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((GraphConfig{5'000'000'000ULL, 3, 1}.validate()),
               std::invalid_argument);
  EXPECT_NO_THROW((GraphConfig{4, 3, 1}.validate()));
  EXPECT_NO_THROW((GraphConfig{7, 4, 1}.validate()));
}

TEST(Pairing, CompletionWithNoFreePointsIsANoOp) {
  PairingState s(GraphConfig{4, 3, 7});
  s.subroutine_ga(0);
  const auto before = s.edges();
  const GaOutcome again = s.subroutine_ga(0);
  EXPECT_TRUE(again.new_neighbors.empty());
  EXPECT_FALSE(again.exhausted);
  EXPECT_EQ(s.edges(), before);
}

TEST(Pairing, FourVerticesAlwaysGiveK4) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    PairingState s(GraphConfig{4, 3, seed});
    ASSERT_TRUE(generate_graph(s));
    const StaticGraph g = StaticGraph::from_pairing(s);
    ASSERT_EQ(g.edge_count(), 6u);
    ASSERT_TRUE(g.is_regular(3));
  }
}

TEST(Pairing, DegreePlusAntiDegreeIsD) {
  PairingState s(GraphConfig{500, 5, 3});
  for (Vertex v = 0; v < 500; v += 7) {
    s.subroutine_ga(v);
    for (Vertex u = 0; u < 500; ++u) {
      ASSERT_LE(s.deg(u) + s.antideg(u), 5u);
      // Points are only discarded by exhaustion, which needs a nearly
      // finished graph.
      ASSERT_EQ(s.deg(u) + s.antideg(u), 5u);
    }
  }
}

TEST(Pairing, CompletedGraphIsSimpleAndRegular) {
  for (unsigned d : {3u, 4u, 7u, 20u}) {
    PairingState s(GraphConfig{1000, d, 11});
    if (!generate_graph(s)) continue;  // rare exhaustion; covered below
    // The StaticGraph constructor rejects loops and multi-edges.
    const StaticGraph g = StaticGraph::from_pairing(s);
    EXPECT_TRUE(g.is_regular(d)) << "d=" << d;
    EXPECT_EQ(g.edge_count(), 1000u * d / 2);
    EXPECT_TRUE(s.complete());
    EXPECT_TRUE(s.terminal_loop_fixup().empty());
  }
}

TEST(Pairing, SameSeedSameEdges) {
  PairingState a(GraphConfig{2000, 5, 99});
  PairingState b(GraphConfig{2000, 5, 99});
  PairingState c(GraphConfig{2000, 5, 100});
  generate_graph(a);
  generate_graph(b);
  generate_graph(c);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_NE(a.edges(), c.edges());
}

TEST(Pairing, ConnectRejectsInadmissiblePairs) {
  PairingState s(GraphConfig{6, 3, 1});
  s.connect(0, 1);
  EXPECT_THROW(s.connect(0, 1), std::logic_error);
  EXPECT_THROW(s.connect(2, 2), std::logic_error);
}

// Replays a fixed prefix that leaves vertex 5 with two free points and no
// admissible partner but itself.
TEST(Pairing, ExhaustionIsReportedAndFixedUp) {
  PairingState s(GraphConfig{6, 3, 1});
  const std::pair<Vertex, Vertex> prefix[] = {{0, 3}, {0, 4}, {0, 5}, {1, 2},
                                              {1, 3}, {1, 4}, {2, 3}, {2, 4}};
  for (auto [u, v] : prefix) s.connect(u, v);
  ASSERT_EQ(s.antideg(5), 2u);
  ASSERT_EQ(s.pool_size(), 2u);

  const GaOutcome out = s.subroutine_ga(5);
  EXPECT_TRUE(out.exhausted);
  EXPECT_TRUE(out.new_neighbors.empty());
  EXPECT_EQ(s.terminal_loop_fixup(), std::vector<Vertex>{5});
  EXPECT_EQ(s.pool_size(), 0u);
  EXPECT_EQ(s.antideg(5), 0u);
  // A second call has nothing left to report.
  EXPECT_TRUE(s.terminal_loop_fixup().empty());
}

TEST(Pairing, EdgeListFormat) {
  PairingState s(GraphConfig{4, 3, 5});
  generate_graph(s);
  std::ostringstream os;
  s.write_edge_list(os);
  EXPECT_EQ(os.str(), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  std::istringstream in(os.str());
  const StaticGraph g = read_edge_list(in);
  EXPECT_EQ(g.n_vertices(), 4u);
  EXPECT_EQ(g.edge_count(), 6u);
}

// The oracle: all 17!! pairings of 18 points, loops and multi-edges
// rejected. Every accepted pairing is one of the 70 labelled cubic graphs
// on six vertices, each reached by (3!)^6 point assignments.
TEST(PairingOracle, SixVertexCubicCensus) {
  const oracle::PairingCensus census = oracle::enumerate_simple_pairings(6, 3);
  EXPECT_EQ(census.simple, 70u * 46656u);
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) {
      EXPECT_DOUBLE_EQ(static_cast<double>(census.edge[u][v]) /
                           static_cast<double>(census.simple),
                       0.6);
    }
  }
}

TEST(Pairing, SixVertexMarginalsMatchOracle) {
  const oracle::PairingCensus census = oracle::enumerate_simple_pairings(6, 3);
  constexpr int kSeeds = 20000;
  int counts[6][6] = {};
  int accepted = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    PairingState s(GraphConfig{6, 3, static_cast<std::uint64_t>(seed)});
    if (!generate_graph(s)) continue;
    ++accepted;
    for (const Edge& e : s.edges()) ++counts[e.u][e.v];
  }
  ASSERT_GT(accepted, kSeeds / 2);
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) {
      const double p = static_cast<double>(census.edge[u][v]) /
                       static_cast<double>(census.simple);
      const double se = std::sqrt(p * (1 - p) / accepted);
      EXPECT_NEAR(static_cast<double>(counts[u][v]) / accepted, p, 3 * se)
          << "pair " << u << "," << v;
    }
  }
}
