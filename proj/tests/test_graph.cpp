#include <gamma_cone/graph.hpp>
#include <gamma_cone/random.hpp>

#include <gtest/gtest.h>

using namespace gamma_cone;

namespace {

std::vector<Vertex> vs(std::initializer_list<Vertex> l) { return l; }

} // namespace

TEST(Families, CompleteGraphs) {
  EXPECT_EQ(make_complete(1).edge_count(), 0u);
  const auto k3 = make_complete(3);
  EXPECT_EQ(k3.edge_count(), 3u);
  for (Vertex v = 0; v < 3; ++v)
    EXPECT_EQ(k3.degree(v), 2u);
  const auto k5 = make_complete(5);
  EXPECT_EQ(k5.edge_count(), 10u);
  EXPECT_EQ(k5.max_degree(), 4u);
  EXPECT_TRUE(k5.is_complete());
  EXPECT_THROW(make_complete(0), input_error);
}

TEST(Families, CyclePathHypercube) {
  const auto c4 = make_cycle(4);
  EXPECT_EQ(c4.edge_count(), 4u);
  for (Vertex v = 0; v < 4; ++v)
    EXPECT_EQ(c4.degree(v), 2u);
  const auto p2 = make_path(2);
  EXPECT_EQ(p2.edge_count(), 1u);
  EXPECT_TRUE(p2.has_edge(0, 1));
  const auto q3 = make_hypercube(3);
  EXPECT_EQ(q3.vertex_count(), 8u);
  EXPECT_EQ(q3.edge_count(), 12u);
  EXPECT_THROW(make_cycle(2), input_error);
  EXPECT_THROW(make_path(1), input_error);
}

TEST(GraphConstruction, RejectsLoopsAndBadIds) {
  EXPECT_THROW(Graph(2, {{0, 0}}), input_error);
  EXPECT_THROW(Graph(2, {{0, 2}}), input_error);
}

TEST(GraphConstruction, DuplicatesCollapse) {
  const Graph g(3, {{0, 1}, {1, 0}, {0, 1}, {2, 1}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.degree(1), 2u);
}

TEST(Completion, Examples) {
  EXPECT_EQ(completion(make_complete(3)), make_complete(3));
  EXPECT_EQ(completion(make_path(3)), make_complete(3));
  EXPECT_EQ(completion(make_cycle(4)), make_complete(4));
}

TEST(Spheres, Examples) {
  EXPECT_EQ(sphere(make_complete(3), 0, 1), vs({1, 2}));
  const auto c5 = make_cycle(5);
  for (Vertex v = 0; v < 5; ++v)
    EXPECT_EQ(sphere(c5, v, 0), vs({v}));
  EXPECT_EQ(sphere(make_path(3), 0, 2), vs({2}));
  EXPECT_EQ(ball(make_path(3), 0, 1), vs({0, 1}));
}

TEST(Spheres, PartitionTheBall) {
  Xorshift64Star rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_connected_graph(rng, 3 + rng.below(8), 0.3);
    const Vertex x = rng.below(g.vertex_count());
    auto b = ball(g, x, 2);
    auto s = sphere(g, x, 0);
    for (std::size_t r : {1u, 2u}) {
      const auto sr = sphere(g, x, r);
      s.insert(s.end(), sr.begin(), sr.end());
    }
    std::sort(s.begin(), s.end());
    EXPECT_EQ(b, s);
  }
}

TEST(Connectivity, Examples) {
  EXPECT_TRUE(is_connected(make_complete(3)));
  EXPECT_FALSE(is_connected(Graph(4, {{0, 1}, {2, 3}})));
  EXPECT_TRUE(is_connected(make_complete(1)));
  EXPECT_THROW(require_connected(Graph(4, {{0, 1}, {2, 3}}), "test"),
               disconnected_graph_error);
}

TEST(Connectivity, RandomGraphsAreConnected) {
  Xorshift64Star rng(11);
  for (int t = 0; t < 50; ++t)
    EXPECT_TRUE(is_connected(random_connected_graph(rng, 1 + rng.below(15), 0.2)));
}

TEST(VertexFunctions, Arithmetic) {
  const VertexFunction f(std::vector<double>{1, 2, 3});
  EXPECT_DOUBLE_EQ(f.sum(), 6);
  EXPECT_DOUBLE_EQ(f.sum_of_squares(), 14);
  EXPECT_DOUBLE_EQ(f.average(), 2);
  EXPECT_NEAR(f.centered().sum(), 0, 1e-15);
  EXPECT_DOUBLE_EQ(f.scaled(2)[2], 6);
  EXPECT_DOUBLE_EQ(f.shifted(-1)[0], 0);
  const auto d = VertexFunction::delta(3, 1);
  EXPECT_DOUBLE_EQ(d.sum(), 1);
  EXPECT_DOUBLE_EQ(d[1], 1);
  EXPECT_THROW(f.require_size(make_complete(4)), input_error);
}

TEST(Random, XorshiftIsReproducible) {
  Xorshift64Star a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Random, ReferenceStream) {
  // splitmix64(0) is the published first output of SplitMix64 seeded with 0.
  EXPECT_EQ(Xorshift64Star::splitmix64(0), 0xe220a8397b1dcdafULL);
  // First outputs for seed 1, from an independent script of the same recipe.
  Xorshift64Star ref(1);
  EXPECT_EQ(ref.next(), 0x4b46a55df3611b9bULL);
  EXPECT_EQ(ref.next(), 0xd7e1f1410e763ef4ULL);
  EXPECT_EQ(ref.next(), 0x5f14ec66975f9b06ULL);
  Xorshift64Star rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.below(7), 7u);
  }
}
