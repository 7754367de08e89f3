#include <gtest/gtest.h>

#include <algorithm>

#include "octk/dimacs.hpp"
#include "octk/generate.hpp"
#include "octk/oct.hpp"

namespace octk {
namespace {

TEST(GeneratePlanted, ZeroPlantedIsBipartite) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto pg = generate_planted(12, 0, 0.5, seed);
    EXPECT_TRUE(pg.planted.empty());
    EXPECT_TRUE(iterative_compression_solve(pg.graph, 0).yes);
  }
}

TEST(GeneratePlanted, DeterministicAndBoundedByPlantedSize) {
  auto a = generate_planted(12, 3, 0.3, 42);
  auto b = generate_planted(12, 3, 0.3, 42);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.planted, b.planted);
  EXPECT_EQ(write_dimacs(a.graph, {planted_comment(a)}), write_dimacs(b.graph, {planted_comment(b)}));
  EXPECT_TRUE(brute_force_oct(a.graph, 3).yes);
  EXPECT_EQ(a.planted.size(), 3u);
}

TEST(GeneratePlanted, ForcedWiringWithoutRandomEdges) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto pg = generate_planted(8, 1, 0.0, seed);
    EXPECT_EQ(pg.graph.edge_count(), 3u);  // one forced triangle
    EXPECT_EQ(brute_force_oct_size(pg.graph), 1u);
  }
}

TEST(GeneratePlanted, DeletingPlantedSetLeavesBipartiteGraph) {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + below(rng, 20);
    const std::size_t planted = below(rng, std::min<std::size_t>(n, 6) + 1);
    auto pg = generate_planted(n, planted, unit_draw(rng), rng());
    EXPECT_EQ(pg.graph.vertex_count(), n);
    EXPECT_TRUE(is_bipartite_after_deletion(pg.graph, pg.planted));
    EXPECT_TRUE(std::is_sorted(pg.planted.begin(), pg.planted.end()));
  }
}

TEST(GeneratePlanted, RejectsInvalidParameters) {
  EXPECT_THROW(generate_planted(3, 4, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(generate_planted(5, 1, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(generate_planted(5, 1, -0.1, 1), std::invalid_argument);
}

TEST(GeneratePlanted, CommentListsOneIndexedVertices) {
  PlantedGraph pg{UndirectedGraph(5, {}), {0, 4}};
  EXPECT_EQ(planted_comment(pg), "planted 1 5");
}

TEST(RandomPermutation, IsPermutation) {
  Rng rng(62);
  for (std::size_t n : {0u, 1u, 2u, 10u, 50u}) {
    auto p = random_permutation(n, rng);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(p[i], i);
  }
}

TEST(RandomGraph, ExtremesOfDensity) {
  Rng rng(63);
  EXPECT_EQ(random_graph(6, 0.0, rng).edge_count(), 0u);
  EXPECT_EQ(random_graph(6, 1.0, rng).edge_count(), 15u);
}

}  // namespace
}  // namespace octk
