#pragma once

// Seeded instance generators. Only raw 64-bit draws from mt19937_64 are
// used (no std distributions) so outputs are identical across standard
// library implementations.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "octk/field.hpp"
#include "octk/graph.hpp"

namespace octk {

inline double unit_draw(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline std::uint64_t below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

inline std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[below(rng, i)]);
  return perm;
}

/// Erdos-Renyi G(n, p).
inline UndirectedGraph random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (unit_draw(rng) < p) edges.emplace_back(u, v);
  return UndirectedGraph(n, std::move(edges));
}

struct PlantedGraph {
  UndirectedGraph graph;
  std::vector<Vertex> planted;  // ascending; deleting it leaves a bipartite graph
};

/// Random bipartite core on n - planted vertices (cross edges with
/// probability edge_prob) plus `planted` extra vertices. Each extra vertex
/// closes a triangle with a forced core edge and joins other core vertices
/// and the other extra vertices with probability edge_prob. Vertex ids are
/// shuffled at the end.
inline PlantedGraph generate_planted(std::size_t n, std::size_t planted, double edge_prob,
                                     std::uint64_t seed) {
  if (planted > n) throw std::invalid_argument("planted size exceeds n");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw std::invalid_argument("edge probability outside [0, 1]");
  Rng rng(seed);
  const std::size_t core = n - planted;
  std::vector<std::uint8_t> side(core);
  for (std::size_t v = 0; v < core; ++v) side[v] = v < 2 ? static_cast<std::uint8_t>(v) : rng() & 1;

  std::vector<Edge> edges;
  for (Vertex u = 0; u < core; ++u)
    for (Vertex v = u + 1; v < core; ++v)
      if (side[u] != side[v] && unit_draw(rng) < edge_prob) edges.emplace_back(u, v);

  std::vector<Vertex> left, right;
  for (Vertex v = 0; v < core; ++v) (side[v] == 0 ? left : right).push_back(v);

  for (std::size_t i = 0; i < planted; ++i) {
    const auto x = static_cast<Vertex>(core + i);
    if (!left.empty() && !right.empty()) {
      Vertex a = left[below(rng, left.size())];
      Vertex b = right[below(rng, right.size())];
      edges.emplace_back(a, b);
      edges.emplace_back(x, a);
      edges.emplace_back(x, b);
    }
    for (Vertex v = 0; v < core; ++v)
      if (unit_draw(rng) < edge_prob) edges.emplace_back(x, v);
    for (std::size_t j = 0; j < i; ++j)
      if (unit_draw(rng) < edge_prob) edges.emplace_back(x, static_cast<Vertex>(core + j));
  }

  auto perm = random_permutation(n, rng);
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  PlantedGraph out;
  out.graph = UndirectedGraph(n, std::move(edges));
  for (std::size_t i = 0; i < planted; ++i) out.planted.push_back(perm[core + i]);
  std::sort(out.planted.begin(), out.planted.end());
  return out;
}

inline std::string planted_comment(const PlantedGraph& pg) {
  std::string s = "planted";
  for (Vertex v : pg.planted) s += " " + std::to_string(v + 1);
  return s;
}

}  // namespace octk
