#pragma once

// Simple undirected graphs and digraphs over 0-indexed vertices, plus the
// elementary operations every other module builds on: 2-coloring with an
// odd-walk certificate, induced subgraphs and bidirection.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace octk {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class GraphError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph. Edges are stored canonically as (u, v) with
/// u < v, sorted lexicographically; adjacency lists are sorted.
class UndirectedGraph {
public:
  UndirectedGraph() = default;

  UndirectedGraph(std::size_t n, std::vector<Edge> edges,
                  std::vector<std::string> labels = {})
      : adj_(n), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n)
      throw GraphError("label count does not match vertex count");
    for (auto& [u, v] : edges) {
      if (u >= n || v >= n)
        throw GraphError("edge endpoint out of range: " + std::to_string(u) +
                         " " + std::to_string(v));
      if (u == v)
        throw GraphError("self-loop on vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& list = adj_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Vertex name for human-facing output: the label when present, otherwise
  /// the 1-indexed vertex number.
  std::string name(Vertex v) const {
    return labels_.empty() ? std::to_string(v + 1) : labels_.at(v);
  }

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

/// Directed graph without self-loop arcs. Parallel arcs are collapsed.
class Digraph {
public:
  Digraph() = default;

  Digraph(std::size_t n, std::vector<Edge> arcs) : out_(n), in_(n) {
    for (auto [u, v] : arcs) {
      if (u >= n || v >= n) throw GraphError("arc endpoint out of range");
      if (u == v) throw GraphError("self-loop arc on vertex " + std::to_string(u));
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arcs_ = std::move(arcs);
    for (auto [u, v] : arcs_) {
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    for (auto& list : in_) std::sort(list.begin(), list.end());
  }

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Edge>& arcs() const { return arcs_; }
  std::span<const Vertex> out_neighbors(Vertex v) const { return out_.at(v); }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_.at(v); }

  bool has_arc(Vertex u, Vertex v) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), Edge{u, v});
  }

private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::vector<Edge> arcs_;
};

struct TwoColoring {
  std::vector<std::uint8_t> color;
};

/// Closed walk of odd length; front() == back().
struct OddWalkWitness {
  std::vector<Vertex> walk;
  std::size_t length() const { return walk.empty() ? 0 : walk.size() - 1; }
};

using BipartitionResult = std::variant<TwoColoring, OddWalkWitness>;

/// BFS 2-coloring. Components are scanned in ascending vertex order, each
/// rooted at its smallest vertex, so the result is deterministic.
inline BipartitionResult bipartition(const UndirectedGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<std::uint8_t> color(n, 0);
  std::vector<Vertex> parent(n, kNone);
  std::vector<std::uint32_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue;

  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    queue.push_back(root);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          color[v] = color[u] ^ 1;
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          // Both tree paths to the common ancestor plus the edge (u, v).
          std::vector<Vertex> up_u{u}, up_v{v};
          Vertex a = u, b = v;
          while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
          while (depth[b] > depth[a]) up_v.push_back(b = parent[b]);
          while (a != b) {
            up_u.push_back(a = parent[a]);
            up_v.push_back(b = parent[b]);
          }
          OddWalkWitness w;
          w.walk = up_u;
          for (auto it = up_v.rbegin() + 1; it != up_v.rend(); ++it)
            w.walk.push_back(*it);
          w.walk.push_back(u);
          return w;
        }
      }
    }
  }
  return TwoColoring{std::move(color)};
}

inline bool is_bipartite(const UndirectedGraph& g) {
  return std::holds_alternative<TwoColoring>(bipartition(g));
}

struct InducedSubgraph {
  UndirectedGraph graph;
  std::vector<Vertex> to_original;  // new index -> original index
};

/// G - Z: the subgraph induced on the vertices outside `removed`. Surviving
/// vertices keep their relative order.
inline InducedSubgraph delete_vertices(const UndirectedGraph& g,
                                       std::span<const Vertex> removed) {
  const std::size_t n = g.vertex_count();
  constexpr Vertex kGone = static_cast<Vertex>(-1);
  std::vector<Vertex> remap(n, 0);
  for (Vertex z : removed) {
    if (z >= n) throw GraphError("deleted vertex out of range: " + std::to_string(z));
    remap[z] = kGone;
  }
  InducedSubgraph out;
  for (Vertex v = 0; v < n; ++v) {
    if (remap[v] == kGone) continue;
    remap[v] = static_cast<Vertex>(out.to_original.size());
    out.to_original.push_back(v);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (remap[u] != kGone && remap[v] != kGone) edges.emplace_back(remap[u], remap[v]);
  std::vector<std::string> labels;
  if (g.has_labels())
    for (Vertex v : out.to_original) labels.push_back(g.labels()[v]);
  out.graph = UndirectedGraph(out.to_original.size(), std::move(edges), std::move(labels));
  return out;
}

inline bool is_bipartite_after_deletion(const UndirectedGraph& g,
                                        std::span<const Vertex> removed) {
  return is_bipartite(delete_vertices(g, removed).graph);
}

inline Digraph bidirect(const UndirectedGraph& g) {
  std::vector<Edge> arcs;
  arcs.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return Digraph(g.vertex_count(), std::move(arcs));
}

}  // namespace octk
