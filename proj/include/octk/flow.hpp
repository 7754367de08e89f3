#pragma once

// Vertex-disjoint S -> T linkage and minimum vertex cuts by unit-capacity
// augmenting paths on the vertex-split network.
//
// Every vertex v becomes v_in -> v_out with capacity 1; arcs of D and the
// super-source/super-sink attachments are uncapacitated, so the only
// finite arcs are the split arcs and every minimum cut is a vertex set.
// Terminals themselves may be cut. A vertex in S and T carries a
// zero-length path source -> v_in -> v_out -> sink.

#include <algorithm>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "octk/graph.hpp"

namespace octk {

struct LinkageResult {
  std::size_t lambda = 0;
  std::vector<Vertex> cut;                 // ascending
  std::vector<std::vector<Vertex>> paths;  // each from a vertex of S to a vertex of T
};

namespace detail {

class UnitFlowNetwork {
public:
  static constexpr int kInf = std::numeric_limits<int>::max() / 2;

  explicit UnitFlowNetwork(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, int cap) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap, 0});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0, 0});
    return arcs_.size() - 2;
  }

  /// Augments along BFS shortest paths until none remain; returns the flow.
  std::size_t max_flow(std::size_t source, std::size_t sink) {
    std::size_t flow = 0;
    std::vector<std::size_t> via(adj_.size());
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    for (;;) {
      std::fill(via.begin(), via.end(), kUnset);
      std::deque<std::size_t> queue{source};
      via[source] = kUnset - 1;
      while (!queue.empty() && via[sink] == kUnset) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t a : adj_[u]) {
          const Arc& arc = arcs_[a];
          if (arc.cap - arc.flow > 0 && via[arc.to] == kUnset) {
            via[arc.to] = a;
            queue.push_back(arc.to);
          }
        }
      }
      if (via[sink] == kUnset) return flow;
      for (std::size_t v = sink; v != source;) {
        std::size_t a = via[v];
        arcs_[a].flow += 1;
        arcs_[a ^ 1].flow -= 1;
        v = arcs_[a ^ 1].to;
      }
      ++flow;
    }
  }

  std::vector<bool> residual_reachable(std::size_t source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : adj_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.cap - arc.flow > 0 && !seen[arc.to]) {
          seen[arc.to] = true;
          queue.push_back(arc.to);
        }
      }
    }
    return seen;
  }

  int flow_on(std::size_t arc) const { return arcs_[arc].flow; }
  std::size_t head(std::size_t arc) const { return arcs_[arc].to; }
  std::span<const std::size_t> arcs_from(std::size_t node) const { return adj_[node]; }
  bool is_forward(std::size_t arc) const { return (arc & 1) == 0; }

private:
  struct Arc {
    std::size_t to;
    int cap;
    int flow;
  };
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
};

inline std::vector<bool> membership(std::size_t n, std::span<const Vertex> set,
                                    const char* what) {
  std::vector<bool> in(n, false);
  for (Vertex v : set) {
    if (v >= n) throw GraphError(std::string(what) + " vertex out of range: " + std::to_string(v));
    in[v] = true;
  }
  return in;
}

}  // namespace detail

/// Maximum number of vertex-disjoint S -> T paths in D - R, with a canonical
/// minimum vertex cut (source side of the final residual graph) and the
/// realizing path family.
inline LinkageResult vertex_disjoint_link_count(const Digraph& d, std::span<const Vertex> sources,
                                                std::span<const Vertex> targets,
                                                std::span<const Vertex> removed = {}) {
  const std::size_t n = d.vertex_count();
  auto in_s = detail::membership(n, sources, "source");
  auto in_t = detail::membership(n, targets, "target");
  auto in_r = detail::membership(n, removed, "removed");

  const std::size_t source = 2 * n, sink = 2 * n + 1;
  auto v_in = [](Vertex v) { return 2 * static_cast<std::size_t>(v); };
  auto v_out = [](Vertex v) { return 2 * static_cast<std::size_t>(v) + 1; };
  constexpr int kInf = detail::UnitFlowNetwork::kInf;

  detail::UnitFlowNetwork net(2 * n + 2);
  std::vector<std::size_t> split_arc(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (in_r[v]) continue;
    split_arc[v] = net.add_arc(v_in(v), v_out(v), 1);
    if (in_s[v]) net.add_arc(source, v_in(v), kInf);
    if (in_t[v]) net.add_arc(v_out(v), sink, kInf);
  }
  for (auto [u, v] : d.arcs())
    if (!in_r[u] && !in_r[v]) net.add_arc(v_out(u), v_in(v), kInf);

  LinkageResult result;
  result.lambda = net.max_flow(source, sink);

  auto reach = net.residual_reachable(source);
  for (Vertex v = 0; v < n; ++v)
    if (!in_r[v] && reach[v_in(v)] && !reach[v_out(v)]) result.cut.push_back(v);

  // Each vertex carries at most one unit, so following flow from every
  // saturated source attachment traces the paths without branching.
  for (Vertex s = 0; s < n; ++s) {
    if (in_r[s] || !in_s[s] || net.flow_on(split_arc[s]) == 0) continue;
    bool entered_from_source = false;
    for (std::size_t a : net.arcs_from(source))
      if (net.is_forward(a) && net.head(a) == v_in(s) && net.flow_on(a) > 0)
        entered_from_source = true;
    if (!entered_from_source) continue;
    std::vector<Vertex> path{s};
    Vertex at = s;
    for (;;) {
      std::size_t next = sink;
      for (std::size_t a : net.arcs_from(v_out(at)))
        if (net.is_forward(a) && net.flow_on(a) > 0) next = net.head(a);
      if (next == sink) break;
      at = static_cast<Vertex>(next / 2);
      path.push_back(at);
    }
    result.paths.push_back(std::move(path));
  }
  return result;
}

inline bool is_linked(const Digraph& d, std::span<const Vertex> sources,
                      std::span<const Vertex> targets, std::span<const Vertex> removed = {}) {
  if (targets.empty()) return true;
  return vertex_disjoint_link_count(d, sources, targets, removed).lambda == targets.size();
}

}  // namespace octk
