#pragma once

// Odd cycle transversal: the literal-split auxiliary graph, valid splits,
// the minimum over (U, split) of |X \ U| + cut, iterative compression, and
// the exhaustive and heuristic helpers around them.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include "octk/flow.hpp"
#include "octk/gammoid.hpp"
#include "octk/graph.hpp"

namespace octk {

// ---------------------------------------------------------------------------
// Auxiliary graph

/// Where a vertex of G' came from.
struct VertexOrigin {
  enum class Kind : std::uint8_t { Original, Literal, Subdivision };
  Kind kind = Kind::Original;
  Vertex a = 0;          // original vertex; the X vertex of a literal; subdivided edge end
  Vertex b = 0;          // other end of a subdivided edge
  std::uint8_t side = 0; // literal side: 0 for x1, 1 for x2

  /// Vertex of G deleted when this vertex of G' is cut. Cutting a
  /// subdivision vertex of {x, y} maps to min(x, y); deleting either end
  /// destroys every path through the subdivided edge.
  Vertex solution_vertex() const { return kind == Kind::Subdivision ? std::min(a, b) : a; }
};

struct AuxiliaryGraph {
  UndirectedGraph graph;              // G'
  std::vector<Vertex> X;              // bipartization set, ascending
  std::vector<Vertex> literals;       // terminal order: x1, x2 of X[0], then X[1], ...
  std::vector<VertexOrigin> origin;   // per vertex of G'

  std::size_t x_count() const { return X.size(); }
  Vertex literal(std::size_t x_pos, std::uint8_t side) const { return literals[2 * x_pos + side]; }
};

/// G' from G and a bipartization set X. With S1, S2 the 2-coloring of G - X,
/// x1 is joined to the neighbours of x in S2 and x2 to those in S1. An edge
/// {x, y} inside X is first replaced by a path x - a - b - y with a in S1 and
/// b in S2 (two subdivision vertices keep the cycle parity), after which
/// the same rule applies: x2 - a and y1 - b.
inline AuxiliaryGraph build_auxiliary_graph(const UndirectedGraph& g, std::span<const Vertex> x_set) {
  const std::size_t n = g.vertex_count();
  AuxiliaryGraph aux;
  aux.X.assign(x_set.begin(), x_set.end());
  std::sort(aux.X.begin(), aux.X.end());
  if (std::adjacent_find(aux.X.begin(), aux.X.end()) != aux.X.end())
    throw GraphError("bipartization set has duplicates");

  InducedSubgraph rest = delete_vertices(g, aux.X);
  auto coloring = bipartition(rest.graph);
  if (!std::holds_alternative<TwoColoring>(coloring))
    throw GraphError("G - X is not bipartite");
  const auto& color_of_rest = std::get<TwoColoring>(coloring).color;

  constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<Vertex> new_id(n, kNone);
  std::vector<std::uint8_t> side(n, 0);  // 0 = S1, 1 = S2
  for (Vertex i = 0; i < rest.to_original.size(); ++i) {
    Vertex v = rest.to_original[i];
    new_id[v] = i;
    side[v] = color_of_rest[i];
    aux.origin.push_back({VertexOrigin::Kind::Original, v, 0, 0});
  }
  std::vector<bool> in_x(n, false);
  for (Vertex x : aux.X) in_x[x] = true;

  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (!in_x[u] && !in_x[v]) edges.emplace_back(new_id[u], new_id[v]);

  struct Subdivided {
    Vertex x, y, near_x, near_y;
  };
  std::vector<Subdivided> internal;
  for (auto [u, v] : g.edges()) {
    if (!in_x[u] || !in_x[v]) continue;
    Vertex a = static_cast<Vertex>(aux.origin.size());
    aux.origin.push_back({VertexOrigin::Kind::Subdivision, u, v, 0});
    Vertex b = static_cast<Vertex>(aux.origin.size());
    aux.origin.push_back({VertexOrigin::Kind::Subdivision, u, v, 0});
    edges.emplace_back(a, b);
    internal.push_back({u, v, a, b});
  }

  for (std::size_t i = 0; i < aux.X.size(); ++i) {
    for (std::uint8_t s = 0; s < 2; ++s) {
      aux.literals.push_back(static_cast<Vertex>(aux.origin.size()));
      aux.origin.push_back({VertexOrigin::Kind::Literal, aux.X[i], 0, s});
    }
  }
  std::vector<std::size_t> x_pos(n, 0);
  for (std::size_t i = 0; i < aux.X.size(); ++i) x_pos[aux.X[i]] = i;

  for (std::size_t i = 0; i < aux.X.size(); ++i) {
    Vertex x = aux.X[i];
    for (Vertex u : g.neighbors(x)) {
      if (in_x[u]) continue;
      // Neighbour in S2 joins x1, neighbour in S1 joins x2.
      edges.emplace_back(aux.literal(i, side[u] == 1 ? 0 : 1), new_id[u]);
    }
  }
  for (const auto& s : internal) {
    edges.emplace_back(aux.literal(x_pos[s.x], 1), s.near_x);  // near_x in S1
    edges.emplace_back(aux.literal(x_pos[s.y], 0), s.near_y);  // near_y in S2
  }
  aux.graph = UndirectedGraph(aux.origin.size(), std::move(edges));
  return aux;
}

// ---------------------------------------------------------------------------
// Valid splits

struct ValidSplit {
  std::vector<Vertex> U;  // subset of X (original ids)
  /// Terminal (literal) indices 2 * pos + side into AuxiliaryGraph::literals.
  std::vector<TerminalIndex> S, T;
};

/// Split number `mask` of U: bit j set sends x2 of U[j] to S (and x1 to T),
/// clear sends x1 to S. `u_positions` are the U members' positions in X.
inline void split_literals(std::span<const std::size_t> u_positions, std::uint64_t mask,
                           std::vector<TerminalIndex>& S, std::vector<TerminalIndex>& T) {
  S.clear();
  T.clear();
  for (std::size_t j = 0; j < u_positions.size(); ++j) {
    auto side = static_cast<TerminalIndex>((mask >> j) & 1);
    auto base = static_cast<TerminalIndex>(2 * u_positions[j]);
    S.push_back(base + side);
    T.push_back(base + (1 - side));
  }
}

/// All 2^|U| valid splits of U (U given as positions into X), binary-counter
/// order over U in ascending position.
inline std::vector<ValidSplit> enumerate_valid_splits(std::span<const Vertex> X,
                                                      std::span<const Vertex> U) {
  std::vector<std::size_t> pos;
  for (Vertex u : U) {
    auto it = std::find(X.begin(), X.end(), u);
    if (it == X.end()) throw std::invalid_argument("U is not a subset of X");
    pos.push_back(static_cast<std::size_t>(it - X.begin()));
  }
  std::sort(pos.begin(), pos.end());
  if (pos.size() >= 63) throw std::invalid_argument("U too large to enumerate");
  std::vector<ValidSplit> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pos.size()); ++mask) {
    ValidSplit vs;
    for (std::size_t p : pos) vs.U.push_back(X[p]);
    split_literals(pos, mask, vs.S, vs.T);
    out.push_back(std::move(vs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimum over (U, split)

struct CutEvaluation {
  std::size_t size = 0;
  std::vector<Vertex> cut;  // vertices of G' (flow backend only)
  bool representation_failure = false;
};

/// A cut backend answers delta(G' - R, S, T) for literal index sets.
template <class B>
concept CutBackend = requires(const B& b, const CutQuery& q) {
  { b.evaluate(q) } -> std::same_as<CutEvaluation>;
};

/// Exact cuts by max flow on G'.
class FlowCutBackend {
public:
  explicit FlowCutBackend(const AuxiliaryGraph& aux) : aux_(&aux), digraph_(bidirect(aux.graph)) {}

  CutEvaluation evaluate(const CutQuery& q) const {
    auto to_vertices = [&](const std::vector<TerminalIndex>& set) {
      std::vector<Vertex> out;
      for (TerminalIndex i : set) out.push_back(aux_->literals[i]);
      return out;
    };
    auto s = to_vertices(q.S), t = to_vertices(q.T), r = to_vertices(q.R);
    LinkageResult res = vertex_disjoint_link_count(digraph_, s, t, r);
    return {res.lambda, std::move(res.cut), false};
  }

private:
  const AuxiliaryGraph* aux_;
  Digraph digraph_;
};

/// Cut sizes read off a gammoid representation of G' over the literals.
/// Sizes are lower bounds of the true cut (never above it).
class MatrixCutBackend {
public:
  explicit MatrixCutBackend(const GammoidRep& rep) : rep_(&rep) {}

  CutEvaluation evaluate(const CutQuery& q) const {
    LinkageEstimate est = max_linkage(*rep_, q);
    return {est.lambda, {}, est.representation_failure};
  }

private:
  const GammoidRep* rep_;
};

struct RsvMinimum {
  std::size_t size = 0;
  std::uint64_t best_u_mask = 0;      // bit i: X[i] in U
  std::uint64_t best_split_mask = 0;  // over U members in ascending order
  std::vector<Vertex> best_cut;       // G' vertices, flow backend only
  std::size_t representation_failures = 0;
};

struct RsvOptions {
  unsigned threads = 1;
  /// Stop as soon as a value <= this is found (decision use). The reported
  /// minimum is then only an upper bound on the true minimum.
  std::optional<std::size_t> stop_at;
};

namespace detail {

inline bool rsv_better(const RsvMinimum& a, const RsvMinimum& b) {
  return std::tie(a.size, a.best_u_mask, a.best_split_mask) <
         std::tie(b.size, b.best_u_mask, b.best_split_mask);
}

template <CutBackend Backend>
RsvMinimum rsv_fold(std::size_t x_count, const Backend& backend, std::uint64_t u_begin,
                    std::uint64_t u_stride, const RsvOptions& opt) {
  RsvMinimum best;
  best.size = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> u_pos;
  CutQuery q;
  const std::uint64_t u_end = std::uint64_t{1} << x_count;
  for (std::uint64_t u = u_begin; u < u_end; u += u_stride) {
    u_pos.clear();
    q.R.clear();
    for (std::size_t i = 0; i < x_count; ++i) {
      if ((u >> i) & 1) {
        u_pos.push_back(i);
      } else {
        q.R.push_back(static_cast<TerminalIndex>(2 * i));
        q.R.push_back(static_cast<TerminalIndex>(2 * i + 1));
      }
    }
    const std::size_t removed = x_count - u_pos.size();
    if (removed > best.size) continue;
    for (std::uint64_t split = 0; split < (std::uint64_t{1} << u_pos.size()); ++split) {
      split_literals(u_pos, split, q.S, q.T);
      CutEvaluation ev = backend.evaluate(q);
      if (ev.representation_failure) ++best.representation_failures;
      const std::size_t value = removed + ev.size;
      if (value < best.size) {
        best.size = value;
        best.best_u_mask = u;
        best.best_split_mask = split;
        best.best_cut = std::move(ev.cut);
        if (opt.stop_at && value <= *opt.stop_at) return best;
      }
    }
  }
  return best;
}

}  // namespace detail

/// min over U subset of X and valid splits (S, T) of U of
/// |X \ U| + delta(G' - X'(X \ U), S, T).
///
/// The (U, split) space is partitioned across `opt.threads` workers by U;
/// ties go to the smallest (U mask, split mask), so the result does not
/// depend on the partitioning.
template <CutBackend Backend>
RsvMinimum rsv_minimum(std::size_t x_count, const Backend& backend, const RsvOptions& opt = {}) {
  if (x_count >= 32) throw std::invalid_argument("bipartization set too large to enumerate");
  const unsigned workers = std::max(1u, opt.threads);
  RsvMinimum best;
  if (workers == 1) {
    best = detail::rsv_fold(x_count, backend, 0, 1, opt);
  } else {
    std::vector<RsvMinimum> partial(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { partial[w] = detail::rsv_fold(x_count, backend, w, workers, opt); });
    for (auto& th : pool) th.join();
    best = partial[0];
    std::size_t failures = 0;
    for (const auto& p : partial) {
      failures += p.representation_failures;
      if (detail::rsv_better(p, best)) best = p;
    }
    best.representation_failures = failures;
  }
  return best;
}

struct OctSolution {
  std::size_t size = 0;
  std::vector<Vertex> vertices;  // ascending, ids of G
};

/// Exact minimum bipartization size via max flow, with a certificate Y
/// assembled as (X \ U) plus the mapped cut. Y is re-verified and a
/// failure throws std::logic_error.
inline OctSolution rsv_minimum_with_solution(const UndirectedGraph& g, std::span<const Vertex> x_set,
                                             unsigned threads = 1) {
  AuxiliaryGraph aux = build_auxiliary_graph(g, x_set);
  FlowCutBackend backend(aux);
  RsvMinimum best = rsv_minimum(aux.x_count(), backend, RsvOptions{threads, std::nullopt});
  std::vector<Vertex> y;
  for (std::size_t i = 0; i < aux.x_count(); ++i)
    if (!((best.best_u_mask >> i) & 1)) y.push_back(aux.X[i]);
  for (Vertex c : best.best_cut) y.push_back(aux.origin[c].solution_vertex());
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  if (y.size() > best.size || !is_bipartite_after_deletion(g, y))
    throw std::logic_error("assembled bipartization set failed verification");
  return {best.size, std::move(y)};
}

// ---------------------------------------------------------------------------
// Solvers

struct OctAnswer {
  bool yes = false;
  std::vector<Vertex> solution;  // when yes: |solution| <= k, G - solution bipartite
};

/// Iterative compression over vertices in ascending order. Keeps a solution
/// of size <= k for each prefix graph; a prefix with none means NO.
inline OctAnswer iterative_compression_solve(const UndirectedGraph& g, std::size_t k,
                                             unsigned threads = 1) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> y;
  std::vector<Vertex> suffix;
  for (Vertex v = 0; v < n; ++v) {
    y.push_back(v);
    if (y.size() <= k) continue;
    suffix.clear();
    for (Vertex w = v + 1; w < n; ++w) suffix.push_back(w);
    // Prefix vertices keep their ids because only a suffix is removed.
    UndirectedGraph prefix = delete_vertices(g, suffix).graph;
    OctSolution best = rsv_minimum_with_solution(prefix, y, threads);
    if (best.size > k) return {false, {}};
    y = std::move(best.vertices);
  }
  std::sort(y.begin(), y.end());
  if (y.size() > k || !is_bipartite_after_deletion(g, y))
    throw std::logic_error("iterative compression produced an invalid solution");
  return {true, std::move(y)};
}

/// Exhaustive search over vertex subsets in increasing size.
inline OctAnswer brute_force_oct(const UndirectedGraph& g, std::size_t k) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> chosen;
  for (std::size_t size = 0; size <= std::min(k, n); ++size) {
    // Lexicographic combinations of `size` vertices.
    std::vector<Vertex> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = static_cast<Vertex>(i);
    for (;;) {
      if (is_bipartite_after_deletion(g, idx)) return {true, idx};
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {false, {}};
}

inline std::size_t brute_force_oct_size(const UndirectedGraph& g) {
  for (std::size_t k = 0;; ++k)
    if (brute_force_oct(g, k).yes) return k;
}

/// Heuristic bipartization set: while odd cycles remain, collect a shortest
/// odd closed walk found from every root and delete the vertex occurring
/// most often among the shortest ones (smallest id on ties). A final pass
/// drops any vertex whose removal from the set keeps G - X bipartite.
inline std::vector<Vertex> greedy_bipartization_set(const UndirectedGraph& g) {
  std::vector<Vertex> x;
  for (;;) {
    InducedSubgraph rest = delete_vertices(g, x);
    const auto& h = rest.graph;
    std::vector<std::vector<Vertex>> shortest;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    // BFS from each root; an edge inside a layer closes an odd walk.
    std::vector<std::uint32_t> depth(h.vertex_count());
    std::vector<Vertex> parent(h.vertex_count());
    for (Vertex root = 0; root < h.vertex_count(); ++root) {
      constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
      std::fill(depth.begin(), depth.end(), kUnseen);
      depth[root] = 0;
      parent[root] = root;
      std::vector<Vertex> order{root};
      std::optional<std::vector<Vertex>> found;
      for (std::size_t head = 0; head < order.size() && !found; ++head) {
        Vertex u = order[head];
        for (Vertex w : h.neighbors(u)) {
          if (depth[w] == kUnseen) {
            depth[w] = depth[u] + 1;
            parent[w] = u;
            order.push_back(w);
          } else if (depth[w] == depth[u] && u < w) {
            std::vector<Vertex> a{u}, b{w};
            Vertex pu = u, pw = w;
            while (pu != pw) {
              a.push_back(pu = parent[pu]);
              b.push_back(pw = parent[pw]);
            }
            std::vector<Vertex> walk = a;
            for (auto it = b.rbegin() + 1; it != b.rend(); ++it) walk.push_back(*it);
            walk.push_back(u);
            found = std::move(walk);
            break;
          }
        }
      }
      if (!found) continue;
      std::size_t len = found->size() - 1;
      if (len < best_len) {
        best_len = len;
        shortest.clear();
      }
      if (len == best_len) shortest.push_back(std::move(*found));
    }
    if (shortest.empty()) break;
    std::vector<std::size_t> freq(h.vertex_count(), 0);
    for (const auto& walk : shortest)
      for (std::size_t i = 0; i + 1 < walk.size(); ++i) ++freq[walk[i]];
    Vertex pick = static_cast<Vertex>(std::max_element(freq.begin(), freq.end()) - freq.begin());
    x.push_back(rest.to_original[pick]);
  }
  std::sort(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size();) {
    std::vector<Vertex> trial = x;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (is_bipartite_after_deletion(g, trial)) x = std::move(trial);
    else ++i;
  }
  return x;
}

}  // namespace octk
