#pragma once

// Gammoid representations over terminal sets.
//
// For an undirected graph G and terminals X the terminal digraph D is the
// bidirected G plus one shadow vertex x' -> x per terminal. A column set I of
// the gammoid (D, X') restricted to X u X' encodes a triple (S, T, R) of
// terminal subsets:
//
//   x in S  iff  x, x' not in I
//   x in T  iff  x, x' in I
//   x in R  iff  x in I, x' not in I
//   x free  iff  x' in I, x not in I
//
// and I is independent exactly when T is linked to S in G - R.
//
// The representation is built through the transversal dual: the strict
// gammoid of D with sources B is dual to the transversal matroid of the
// family ({v} u N_in(v) : v not in B). That family is represented with
// independent uniform entries in F_p at its incidences; dualizing and
// keeping the terminal and shadow columns gives the |X| x 2|X| matrix.
//
// Columns are interleaved: column 2i is terminal i, column 2i + 1 its shadow.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "octk/field.hpp"
#include "octk/flow.hpp"
#include "octk/graph.hpp"
#include "octk/matrix.hpp"

namespace octk {

using TerminalIndex = std::uint32_t;

class RepresentationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct TerminalDigraph {
  Digraph digraph;                  // vertices 0..n-1 original, n + i shadow of terminals[i]
  std::size_t base_vertex_count = 0;
  std::vector<Vertex> terminals;    // X, in terminal-index order

  std::size_t terminal_count() const { return terminals.size(); }
  Vertex shadow(TerminalIndex i) const { return static_cast<Vertex>(base_vertex_count + i); }
};

inline TerminalDigraph build_terminal_digraph(const UndirectedGraph& g,
                                              std::span<const Vertex> terminals) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  for (Vertex x : terminals) {
    if (x >= n) throw GraphError("terminal out of range: " + std::to_string(x));
    if (seen[x]) throw GraphError("duplicate terminal: " + std::to_string(x));
    seen[x] = true;
  }
  std::vector<Edge> arcs;
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  for (std::size_t i = 0; i < terminals.size(); ++i)
    arcs.emplace_back(static_cast<Vertex>(n + i), terminals[i]);
  TerminalDigraph td;
  td.digraph = Digraph(n + terminals.size(), std::move(arcs));
  td.base_vertex_count = n;
  td.terminals.assign(terminals.begin(), terminals.end());
  return td;
}

inline constexpr Label terminal_column(TerminalIndex i) { return 2 * i; }
inline constexpr Label shadow_column(TerminalIndex i) { return 2 * i + 1; }

/// Disjoint S, T, R over terminal indices; the remaining terminals are free.
struct CutQuery {
  std::vector<TerminalIndex> S, T, R;
  friend bool operator==(const CutQuery&, const CutQuery&) = default;
};

namespace detail {

inline std::vector<std::uint8_t> query_roles(const CutQuery& q, std::size_t terminal_count) {
  enum : std::uint8_t { kFree = 0, kS = 1, kT = 2, kR = 3 };
  std::vector<std::uint8_t> role(terminal_count, kFree);
  auto mark = [&](const std::vector<TerminalIndex>& set, std::uint8_t r) {
    for (TerminalIndex i : set) {
      if (i >= terminal_count) throw std::invalid_argument("query terminal out of range");
      if (role[i] != kFree) throw std::invalid_argument("query sets S, T, R overlap");
      role[i] = r;
    }
  };
  mark(q.S, kS);
  mark(q.T, kT);
  mark(q.R, kR);
  return role;
}

}  // namespace detail

/// Column set I encoding (S, T, R), ascending.
inline std::vector<Label> encode_query(const CutQuery& q, std::size_t terminal_count) {
  auto role = detail::query_roles(q, terminal_count);
  std::vector<Label> cols;
  for (TerminalIndex i = 0; i < terminal_count; ++i) {
    switch (role[i]) {
      case 1: break;  // S: neither column
      case 2: cols.push_back(terminal_column(i)); cols.push_back(shadow_column(i)); break;
      case 3: cols.push_back(terminal_column(i)); break;
      default: cols.push_back(shadow_column(i)); break;
    }
  }
  return cols;
}

inline CutQuery decode_query(std::span<const Label> cols, std::size_t terminal_count) {
  std::vector<bool> has(2 * terminal_count, false);
  for (Label c : cols) {
    if (c >= 2 * terminal_count) throw std::invalid_argument("column outside X u X'");
    has[c] = true;
  }
  CutQuery q;
  for (TerminalIndex i = 0; i < terminal_count; ++i) {
    bool t = has[terminal_column(i)], s = has[shadow_column(i)];
    if (!t && !s) q.S.push_back(i);
    else if (t && s) q.T.push_back(i);
    else if (t) q.R.push_back(i);
  }
  return q;
}

struct GammoidRep {
  FpMatrix matrix;        // |X| rows (shadow sources) x 2|X| interleaved columns
  std::uint32_t eps_bits = 0;  // error budget 2^-eps_bits of this representation

  std::size_t terminal_count() const { return matrix.cols() / 2; }
  const Prime& prime() const { return matrix.prime(); }
  friend bool operator==(const GammoidRep&, const GammoidRep&) = default;
};

struct RepresentOptions {
  unsigned primality_rounds = 40;
  /// Redraws allowed when the random transversal matrix is rank deficient.
  unsigned max_redraws = 64;
};

/// Prime bit length used by represent_gammoid for this digraph. Entries are
/// drawn directly in F_p, so a single prime carries both halves of the
/// budget: a maximal independent column set is lost with probability at most
/// |V| / p, there are at most 2^(2|X|) of them, and the factor 2 in
/// entry_bit_bound leaves room for both.
inline std::size_t representation_prime_bits(const TerminalDigraph& td, std::uint32_t eps_bits) {
  const std::size_t t = td.terminal_count();
  return std::max<std::size_t>(3, entry_bit_bound(t, 2 * t, eps_bits, td.digraph.vertex_count()));
}

/// Randomized representation of the gammoid (D, X') on columns X u X',
/// deterministic in `seed`.
///
/// Independence in the result always implies linkage in D: the transversal
/// matrix is redrawn until it has full row rank, so its bases are a subset
/// of the true transversal bases and dualizing preserves the inclusion.
inline GammoidRep represent_gammoid(const TerminalDigraph& td, std::uint32_t eps_bits,
                                    std::uint64_t seed, const RepresentOptions& opt = {}) {
  if (eps_bits < 1) throw std::invalid_argument("eps_bits must be >= 1");
  Rng rng(seed);
  PrimeSamplerConfig cfg;
  cfg.bit_length = representation_prime_bits(td, eps_bits);
  cfg.rounds = opt.primality_rounds;
  Prime prime = random_prime(cfg, rng);

  const Digraph& d = td.digraph;
  const std::size_t total = d.vertex_count();
  const std::size_t base = td.base_vertex_count;
  const std::size_t t = td.terminal_count();

  // Rows: non-source vertices (the original ones). Columns: all of V(D).
  std::vector<Label> all_labels(total);
  for (std::size_t v = 0; v < total; ++v) all_labels[v] = static_cast<Label>(v);

  for (unsigned attempt = 0; attempt <= opt.max_redraws; ++attempt) {
    FpMatrix transversal(prime, base, all_labels);
    for (Vertex v = 0; v < base; ++v) {
      transversal.set(v, v, uniform_below(rng, prime.p));
      for (Vertex u : d.in_neighbors(v)) transversal.set(v, u, uniform_below(rng, prime.p));
    }
    FpMatrix dual = dual_representation(transversal);
    if (dual.rows() != t) continue;  // rank deficient draw

    std::vector<Label> keep;
    keep.reserve(2 * t);
    for (TerminalIndex i = 0; i < t; ++i) {
      keep.push_back(td.terminals[i]);
      keep.push_back(td.shadow(i));
    }
    FpMatrix restricted = restrict_columns(dual, keep);
    std::vector<Label> interleaved(2 * t);
    for (Label c = 0; c < 2 * t; ++c) interleaved[c] = c;
    return GammoidRep{FpMatrix(prime, t, std::move(interleaved), restricted.entries()), eps_bits};
  }
  throw RepresentationError("transversal matrix stayed rank deficient; prime too small");
}

struct LinkageEstimate {
  std::size_t lambda = 0;
  /// The base set (R columns plus shadows of T and free terminals) came out
  /// dependent. It is independent in the true gammoid, so this is a
  /// representation failure; lambda is then reported as 0, a valid lower bound.
  bool representation_failure = false;
};

/// Largest T' subset of q.T linked to q.S in G - q.R, as certified by the
/// matrix. Greedy over the contraction by I0 = encode_query(S, {}, R): moving
/// t from free to T adds exactly the column of t, so each accepted column
/// extends T'.
inline LinkageEstimate max_linkage(const GammoidRep& rep, const CutQuery& q) {
  const std::size_t t = rep.terminal_count();
  CutQuery base{q.S, {}, q.R};
  detail::query_roles(q, t);
  const auto i0 = encode_query(base, t);
  const FpMatrix& a = rep.matrix;
  IncrementalBasis basis(a.rows(), a.modulus());
  for (Label c : i0)
    if (!basis.add_column(a, c)) return {0, true};
  LinkageEstimate out;
  std::vector<TerminalIndex> targets = q.T;
  std::sort(targets.begin(), targets.end());
  for (TerminalIndex i : targets)
    if (basis.add_column(a, terminal_column(i))) ++out.lambda;
  return out;
}

/// The flow-oracle value the representation estimates: vertex-disjoint
/// S -> T linkage in G - R on the terminal digraph's original vertices.
inline LinkageResult oracle_linkage(const TerminalDigraph& td, const CutQuery& q) {
  auto to_vertices = [&](const std::vector<TerminalIndex>& set) {
    std::vector<Vertex> out;
    for (TerminalIndex i : set) out.push_back(td.terminals.at(i));
    return out;
  };
  auto s = to_vertices(q.S), tt = to_vertices(q.T), r = to_vertices(q.R);
  return vertex_disjoint_link_count(td.digraph, s, tt, r);
}

}  // namespace octk
