#pragma once

// Randomized verification sweeps comparing each fast path against its
// ground truth: the solver against exhaustive search, rank-certified linkage
// against max flow, and compress -> decide against exhaustive search.
// Shared by `octk verify` and the acceptance suite.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <string>
#include <vector>

#include "octk/field.hpp"
#include "octk/flow.hpp"
#include "octk/gammoid.hpp"
#include "octk/generate.hpp"
#include "octk/graph.hpp"
#include "octk/kernel.hpp"
#include "octk/matrix.hpp"
#include "octk/oct.hpp"

namespace octk {

struct SweepReport {
  SweepReport() = default;
  explicit SweepReport(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t trials = 0;      // instances generated
  std::size_t checks = 0;      // individual comparisons made
  std::size_t violations = 0;  // zero-tolerance failures
  std::size_t mismatches = 0;  // probabilistic disagreements (reported, judged by caller)
  std::string note;

  bool passed() const { return violations == 0; }
};

/// Menger certificate check: |cut| = lambda = |paths|, the paths are
/// vertex-disjoint S -> T paths of D - R, and D - R - cut has no S -> T path.
inline bool menger_holds(const Digraph& d, std::span<const Vertex> s, std::span<const Vertex> t,
                         std::span<const Vertex> r, const LinkageResult& res) {
  const std::size_t n = d.vertex_count();
  if (res.cut.size() != res.lambda || res.paths.size() != res.lambda) return false;
  std::vector<bool> in_s(n), in_t(n), blocked(n), used(n);
  for (Vertex v : s) in_s[v] = true;
  for (Vertex v : t) in_t[v] = true;
  for (Vertex v : r) blocked[v] = true;
  for (const auto& path : res.paths) {
    if (path.empty() || !in_s[path.front()] || !in_t[path.back()]) return false;
    for (std::size_t i = 0; i < path.size(); ++i) {
      Vertex v = path[i];
      if (blocked[v] || used[v]) return false;
      used[v] = true;
      if (i + 1 < path.size() && !d.has_arc(v, path[i + 1])) return false;
    }
  }
  for (Vertex v : res.cut) {
    if (blocked[v]) return false;
    blocked[v] = true;
  }
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue;
  for (Vertex v : s)
    if (!blocked[v] && !seen[v]) {
      seen[v] = true;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    if (in_t[u]) return false;
    for (Vertex w : d.out_neighbors(u))
      if (!blocked[w] && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
  }
  return true;
}

/// Flow backend that audits every call's Menger certificate.
class CheckedFlowBackend {
public:
  explicit CheckedFlowBackend(const AuxiliaryGraph& aux) : aux_(&aux), digraph_(bidirect(aux.graph)) {}

  CutEvaluation evaluate(const CutQuery& q) const {
    auto to_vertices = [&](const std::vector<TerminalIndex>& set) {
      std::vector<Vertex> out;
      for (TerminalIndex i : set) out.push_back(aux_->literals[i]);
      return out;
    };
    auto s = to_vertices(q.S), t = to_vertices(q.T), r = to_vertices(q.R);
    LinkageResult res = vertex_disjoint_link_count(digraph_, s, t, r);
    ++calls_;
    if (!menger_holds(digraph_, s, t, r, res)) ++failures_;
    return {res.lambda, std::move(res.cut), false};
  }

  std::size_t calls() const { return calls_; }
  std::size_t failures() const { return failures_; }

private:
  const AuxiliaryGraph* aux_;
  Digraph digraph_;
  mutable std::size_t calls_ = 0;
  mutable std::size_t failures_ = 0;
};

namespace detail {

/// Mixed workload: half planted instances, half G(n, p) at varying density.
inline UndirectedGraph sweep_graph(std::size_t n_max, std::size_t n_min, Rng& rng) {
  std::size_t n = n_min + below(rng, n_max - n_min + 1);
  if (rng() & 1) {
    std::size_t planted = below(rng, std::min<std::size_t>(n, 4) + 1);
    double p = 0.2 + 0.5 * unit_draw(rng);
    return generate_planted(n, planted, p, rng()).graph;
  }
  return random_graph(n, 0.15 + 0.45 * unit_draw(rng), rng);
}

/// `size` distinct vertices of g chosen uniformly.
inline std::vector<Vertex> random_subset(std::size_t n, std::size_t size, Rng& rng) {
  auto perm = random_permutation(n, rng);
  std::vector<Vertex> out(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(std::min(size, n)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Pads a bipartization set with random extra vertices up to `target`.
inline std::vector<Vertex> pad_set(std::vector<Vertex> x, std::size_t n, std::size_t target, Rng& rng) {
  auto perm = random_permutation(n, rng);
  for (Vertex v : perm) {
    if (x.size() >= target) break;
    if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(v);
  }
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace detail

/// iterative_compression_solve(G, k) against brute_force_oct(G, k) for
/// every k in 0..k_max.
inline SweepReport sweep_solver(std::size_t graphs, std::size_t n_max, std::size_t k_max, std::uint64_t seed) {
  SweepReport rep{"solver-vs-brute-force"};
  Rng rng(seed);
  for (std::size_t i = 0; i < graphs; ++i) {
    UndirectedGraph g = detail::sweep_graph(n_max, 1, rng);
    ++rep.trials;
    for (std::size_t k = 0; k <= k_max; ++k) {
      OctAnswer fast = iterative_compression_solve(g, k);
      OctAnswer slow = brute_force_oct(g, k);
      ++rep.checks;
      bool ok = fast.yes == slow.yes;
      if (fast.yes) ok = ok && fast.solution.size() <= k && is_bipartite_after_deletion(g, fast.solution);
      if (!ok) ++rep.violations;
    }
  }
  return rep;
}

struct CutSweepReport {
  SweepReport equivalence{"rsv-minimum-vs-brute-force"};
  SweepReport menger{"menger-pairing (cut sweep)"};
};

/// Flow-backend minimum over (U, split) against the exhaustive OCT size, for
/// bipartization sets of size <= x_max (greedy sets padded randomly).
inline CutSweepReport sweep_cut_minimum(std::size_t graphs, std::size_t n_max, std::size_t x_max, std::uint64_t seed) {
  CutSweepReport out;
  Rng rng(seed);
  while (out.equivalence.trials < graphs) {
    UndirectedGraph g = detail::sweep_graph(n_max, 2, rng);
    auto x = greedy_bipartization_set(g);
    if (x.size() > x_max) continue;
    x = detail::pad_set(std::move(x), g.vertex_count(), below(rng, x_max - x.size() + 1) + x.size(), rng);
    ++out.equivalence.trials;
    AuxiliaryGraph aux = build_auxiliary_graph(g, x);
    CheckedFlowBackend backend(aux);
    RsvMinimum best = rsv_minimum(aux.x_count(), backend);
    ++out.equivalence.checks;
    if (best.size != brute_force_oct_size(g)) ++out.equivalence.violations;
    OctSolution sol = rsv_minimum_with_solution(g, x);
    ++out.equivalence.checks;
    if (sol.size != best.size) ++out.equivalence.violations;
    out.menger.trials = out.equivalence.trials;
    out.menger.checks += backend.calls();
    out.menger.violations += backend.failures();
  }
  return out;
}

struct GammoidSweepReport {
  SweepReport soundness{"gammoid-soundness"};
  SweepReport completeness{"gammoid-completeness"};
  SweepReport menger{"menger-pairing (gammoid sweep)"};
  std::size_t samples() const { return soundness.checks; }
};

/// All 4^|X| queries (S, T, R) on random (G, X) with n <= n_max, |X| <= 4,
/// until `min_samples` queries have been made. Soundness violations are
/// rank-certified linkage above the flow value; completeness mismatches are
/// any disagreement. With `inject_fault` one matrix entry per representation
/// is perturbed, which soundness must detect.
inline GammoidSweepReport sweep_gammoid(std::size_t min_samples, std::size_t n_max, std::uint32_t eps_bits,
                                        std::uint64_t seed, bool inject_fault = false) {
  GammoidSweepReport out;
  Rng rng(seed);
  while (out.soundness.checks < min_samples) {
    UndirectedGraph g = detail::sweep_graph(n_max, 1, rng);
    const std::size_t t = 1 + below(rng, std::min<std::size_t>(4, g.vertex_count()));
    auto x = detail::random_subset(g.vertex_count(), t, rng);
    auto perm = random_permutation(t, rng);
    std::vector<Vertex> terminals(t);
    for (std::size_t i = 0; i < t; ++i) terminals[i] = x[perm[i]];
    TerminalDigraph td = build_terminal_digraph(g, terminals);
    GammoidRep rep = represent_gammoid(td, eps_bits, rng());
    if (inject_fault) {
      mpz_class bumped = rep.matrix.at(0, 0) + 1;
      rep.matrix.set(0, 0, bumped);
    }
    ++out.soundness.trials;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < t; ++i) combos *= 4;
    for (std::size_t c = 0; c < combos; ++c) {
      CutQuery q;
      for (TerminalIndex i = 0, rest = static_cast<TerminalIndex>(c); i < t; ++i, rest /= 4) {
        switch (rest % 4) {
          case 1: q.S.push_back(i); break;
          case 2: q.T.push_back(i); break;
          case 3: q.R.push_back(i); break;
          default: break;
        }
      }
      LinkageEstimate est = max_linkage(rep, q);
      LinkageResult truth = oracle_linkage(td, q);
      ++out.soundness.checks;
      ++out.completeness.checks;
      if (est.lambda > truth.lambda) ++out.soundness.violations;
      // The full column set is independent iff T is linked: same one-sided rule.
      const bool independent = is_independent(rep.matrix, encode_query(q, t));
      const bool linked = truth.lambda == q.T.size();
      if (independent && !linked) ++out.soundness.violations;
      if (est.lambda != truth.lambda || independent != linked || est.representation_failure)
        ++out.completeness.mismatches;

      std::vector<Vertex> s, tt, r;
      for (auto i : q.S) s.push_back(td.terminals[i]);
      for (auto i : q.T) tt.push_back(td.terminals[i]);
      for (auto i : q.R) r.push_back(td.terminals[i]);
      ++out.menger.checks;
      if (!menger_holds(td.digraph, s, tt, r, truth)) ++out.menger.violations;
    }
  }
  out.completeness.trials = out.menger.trials = out.soundness.trials;
  return out;
}

struct CertifiedInstance {
  UndirectedGraph graph;
  std::size_t oct = 0;
};

/// Random instances with n <= n_max and exact OCT size, restricted to
/// 1 <= OCT (so both k = OCT and k = OCT - 1 are meaningful).
inline std::vector<CertifiedInstance> certified_instances(std::size_t count, std::size_t n_max,
                                                          std::uint64_t seed) {
  std::vector<CertifiedInstance> out;
  Rng rng(seed);
  while (out.size() < count) {
    UndirectedGraph g = detail::sweep_graph(n_max, 4, rng);
    std::size_t oct = brute_force_oct_size(g);
    if (oct == 0) continue;
    out.push_back({std::move(g), oct});
  }
  return out;
}

struct EndToEndReport {
  SweepReport yes{"end-to-end-no-false-negatives"};
  SweepReport no{"end-to-end-false-positives"};
  SweepReport audit{"size-audit"};
};

/// compress -> decide against certified answers. Each instance is compressed
/// through the full pipeline and, so that the matrix path is always
/// exercised, with an explicit bipartization set (greedy, padded past k).
inline EndToEndReport sweep_end_to_end(const std::vector<CertifiedInstance>& instances, std::size_t yes_seeds,
                                       std::size_t no_seeds, std::uint32_t eps_bits, std::uint64_t seed) {
  EndToEndReport out;
  Rng rng(seed);
  auto audit = [&](const CompressedInstance& c) {
    ++out.audit.checks;
    if (!size_audit(c).passed()) ++out.audit.violations;
  };
  for (const auto& inst : instances) {
    const auto& g = inst.graph;
    const std::size_t n = g.vertex_count();
    auto greedy = greedy_bipartization_set(g);
    ++out.yes.trials;
    ++out.no.trials;
    ++out.audit.trials;

    // YES at k = OCT.
    const auto k_yes = static_cast<std::uint32_t>(inst.oct);
    auto x_yes = detail::pad_set(greedy, n, std::max<std::size_t>(greedy.size(), k_yes + 1), rng);
    for (std::size_t s = 0; s < yes_seeds; ++s) {
      const std::uint64_t run_seed = rng();
      CompressedInstance c = compress_with_bipartization_set(g, k_yes, x_yes, eps_bits, run_seed);
      audit(c);
      ++out.yes.checks;
      if (!decide_compressed(c)) ++out.yes.violations;
      CompressResult full = compress(g, k_yes, eps_bits, run_seed);
      ++out.yes.checks;
      if (auto* e = std::get_if<EarlyDecision>(&full)) {
        if (!e->yes) ++out.yes.violations;
      } else {
        audit(std::get<CompressedInstance>(full));
        if (!decide_compressed(std::get<CompressedInstance>(full))) ++out.yes.violations;
      }
    }

    // NO at k = OCT - 1; any YES here is a false positive.
    const auto k_no = static_cast<std::uint32_t>(inst.oct - 1);
    for (std::size_t s = 0; s < no_seeds; ++s) {
      const std::uint64_t run_seed = rng();
      CompressedInstance c = compress_with_bipartization_set(g, k_no, greedy, eps_bits, run_seed);
      audit(c);
      ++out.no.checks;
      if (decide_compressed(c)) ++out.no.mismatches;
    }
    CompressResult full = compress(g, k_no, eps_bits, rng());
    ++out.no.checks;
    if (auto* e = std::get_if<EarlyDecision>(&full)) {
      if (e->yes) ++out.no.violations;  // early answers are exact
    } else {
      audit(std::get<CompressedInstance>(full));
      if (decide_compressed(std::get<CompressedInstance>(full))) ++out.no.mismatches;
    }
  }
  return out;
}

/// Rank axioms on random column subsets of generated representations:
/// monotonicity, the unit-increase bound, submodularity in the
/// diminishing-returns form, and the independence exchange property.
inline SweepReport sweep_matroid_axioms(std::size_t pairs, std::size_t n_max, std::uint64_t seed) {
  SweepReport rep{"matroid-axioms"};
  Rng rng(seed);
  while (rep.checks < pairs) {
    UndirectedGraph g = detail::sweep_graph(n_max, 2, rng);
    const std::size_t t = 1 + below(rng, std::min<std::size_t>(4, g.vertex_count()));
    TerminalDigraph td = build_terminal_digraph(g, detail::random_subset(g.vertex_count(), t, rng));
    GammoidRep gr = represent_gammoid(td, 20, rng());
    const FpMatrix& a = gr.matrix;
    ++rep.trials;
    const std::size_t cols = a.cols();
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Label> small, big;
      std::vector<Label> i1, i2;
      for (Label c = 0; c < cols; ++c) {
        const auto r = rng() % 4;
        if (r == 0) small.push_back(c);
        if (r <= 1) big.push_back(c);
        if (rng() & 1) i1.push_back(c);
        if (rng() & 1) i2.push_back(c);
      }
      const Label x = static_cast<Label>(below(rng, cols));
      const std::size_t r_small = rank_of_columns(a, small), r_big = rank_of_columns(a, big);
      auto with_x = [&](std::vector<Label> s) {
        if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
        return rank_of_columns(a, s);
      };
      ++rep.checks;
      bool ok = r_small <= r_big && r_big <= r_small + (big.size() - small.size());
      ok = ok && (with_x(small) - r_small >= with_x(big) - r_big);

      // Exchange: shrink both to independent sets, then compare sizes.
      auto independent_part = [&](const std::vector<Label>& s) {
        IncrementalBasis basis(a.rows(), a.modulus());
        std::vector<Label> kept;
        for (Label c : s)
          if (basis.add_column(a, c)) kept.push_back(c);
        return kept;
      };
      auto ind1 = independent_part(i1), ind2 = independent_part(i2);
      if (ind1.size() > ind2.size()) std::swap(ind1, ind2);
      if (ind2.size() > ind1.size()) {
        bool exchanged = false;
        for (Label c : ind2) {
          if (std::find(ind1.begin(), ind1.end(), c) != ind1.end()) continue;
          auto extended = ind1;
          extended.push_back(c);
          if (is_independent(a, extended)) {
            exchanged = true;
            break;
          }
        }
        ok = ok && exchanged;
      }
      if (!ok) ++rep.violations;
    }
  }
  return rep;
}

inline std::string format_report(const SweepReport& r) {
  std::ostringstream out;
  out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": trials=" << r.trials << " checks=" << r.checks
      << " violations=" << r.violations << " mismatches=" << r.mismatches;
  if (!r.note.empty()) out << " (" << r.note << ")";
  return out.str();
}

}  // namespace octk
