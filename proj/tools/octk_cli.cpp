// octk: command-line front end.
//
//   octk solve    -g FILE -k INT
//   octk compress -g FILE -k INT --eps-bits INT --seed INT -o FILE
//   octk decide   -c FILE
//   octk verify   --trials INT --n-max INT --seed INT
//   octk gen      -n INT --planted INT --edge-prob FLOAT --seed INT -o FILE
//
// Exit codes: 0 = YES / success, 1 = NO / verification failure, 2 = error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "octk/octk.hpp"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

octk::UndirectedGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return octk::parse_dimacs(in);
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string vertex_list(const octk::UndirectedGraph& g, const std::vector<octk::Vertex>& vs) {
  std::string s;
  for (auto v : vs) s += (s.empty() ? "" : " ") + g.name(v);
  return s;
}

int cmd_solve(const std::string& graph_path, std::uint32_t k) {
  auto g = read_graph(graph_path);
  auto answer = octk::iterative_compression_solve(g, k);
  if (!answer.yes) {
    std::cout << "NO\n";
    return kNo;
  }
  if (answer.solution.size() > k || !octk::is_bipartite_after_deletion(g, answer.solution)) {
    std::cerr << "error: solution failed verification\n";
    return kError;
  }
  std::cout << "YES\n" << "solution: " << vertex_list(g, answer.solution) << '\n';
  return kYes;
}

int cmd_compress(const std::string& graph_path, std::uint32_t k, std::uint32_t eps_bits,
                 std::uint64_t seed, const std::string& out_path) {
  auto g = read_graph(graph_path);
  auto result = octk::compress(g, k, eps_bits, seed);
  if (auto* early = std::get_if<octk::EarlyDecision>(&result)) {
    std::cout << "EARLY " << (early->yes ? "YES" : "NO") << " (" << octk::to_string(early->reason) << ")\n";
    if (early->yes && !early->solution.empty())
      std::cout << "solution: " << vertex_list(g, early->solution) << '\n';
    return early->yes ? kYes : kNo;
  }
  const auto& c = std::get<octk::CompressedInstance>(result);
  write_bytes(out_path, octk::serialize(c));
  std::cout << "wrote " << out_path << '\n' << octk::summary(c);
  return octk::size_audit(c).passed() ? kYes : kError;
}

int cmd_decide(const std::string& path) {
  auto c = octk::deserialize(read_bytes(path));
  auto d = octk::decide_compressed_detail(c, true);
  std::cout << (d.yes ? "YES" : "NO") << '\n';
  if (d.representation_failures > 0)
    std::cout << "note: " << d.representation_failures << " representation failures (counted as zero linkage)\n";
  return d.yes ? kYes : kNo;
}

int cmd_verify(std::size_t trials, std::size_t n_max, std::uint64_t seed, std::uint32_t eps_bits,
               bool inject_fault) {
  using namespace octk;
  bool ok = true;
  auto print = [&](const SweepReport& r, bool pass) {
    std::cout << format_report(r) << (pass == r.passed() ? "" : " -> FAIL") << '\n';
    ok = ok && pass;
  };
  const std::size_t n_small = std::min<std::size_t>(n_max, 12);

  auto solver = sweep_solver(trials, n_small, 4, seed);
  print(solver, solver.passed());

  auto cuts = sweep_cut_minimum(trials, std::min<std::size_t>(n_max, 10), 4, seed + 1);
  print(cuts.equivalence, cuts.equivalence.passed());
  print(cuts.menger, cuts.menger.passed());

  auto gammoid = sweep_gammoid(trials * 256, std::min<std::size_t>(n_max, 10), eps_bits, seed + 2, inject_fault);
  print(gammoid.soundness, gammoid.soundness.passed());
  bool complete = gammoid.completeness.mismatches == 0;
  if (!complete) {
    auto retry = sweep_gammoid(trials * 256, std::min<std::size_t>(n_max, 10), eps_bits, seed + 1002, inject_fault);
    complete = retry.completeness.mismatches == 0;
    gammoid.completeness.note = "retried: " + std::to_string(retry.completeness.mismatches) + " mismatches";
  }
  print(gammoid.completeness, complete);
  print(gammoid.menger, gammoid.menger.passed());

  auto instances = certified_instances(trials, n_small, seed + 3);
  auto e2e = sweep_end_to_end(instances, 2, 5, eps_bits, seed + 4);
  print(e2e.yes, e2e.yes.passed());
  print(e2e.no, e2e.no.passed() && e2e.no.mismatches == 0);
  print(e2e.audit, e2e.audit.passed());

  auto axioms = sweep_matroid_axioms(trials * 50, std::min<std::size_t>(n_max, 10), seed + 5);
  print(axioms, axioms.passed());

  std::cout << (ok ? "ALL PASS" : "FAILURES DETECTED") << '\n';
  return ok ? 0 : 1;
}

int cmd_gen(std::size_t n, std::size_t planted, double edge_prob, std::uint64_t seed, const std::string& out_path) {
  auto pg = octk::generate_planted(n, planted, edge_prob, seed);
  std::string text = octk::write_dimacs(pg.graph, {octk::planted_comment(pg)});
  write_bytes(out_path, text);
  std::cout << "wrote " << out_path << ": n=" << pg.graph.vertex_count() << " m=" << pg.graph.edge_count() << ' '
            << octk::planted_comment(pg) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odd cycle transversal solver and randomized matroid compression"};
  app.require_subcommand(1);

  std::string graph_path, out_path, compressed_path;
  std::uint32_t k = 0, eps_bits = 20;
  std::uint64_t seed = 1;
  std::size_t trials = 20, n_max = 10, n = 12, planted = 3;
  double edge_prob = 0.3;
  bool inject_fault = false;

  auto* solve = app.add_subcommand("solve", "Decide (G, k) exactly by iterative compression");
  solve->add_option("-g,--graph", graph_path, "DIMACS graph file")->required();
  solve->add_option("-k", k, "Budget")->required();

  auto* comp = app.add_subcommand("compress", "Compress (G, k) into a gammoid matrix instance");
  comp->add_option("-g,--graph", graph_path, "DIMACS graph file")->required();
  comp->add_option("-k", k, "Budget")->required();
  comp->add_option("--eps-bits", eps_bits, "Error probability 2^-bits")->check(CLI::Range(1u, octk::kMaxEpsBits));
  comp->add_option("--seed", seed, "Random seed");
  comp->add_option("-o,--output", out_path, "Output file")->required();

  auto* decide = app.add_subcommand("decide", "Decide a compressed instance from its matrix");
  decide->add_option("-c,--compressed", compressed_path, "Compressed instance file")->required();

  auto* verify = app.add_subcommand("verify", "Run the randomized verification sweeps");
  verify->add_option("--trials", trials, "Instances per sweep")->check(CLI::PositiveNumber);
  verify->add_option("--n-max", n_max, "Largest vertex count")->check(CLI::Range(std::size_t{4}, std::size_t{20}));
  verify->add_option("--seed", seed, "Base seed");
  verify->add_option("--eps-bits", eps_bits, "Error probability 2^-bits")->check(CLI::Range(1u, octk::kMaxEpsBits));
  verify->add_flag("--inject-fault", inject_fault, "Perturb one entry of every representation");

  auto* gen = app.add_subcommand("gen", "Generate a planted instance");
  gen->add_option("-n", n, "Vertex count")->required();
  gen->add_option("--planted", planted, "Planted transversal size")->required();
  gen->add_option("--edge-prob", edge_prob, "Edge probability")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("-o,--output", out_path, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*solve) return cmd_solve(graph_path, k);
    if (*comp) return cmd_compress(graph_path, k, eps_bits, seed, out_path);
    if (*decide) return cmd_decide(compressed_path);
    if (*verify) return cmd_verify(trials, n_max, seed, eps_bits, inject_fault);
    if (*gen) return cmd_gen(n, planted, edge_prob, seed, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
