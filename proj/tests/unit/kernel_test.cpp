#include <gtest/gtest.h>

#include <memory>

#include "octk/generate.hpp"
#include "octk/kernel.hpp"
#include "octk/verify.hpp"

namespace octk {
namespace {

UndirectedGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return UndirectedGraph(n, e);
}

CompressedInstance planted_instance(std::uint64_t seed, std::uint32_t k = 3) {
  auto pg = generate_planted(12, 3, 0.35, seed);
  Rng rng(seed);
  auto x = detail::pad_set(greedy_bipartization_set(pg.graph), 12, 5, rng);
  return compress_with_bipartization_set(pg.graph, k, x, 20, seed);
}

std::string with_crc(std::string body) {
  detail::ByteWriter w;
  w.raw(body);
  w.u32(detail::crc32_of(body));
  return std::move(w.bytes());
}

TEST(Compress, SmallBudgetBoundaryIsInclusive) {
  auto g8 = complete(8);
  auto r = compress(g8, 3, 20, 1);
  ASSERT_TRUE(std::holds_alternative<EarlyDecision>(r));
  EXPECT_EQ(std::get<EarlyDecision>(r).reason, EarlyReason::SmallKSolved);
  EXPECT_FALSE(std::get<EarlyDecision>(r).yes);

  // 2^3 > 7: past the exact step; greedy X on K7 has 5 > 3 vertices.
  auto r7 = compress(complete(7), 3, 20, 1);
  ASSERT_TRUE(std::holds_alternative<CompressedInstance>(r7));
  const auto& c = std::get<CompressedInstance>(r7);
  EXPECT_EQ(c.x_count(), 5u);
  EXPECT_EQ(c.rep.matrix.rows(), 10u);
  EXPECT_EQ(c.rep.matrix.cols(), 20u);
  EXPECT_FALSE(decide_compressed(c));
  EXPECT_TRUE(size_audit(c).passed());
}

TEST(Compress, BipartiteAnswersYesEarly) {
  UndirectedGraph g(4, {{0, 1}, {1, 2}, {2, 3}});
  auto r = compress(g, 3, 20, 1);
  ASSERT_TRUE(std::holds_alternative<EarlyDecision>(r));
  EXPECT_TRUE(std::get<EarlyDecision>(r).yes);
  EXPECT_EQ(std::get<EarlyDecision>(r).reason, EarlyReason::HeuristicXWithinK);
  EXPECT_STREQ(to_string(EarlyReason::HeuristicXWithinK), "heuristic-X-within-k");
  EXPECT_STREQ(to_string(EarlyReason::SmallKSolved), "small-k-solved");
  EXPECT_STREQ(to_string(EarlyReason::HeuristicXTooLarge), "heuristic-X-too-large");
}

TEST(Compress, RejectsBadEpsilon) {
  UndirectedGraph g(2, {});
  EXPECT_THROW(compress(g, 5, 0, 1), std::invalid_argument);
  EXPECT_THROW(compress(g, 5, kMaxEpsBits + 1, 1), std::invalid_argument);
}

TEST(Compress, PlantedYesInstance) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto pg = generate_planted(12, 3, 0.35, seed);
    ASSERT_TRUE(brute_force_oct(pg.graph, 3).yes);
    auto c = planted_instance(seed);
    EXPECT_EQ(c.literal_labels.size(), 2 * c.x_count());
    EXPECT_EQ(c.rep.matrix.cols(), 4 * c.x_count());
    EXPECT_TRUE(decide_compressed(c));
    EXPECT_TRUE(size_audit(c).passed());
  }
}

TEST(Compress, LabelsNameLiteralsOneIndexed) {
  UndirectedGraph g(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<Vertex> x{2};
  auto c = compress_with_bipartization_set(g, 1, x, 20, 1);
  EXPECT_EQ(c.literal_labels, (std::vector<std::string>{"3.1", "3.2"}));
  EXPECT_EQ(c.n, 3u);
  EXPECT_EQ(c.m, 3u);
}

TEST(Compress, FixedSeedIsByteIdentical) {
  EXPECT_EQ(serialize(planted_instance(7)), serialize(planted_instance(7)));
  auto g = generate_planted(12, 3, 0.35, 7).graph;
  auto x = greedy_bipartization_set(g);
  EXPECT_EQ(serialize(compress_with_bipartization_set(g, 3, x, 20, 1)),
            serialize(compress_with_bipartization_set(g, 3, x, 20, 1)));
  EXPECT_NE(serialize(compress_with_bipartization_set(g, 3, x, 20, 1)),
            serialize(compress_with_bipartization_set(g, 3, x, 20, 2)));
}

TEST(Decide, FullBudgetIsYes) {
  auto pg = generate_planted(10, 2, 0.4, 3);
  auto x = greedy_bipartization_set(pg.graph);
  auto c = compress_with_bipartization_set(pg.graph, static_cast<std::uint32_t>(x.size()), x, 20, 3);
  EXPECT_TRUE(decide_compressed(c));
  EXPECT_EQ(decide_compressed_detail(c, false).minimum, brute_force_oct_size(pg.graph));
}

TEST(Decide, MonotoneInK) {
  Rng rng(51);
  auto instances = certified_instances(25, 11, 52);
  for (const auto& inst : instances) {
    auto x = detail::pad_set(greedy_bipartization_set(inst.graph), inst.graph.vertex_count(), 4, rng);
    auto c = compress_with_bipartization_set(inst.graph, 0, x, 20, rng());
    bool prev = false;
    for (std::uint32_t k = 0; k <= x.size() + 1; ++k) {
      c.k = k;
      const bool now = decide_compressed(c);
      if (prev) {
        EXPECT_TRUE(now);
      }
      EXPECT_EQ(now, k >= inst.oct);
      prev = now;
    }
  }
}

TEST(Decide, UsesOnlyTheCompressedInstance) {
  std::string bytes;
  bool expected = false;
  {
    auto g = std::make_unique<UndirectedGraph>(generate_planted(12, 3, 0.35, 9).graph);
    Rng rng(9);
    auto x = detail::pad_set(greedy_bipartization_set(*g), 12, 5, rng);
    auto c = compress_with_bipartization_set(*g, 3, x, 20, 9);
    expected = decide_compressed(c);
    bytes = serialize(c);
  }  // graph destroyed here
  CompressedInstance fresh = deserialize(bytes);
  EXPECT_EQ(decide_compressed(fresh), expected);
  EXPECT_TRUE(expected);
}

TEST(Decide, ParallelEqualsSerial) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto c = planted_instance(seed);
    auto serial = decide_compressed_detail(c, false, 1);
    auto par = decide_compressed_detail(c, false, 4);
    EXPECT_EQ(serial.yes, par.yes);
    EXPECT_EQ(serial.minimum, par.minimum);
  }
}

TEST(Serialize, RoundTripIdentity) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto c = planted_instance(seed);
    const std::string bytes = serialize(c);
    CompressedInstance back = deserialize(bytes);
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize(back), bytes);
  }
}

TEST(Serialize, MinimalInstanceLayout) {
  UndirectedGraph g(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<Vertex> x{0};
  auto c = compress_with_bipartization_set(g, 1, x, 20, 1);
  ASSERT_EQ(c.x_count(), 1u);
  const std::string bytes = serialize(c);
  std::size_t expected = 4 + 2 + 4 + 4 + 4 + 8 + 4 + 4;  // fixed header
  expected += 4 + (c.rep.prime().bits() + 7) / 8;
  expected += 2 * (4 + 3);  // "1.1", "1.2"
  for (const auto& e : c.rep.matrix.entries()) expected += 4 + (bit_length(e) + 7) / 8;
  expected += 4;
  EXPECT_EQ(bytes.size(), expected);
  EXPECT_EQ(bytes.substr(0, 4), "OCTK");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 0);
}

TEST(Serialize, EmptySetInstance) {
  UndirectedGraph g(4, {{0, 1}, {2, 3}});
  auto c = compress_with_bipartization_set(g, 0, {}, 20, 1);
  EXPECT_EQ(c.x_count(), 0u);
  EXPECT_TRUE(decide_compressed(c));
  EXPECT_EQ(deserialize(serialize(c)), c);
  EXPECT_TRUE(size_audit(c).passed());
}

TEST(Deserialize, EverySingleByteCorruptionIsRejected) {
  const std::string bytes = serialize(planted_instance(2));
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::string bad = bytes;
    bad[i] = static_cast<char>(bad[i] ^ 0x5A);
    EXPECT_THROW(deserialize(bad), FormatError) << "byte " << i;
  }
}

TEST(Deserialize, EveryTruncationIsRejected) {
  const std::string bytes = serialize(planted_instance(3));
  for (std::size_t len = 0; len < bytes.size(); ++len)
    EXPECT_THROW(deserialize(std::string_view(bytes).substr(0, len)), FormatError) << len;
  EXPECT_THROW(deserialize(bytes + "x"), FormatError);
}

TEST(Deserialize, StructuralChecksBehindValidChecksum) {
  auto build = [](const char* magic, std::uint16_t version, long p, std::vector<std::string> labels,
                  std::vector<long> entries) {
    detail::ByteWriter w;
    w.raw(std::string_view(magic, 4));
    w.u16(version);
    w.u32(1);                                             // k
    w.u32(static_cast<std::uint32_t>(labels.size() / 2));  // |X|
    w.u32(20);
    w.u64(1);
    w.u32(3);
    w.u32(3);
    w.magnitude(mpz_class(p));
    for (const auto& l : labels) w.blob(l);
    for (long e : entries) w.magnitude(mpz_class(e));
    return with_crc(w.bytes());
  };
  const std::vector<long> ok_entries{1, 0, 2, 3, 0, 1, 4, 4};
  EXPECT_NO_THROW(deserialize(build("OCTK", 1, 5, {"1.1", "1.2"}, ok_entries)));
  EXPECT_THROW(deserialize(build("OCTX", 1, 5, {"1.1", "1.2"}, ok_entries)), FormatError);
  EXPECT_THROW(deserialize(build("OCTK", 2, 5, {"1.1", "1.2"}, ok_entries)), FormatError);
  EXPECT_THROW(deserialize(build("OCTK", 1, 9, {"1.1", "1.2"}, ok_entries)), FormatError);
  EXPECT_THROW(deserialize(build("OCTK", 1, 2, {"1.1", "1.2"}, {1, 0, 1, 1, 0, 1, 1, 1})), FormatError);
  EXPECT_THROW(deserialize(build("OCTK", 1, 5, {"1.1", "1.1"}, ok_entries)), FormatError);
  EXPECT_THROW(deserialize(build("OCTK", 1, 5, {"1.1", "1.2"}, {1, 0, 2, 3, 0, 1, 4, 7})), FormatError);
}

TEST(SizeAudit, EntryBoundFollowsFormula) {
  auto c = planted_instance(4);
  auto a = size_audit(c);
  const std::uint64_t x = c.x_count();
  EXPECT_EQ(a.entry_bound_bits, entry_bit_bound(2 * x, 4 * x, 21, c.n + x * x + 2 * x));
  EXPECT_LE(a.prime_bits, a.entry_bound_bits);
  EXPECT_LE(a.max_entry_bits, a.prime_bits);
  EXPECT_EQ(a.serialized_bits, 8 * serialize(c).size());
}

TEST(SizeAudit, SquaringEpsilonAddsTwiceItsBits) {
  auto pg = generate_planted(12, 3, 0.35, 4);
  std::vector<Vertex> x = greedy_bipartization_set(pg.graph);
  auto c20 = compress_with_bipartization_set(pg.graph, 3, x, 20, 4);
  auto c40 = compress_with_bipartization_set(pg.graph, 3, x, 40, 4);
  EXPECT_EQ(size_audit(c40).entry_bound_bits - size_audit(c20).entry_bound_bits, 40u);
  EXPECT_TRUE(size_audit(c40).passed());
}

TEST(SizeAudit, SummaryMentionsVerdict) {
  auto s = summary(planted_instance(5));
  EXPECT_NE(s.find("audit PASS"), std::string::npos);
}

TEST(EndToEnd, SmallSweep) {
  auto instances = certified_instances(15, 11, 53);
  auto rep = sweep_end_to_end(instances, 2, 3, 20, 54);
  EXPECT_EQ(rep.yes.violations, 0u);
  EXPECT_EQ(rep.no.violations, 0u);
  EXPECT_EQ(rep.no.mismatches, 0u);
  EXPECT_EQ(rep.audit.violations, 0u);
}

}  // namespace
}  // namespace octk
