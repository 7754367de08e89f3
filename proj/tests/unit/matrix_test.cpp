#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "octk/generate.hpp"
#include "octk/matrix.hpp"

namespace octk {
namespace {

std::vector<Label> iota_labels(std::size_t n) {
  std::vector<Label> l(n);
  std::iota(l.begin(), l.end(), Label{0});
  return l;
}

FpMatrix make(long p, std::size_t rows, std::size_t cols, std::vector<long> values) {
  std::vector<mpz_class> e(values.begin(), values.end());
  return FpMatrix(Prime{mpz_class(p)}, rows, iota_labels(cols), std::move(e));
}

FpMatrix random_matrix(long p, std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<long> v(rows * cols);
  for (auto& x : v) x = static_cast<long>(below(rng, static_cast<std::uint64_t>(p)));
  return make(p, rows, cols, v);
}

// Oracle: determinant by permutation expansion, rank as the largest
// nonsingular minor.
mpz_class det(const std::vector<std::vector<mpz_class>>& m, const mpz_class& p) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  mpz_class r = total % p;
  if (r < 0) r += p;
  return r;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

std::size_t rank_by_minors(const FpMatrix& a, const std::vector<Label>& cols) {
  for (std::size_t k = std::min(a.rows(), cols.size()); k > 0; --k)
    for (const auto& rs : subsets_of_size(a.rows(), k))
      for (const auto& cs : subsets_of_size(cols.size(), k)) {
        std::vector<std::vector<mpz_class>> m(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a.at(rs[i], a.column_of(cols[cs[j]]));
        if (det(m, a.modulus()) != 0) return k;
      }
  return 0;
}

/// Bases as column-label bitmasks.
std::set<std::uint32_t> bases(const FpMatrix& a) {
  const std::size_t n = a.cols();
  const std::size_t r = rank(a);
  std::set<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != r) continue;
    std::vector<Label> cols;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) cols.push_back(a.labels()[i]);
    if (is_independent(a, cols)) out.insert(mask);
  }
  return out;
}

TEST(FpMatrix, ValidatesShapeEntriesAndLabels) {
  EXPECT_THROW(make(5, 1, 2, {1}), MatrixError);
  EXPECT_THROW(make(5, 1, 2, {1, 5}), MatrixError);
  EXPECT_THROW(FpMatrix(Prime{mpz_class(5)}, 1, {0, 0}), MatrixError);
  FpMatrix a = make(5, 1, 2, {1, 2});
  a.set(0, 1, -1);
  EXPECT_EQ(a.at(0, 1), 4);
  EXPECT_THROW(a.column_of(7), MatrixError);
}

TEST(RankOfColumns, Identity) {
  FpMatrix a = make(7, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  EXPECT_EQ(rank(a), 3u);
  EXPECT_TRUE(is_independent(a, a.labels()));
}

TEST(RankOfColumns, EmptySelection) {
  FpMatrix a = make(7, 2, 2, {1, 2, 3, 4});
  EXPECT_EQ(rank_of_columns(a, {}), 0u);
  EXPECT_TRUE(is_independent(a, {}));
}

TEST(RankOfColumns, HandEliminationOverF5) {
  FpMatrix a = make(5, 2, 3, {1, 0, 1, 0, 1, 1});
  EXPECT_EQ(rank(a), 2u);
  std::vector<Label> pair{0, 2};
  EXPECT_TRUE(is_independent(a, pair));
}

TEST(RankOfColumns, UnknownLabelThrows) {
  FpMatrix a = make(5, 1, 1, {1});
  std::vector<Label> bad{3};
  EXPECT_THROW(rank_of_columns(a, bad), MatrixError);
}

TEST(RankOfColumns, AgreesWithMinorRankOnRandomMatrices) {
  Rng rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const long p = trial % 2 ? 3 : 5;
    const std::size_t rows = 1 + below(rng, 4), cols = 1 + below(rng, 5);
    FpMatrix a = random_matrix(p, rows, cols, rng);
    std::vector<Label> sel;
    for (Label c = 0; c < cols; ++c)
      if (rng() & 1) sel.push_back(c);
    EXPECT_EQ(rank_of_columns(a, sel), rank_by_minors(a, sel));
  }
}

TEST(ReducedRowEchelon, PivotsAreUnitColumns) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    FpMatrix a = random_matrix(7, 1 + below(rng, 4), 1 + below(rng, 6), rng);
    auto e = reduced_row_echelon(a);
    EXPECT_EQ(e.rows.size(), rank(a));
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
      for (std::size_t r = 0; r < e.rows.size(); ++r) EXPECT_EQ(e.rows[r][e.pivot_cols[k]], r == k ? 1 : 0);
    EXPECT_TRUE(std::is_sorted(e.pivot_cols.begin(), e.pivot_cols.end()));
  }
}

TEST(DualRepresentation, FreeMatroidDualIsTrivial) {
  FpMatrix a = make(5, 2, 2, {1, 0, 0, 1});
  FpMatrix d = dual_representation(a);
  EXPECT_EQ(d.rows(), 0u);
  EXPECT_EQ(d.cols(), 2u);
  EXPECT_EQ(bases(d), (std::set<std::uint32_t>{0}));
}

TEST(DualRepresentation, UniformOneTwoIsSelfDual) {
  FpMatrix a = make(5, 1, 2, {1, 1});
  FpMatrix d = dual_representation(a);
  EXPECT_EQ(bases(a), (std::set<std::uint32_t>{0b01, 0b10}));
  EXPECT_EQ(bases(d), (std::set<std::uint32_t>{0b01, 0b10}));
  std::vector<Label> both{0, 1};
  EXPECT_FALSE(is_independent(d, both));
}

TEST(DualRepresentation, KeepsLabels) {
  FpMatrix a(Prime{mpz_class(7)}, 1, {10, 20, 30}, {1, 2, 3});
  FpMatrix d = dual_representation(a);
  EXPECT_EQ(d.labels(), a.labels());
  EXPECT_EQ(d.rows(), 2u);
}

TEST(DualRepresentation, BasesAreComplementsAndInvolutionHoldsExhaustively) {
  Rng rng(23);
  for (int trial = 0; trial < 600; ++trial) {
    const long p = (trial % 3 == 0) ? 3 : (trial % 3 == 1 ? 5 : 7);
    const std::size_t cols = 1 + below(rng, 6), rows = 1 + below(rng, 4);
    FpMatrix a = random_matrix(p, rows, cols, rng);
    FpMatrix d = dual_representation(a);
    EXPECT_EQ(d.rows(), cols - rank(a));
    const std::uint32_t all = (1u << cols) - 1;
    std::set<std::uint32_t> complements;
    for (auto b : bases(a)) complements.insert(all & ~b);
    EXPECT_EQ(bases(d), complements);
    EXPECT_EQ(bases(dual_representation(d)), bases(a));
    for (const auto& e : d.entries()) EXPECT_LT(e, d.modulus());
  }
}

TEST(FullRowRank, SameMatroidFewerRows) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    FpMatrix a = random_matrix(3, 1 + below(rng, 5), 1 + below(rng, 5), rng);
    FpMatrix f = full_row_rank(a);
    EXPECT_EQ(f.rows(), rank(a));
    EXPECT_EQ(bases(f), bases(a));
  }
}

TEST(RestrictColumns, KeepsOrderAndEntries) {
  FpMatrix a = make(11, 2, 3, {1, 2, 3, 4, 5, 6});
  std::vector<Label> keep{2, 0};
  FpMatrix r = restrict_columns(a, keep);
  EXPECT_EQ(r.labels(), keep);
  EXPECT_EQ(r.at(0, 0), 3);
  EXPECT_EQ(r.at(1, 1), 4);
}

TEST(IncrementalBasis, RankMatchesBatchElimination) {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    FpMatrix a = random_matrix(5, 1 + below(rng, 5), 1 + below(rng, 7), rng);
    IncrementalBasis basis(a.rows(), a.modulus());
    for (std::size_t c = 0; c < a.cols(); ++c) basis.add_column(a, c);
    EXPECT_EQ(basis.rank(), reduced_row_echelon(a).rows.size());
  }
}

}  // namespace
}  // namespace octk
