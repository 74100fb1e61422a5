#include <gtest/gtest.h>

#include <random>

#include "esyz/linalg.hpp"

namespace {

using esyz::Elem;
using esyz::PrimeField;
using esyz::linalg::Matrix;
using esyz::linalg::RowEchelon;

std::size_t naive_rank(const PrimeField& f, std::vector<std::vector<Elem>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const Elem inv = f.inv(m[r][c]);
    for (auto& x : m[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Elem k = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(k, m[r][j]));
    }
    ++r;
  }
  return r;
}

// rows x cols matrix of rank <= inner, as a product of random factors.
std::vector<std::vector<Elem>> low_rank(const PrimeField& f, std::mt19937_64& g, std::size_t rows,
                                        std::size_t cols, std::size_t inner) {
  std::vector<std::vector<Elem>> a(rows, std::vector<Elem>(inner)), b(inner, std::vector<Elem>(cols));
  for (auto& r : a)
    for (auto& x : r) x = static_cast<Elem>(g() % f.prime());
  for (auto& r : b)
    for (auto& x : r) x = static_cast<Elem>(g() % f.prime());
  std::vector<std::vector<Elem>> m(rows, std::vector<Elem>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < inner; ++k) m[i][j] = f.add(m[i][j], f.mul(a[i][k], b[k][j]));
  return m;
}

Matrix to_matrix(const std::vector<std::vector<Elem>>& m) {
  Matrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

TEST(Rank, MatchesNaiveEliminationOnRandomLowRank) {
  std::mt19937_64 g(7);
  for (std::uint32_t p : {5u, 10007u, 33554393u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + g() % 40, cols = 1 + g() % 60;
      const std::size_t inner = 1 + g() % std::min(rows, cols);
      const auto m = low_rank(f, g, rows, cols, inner);
      const std::size_t block = 1 + g() % 9;
      EXPECT_EQ(esyz::linalg::rank(f, to_matrix(m), block), naive_rank(f, m))
          << "p=" << p << " trial=" << trial;
    }
  }
}

// Wide operands once exposed a wrong-result GEMM kernel; keep them covered.
TEST(Rank, WideLowRankBlocks) {
  std::mt19937_64 g(11);
  const PrimeField f(10007);
  const auto m = low_rank(f, g, 70, 9000, 13);
  EXPECT_EQ(esyz::linalg::rank(f, to_matrix(m), 8), 13u);
  EXPECT_EQ(esyz::linalg::rank(f, to_matrix(m), 64), 13u);
}

TEST(RowEchelon, ReducedFormInvariants) {
  std::mt19937_64 g(3);
  const PrimeField f(10009);
  const auto m = low_rank(f, g, 50, 40, 17);
  RowEchelon ech(f, 40);
  auto mat = to_matrix(m);
  for (std::size_t i0 = 0; i0 < 50; i0 += 6) {
    const std::size_t nb = std::min<std::size_t>(6, 50 - i0);
    std::vector<double> block(mat.data().begin() + i0 * 40, mat.data().begin() + (i0 + nb) * 40);
    ech.absorb(block, nb);
  }
  ASSERT_EQ(ech.rank(), 17u);
  for (std::size_t i = 0; i < ech.rank(); ++i) {
    for (std::size_t k = 0; k < ech.rank(); ++k)
      EXPECT_EQ(ech.row(i)[ech.pivots()[k]], i == k ? 1.0 : 0.0);
    for (std::size_t j = 0; j < ech.pivots()[i]; ++j) EXPECT_EQ(ech.row(i)[j], 0.0);
  }
  for (std::size_t i = 0; i < 50; ++i) EXPECT_TRUE(ech.contains(mat.row(i)));
}

TEST(RowEchelon, RankLimitStopsEarly) {
  std::mt19937_64 g(5);
  const PrimeField f(10007);
  auto mat = to_matrix(low_rank(f, g, 30, 30, 20));
  RowEchelon ech(f, 30);
  std::vector<double> block(mat.data().begin(), mat.data().end());
  EXPECT_EQ(ech.absorb(block, 30, 4), 4u);
}

TEST(RowEchelon, IsDeterministic) {
  std::mt19937_64 g(9);
  const PrimeField f(10007);
  const auto m = to_matrix(low_rank(f, g, 20, 25, 9));
  auto run = [&] {
    RowEchelon ech(f, 25);
    std::vector<double> block(m.data().begin(), m.data().end());
    ech.absorb(block, 20);
    std::vector<double> rows;
    for (std::size_t i = 0; i < ech.rank(); ++i) rows.insert(rows.end(), ech.row(i).begin(), ech.row(i).end());
    return std::make_pair(ech.pivots(), rows);
  };
  EXPECT_EQ(run(), run());
}

TEST(ExactChunk, StaysBelowTwoToThe53) {
  for (std::uint32_t p : {5u, 10007u, 33554393u}) {
    const double pm1 = p - 1.0;
    const auto k = esyz::linalg::exact_inner_chunk(p);
    EXPECT_LT(static_cast<double>(k) * pm1 * pm1 + p, 9007199254740992.0);
    EXPECT_GE(k, 1u);
  }
}

}  // namespace
