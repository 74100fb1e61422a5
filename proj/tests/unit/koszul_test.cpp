#include <gtest/gtest.h>

#include <functional>
#include <sstream>

#include "esyz/koszul.hpp"

namespace {

using namespace esyz;
using koszul::BettiTable;
using oracle::Int;

constexpr Int kA = 2, kB = 3;

const models::EllipticCurveModel& curve(std::uint32_t p) {
  static const auto c10007 = models::elliptic_points(kA, kB, 10007);
  static const auto c10009 = models::elliptic_points(kA, kB, 10009);
  return p == 10007 ? c10007 : c10009;
}

koszul::GradedRing rnc_ring(int d, std::uint32_t p = 10007, int q_max = 3) {
  return koszul::build_ring(models::rnc_model(d, p, q_max), q_max + 1);
}

koszul::GradedRing elliptic_ring(int d, std::uint32_t p = 10007, int q_max = 3) {
  return koszul::build_ring(models::elliptic_normal_model(curve(p), d, q_max), q_max + 1);
}

// Nonzero entries as (i, j, beta).
std::vector<std::tuple<int, int, Int>> nonzero(const BettiTable& t) {
  std::vector<std::tuple<int, int, Int>> out;
  for (int i = 0; i <= t.p_max; ++i)
    for (int q = 0; q <= t.q_max; ++q)
      if (t.by_strand[i][q]) out.emplace_back(i, i + q, t.by_strand[i][q]);
  return out;
}

TEST(Wedge, ColexEnumerationMatchesRank) {
  for (std::size_t n = 1; n <= 7; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::size_t> idx(k);
      for (std::size_t t = 0; t < k; ++t) idx[t] = t;
      std::size_t expect = 0;
      do {
        EXPECT_EQ(koszul::colex_rank(idx), expect);
        ++expect;
      } while (koszul::next_colex(idx, n));
      EXPECT_EQ(expect, koszul::binomial(n, k));
    }
}

TEST(BuildRing, HilbertFunctions) {
  EXPECT_EQ(rnc_ring(3, 10007, 1).hilbert_actual(), (std::vector<Int>{1, 4, 7}));
  EXPECT_EQ(elliptic_ring(5, 10007, 2).hilbert_actual(), (std::vector<Int>{1, 5, 10, 15}));
  auto ruled = koszul::build_ring(models::ruled_surface_model(curve(10007), 0, {2, 4}, 1), 2);
  EXPECT_EQ(ruled.hilbert_actual(), (std::vector<Int>{1, 12, 40}));
}

TEST(BuildRing, RejectsShallowRequests) {
  auto m = models::rnc_model(3, 10007, 1);
  EXPECT_THROW(koszul::build_ring(m, 3), Error);
  EXPECT_THROW(koszul::build_ring(m, 1), Error);
}

TEST(BuildRing, ProductsStayInSpan) {
  auto ring = elliptic_ring(4, 10007, 2);
  const auto& f = ring.field();
  const auto& r1 = ring.piece(1);
  const auto& r2 = ring.piece(2);
  const double p = f.prime();
  for (std::size_t i = 0; i < r1.rank(); ++i)
    for (std::size_t j = 0; j < r2.rank(); ++j) {
      std::vector<double> prod(r1.cols());
      for (std::size_t s = 0; s < prod.size(); ++s)
        prod[s] = linalg::reduce(r1.row(i)[s] * r2.row(j)[s], p, 1.0 / p);
      EXPECT_TRUE(ring.piece(3).contains(prod));
    }
}

TEST(NormalGeneration, Examples) {
  EXPECT_TRUE(koszul::normal_generation_check(elliptic_ring(4, 10007, 2)));
  EXPECT_TRUE(koszul::normal_generation_check(rnc_ring(5, 10007, 2)));
  EXPECT_TRUE(koszul::normal_generation_check(
      koszul::build_ring(models::ruled_surface_model(curve(10007), 0, {2, 4}, 1), 2)));
}

TEST(KoszulGroup, Examples) {
  auto rnc = rnc_ring(3);
  EXPECT_EQ(koszul::koszul_group(rnc, 1, 2).homology_dim, 0);
  auto ell = elliptic_ring(4);
  EXPECT_EQ(koszul::koszul_group(ell, 1, 2).homology_dim, 0);
  EXPECT_EQ(koszul::koszul_group(ell, 2, 2).homology_dim, 1);
  for (int q = 2; q <= 3; ++q) EXPECT_EQ(koszul::koszul_group(ell, 0, q).homology_dim, 0);
}

TEST(KoszulGroup, DimensionsAreConsistent) {
  auto ring = elliptic_ring(5);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 3; ++q) {
      const auto g = koszul::koszul_group(ring, p, q);
      EXPECT_GE(g.image_dim, 0);
      EXPECT_EQ(g.homology_dim, g.kernel_dim - g.image_dim);
      EXPECT_GE(g.homology_dim, 0);
    }
}

TEST(KoszulGroup, BudgetAndDepthErrors) {
  auto ring = elliptic_ring(5, 10007, 1);
  koszul::EngineConfig tiny;
  tiny.budget = 10;
  try {
    koszul::koszul_group(ring, 1, 1, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "BudgetExceeded");
  }
  try {
    koszul::koszul_group(ring, 1, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "RingTooShallow");
  }
}

TEST(KoszulGroup, DifferentialSquaresToZero) {
  auto ring = elliptic_ring(5);
  koszul::EngineConfig exhaustive;
  exhaustive.dd_samples = 1'000'000;
  for (std::size_t w = 2; w <= 4; ++w)
    for (int m = 0; m <= 2; ++m) EXPECT_TRUE(koszul::check_dd_zero(ring, w, m, exhaustive));
}

// Along a fixed total degree t the complex
//   0 -> wedge^t V (x) R_0 -> ... -> wedge^0 V (x) R_t -> 0
// has Euler characteristic equal to the alternating sum of its homology.
TEST(KoszulGroup, StrandEulerCharacteristic) {
  auto ring = elliptic_ring(4);
  const std::size_t n = ring.dim(1);
  for (int t = 0; t <= 3; ++t) {
    Int spaces = 0, homology = 0;
    for (int p = 0; p <= t; ++p) {
      const int q = t - p;
      const Int sign = p % 2 ? -1 : 1;
      spaces += sign * static_cast<Int>(koszul::binomial(n, p) * ring.dim(q));
      homology += sign * koszul::koszul_group(ring, p, q).homology_dim;
    }
    EXPECT_EQ(spaces, homology) << "t=" << t;
  }
}

struct Fixture {
  const char* name;
  std::function<koszul::GradedRing(std::uint32_t)> ring;
  int p_max;
  std::vector<std::tuple<int, int, Int>> expected;
};

// Values confirmed by tests/oracles/brute_betti.py before being frozen here.
class KnownBetti : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(KnownBetti, Fixtures) {
  const std::uint32_t p = GetParam();
  const std::vector<Fixture> fixtures = {
      {"twisted cubic", [](std::uint32_t pr) { return rnc_ring(3, pr); }, 3,
       {{0, 0, 1}, {1, 2, 3}, {2, 3, 2}}},
      {"elliptic quartic", [](std::uint32_t pr) { return elliptic_ring(4, pr); }, 3,
       {{0, 0, 1}, {1, 2, 2}, {2, 4, 1}}},
      {"elliptic quintic", [](std::uint32_t pr) { return elliptic_ring(5, pr); }, 4,
       {{0, 0, 1}, {1, 2, 5}, {2, 3, 5}, {3, 5, 1}}},
  };
  for (const auto& fx : fixtures) {
    const auto ring = fx.ring(p);
    const auto t = koszul::betti_table(ring, fx.p_max, 3);
    EXPECT_EQ(nonzero(t), fx.expected) << fx.name << " at " << p;
  }
}

INSTANTIATE_TEST_SUITE_P(TwoPrimes, KnownBetti, ::testing::Values(10007u, 10009u));

TEST(DecideNp, EllipticQuartic) {
  auto ring = elliptic_ring(4);
  const auto one = koszul::decide_np(ring, 1, 3);
  EXPECT_TRUE(one.holds);
  EXPECT_TRUE(one.complete());
  EXPECT_EQ(one.q_checked, 3);
  const auto two = koszul::decide_np(ring, 2, 3);
  EXPECT_FALSE(two.holds);
  ASSERT_EQ(two.violations.size(), 1u);
  EXPECT_EQ(two.violations[0].i, 2);
  EXPECT_EQ(two.violations[0].j, 4);
  EXPECT_EQ(two.violations[0].dim, 1);
}

TEST(DecideNp, RuledSurfaceInRegion) {
  auto ring = koszul::build_ring(models::ruled_surface_model(curve(10007), 0, {2, 4}, 2), 3);
  const auto d = koszul::decide_np(ring, 1, 2);
  EXPECT_TRUE(d.holds);
}

TEST(DecideNp, MonotoneInP) {
  auto ring = elliptic_ring(6);
  bool prev = true;
  for (int p = 1; p <= 4; ++p) {
    const bool now = koszul::decide_np(ring, p, 3).holds;
    if (now) {
      EXPECT_TRUE(prev) << "p=" << p;
    }
    prev = now;
  }
}

TEST(DecideNp, TruncationIsReported) {
  auto ring = elliptic_ring(5);
  koszul::EngineConfig cfg;
  cfg.budget = 2000;
  EXPECT_THROW(koszul::decide_np(ring, 2, 3, cfg), Error);
  const auto d = koszul::decide_np(ring, 2, 3, cfg, true);
  EXPECT_FALSE(d.complete());
  EXPECT_NE(d.truncation_note().find("skipped"), std::string::npos);
}

TEST(Export, CsvAndTriplets) {
  auto ring = rnc_ring(3);
  std::ostringstream csv;
  koszul::write_betti_csv(csv, koszul::betti_table(ring, 2, 2));
  EXPECT_EQ(csv.str(), "i,0,1,2\n0,1,0,0\n1,0,3,0\n2,0,2,0\n");
  std::ostringstream trip;
  koszul::dump_differential(trip, ring, 1, 0);
  // wedge^1 V (x) R_0 -> R_1 is the identity on V in echelon coordinates.
  EXPECT_EQ(trip.str(), "# rows 4 cols 4 prime 10007\n0 0 1\n1 1 1\n2 2 1\n3 3 1\n");
}

}  // namespace
