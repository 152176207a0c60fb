#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "romanoff/arith.hpp"
#include "romanoff/errors.hpp"
#include "romanoff/quadroots.hpp"

using namespace romanoff;

namespace {

std::vector<u64> brute_roots(u64 a, u64 m) {
  std::vector<u64> out;
  for (u64 z = 0; z < m; ++z)
    if (static_cast<u64>(static_cast<u128>(z) * z % m) == a % m) out.push_back(z);
  return out;
}

u64 brute_window(u64 a, u64 m, u64 y) {
  u64 n = 0;
  for (u64 z = 1; z <= y; ++z)
    if (static_cast<u64>(static_cast<u128>(z) * z % m) == a % m) ++n;
  return n;
}

}  // namespace

TEST(CongruenceSpec, ReducesAndValidates) {
  const CongruenceSpec s(-1, 5, 3);
  EXPECT_EQ(s.residue(), 4u);
  EXPECT_EQ(s.modulus(), 5u);
  EXPECT_EQ(s.window(), 3u);
  EXPECT_THROW(CongruenceSpec(1, 0), DomainError);
  EXPECT_THROW(CongruenceSpec(1, 5, 1), DomainError);
  EXPECT_THROW(CongruenceSpec(1, 5, 6), DomainError);
}

TEST(PrimePowerCount, Examples) {
  EXPECT_EQ(count_roots_prime_power(1, 3, 1), 2u);
  EXPECT_EQ(count_roots_prime_power(0, 3, 2), 3u);
  EXPECT_EQ(count_roots_prime_power(1, 2, 3), 4u);
  EXPECT_EQ(count_roots_prime_power(2, 3, 1), 0u);
  EXPECT_EQ(count_roots_prime_power(5, 7, 0), 1u);
  EXPECT_THROW(count_roots_prime_power(1, 4, 1), DomainError);
}

TEST(CountRoots, Examples) {
  EXPECT_EQ(count_roots(0, 1), 1u);
  EXPECT_EQ(count_roots(12345, 1), 1u);
  EXPECT_EQ(count_roots(1, 24), 8u);
  EXPECT_EQ(count_roots(1, 15), 4u);
  EXPECT_EQ(count_roots(1, factorize(24)), 8u);
}

TEST(CountRoots, MatchesBruteForceSmallModuli) {
  for (u64 m = 1; m <= 400; ++m) {
    std::vector<u64> hist(m, 0);
    for (u64 z = 0; z < m; ++z) ++hist[z * z % m];
    for (u64 a = 0; a < m; ++a) ASSERT_EQ(count_roots(static_cast<i64>(a), m), hist[a]) << a << " " << m;
  }
}

TEST(CountRoots, NegativeResidueMatchesReduced) {
  for (u64 m = 1; m <= 200; ++m)
    for (i64 a = -3 * static_cast<i64>(m); a < 0; a += 7)
      ASSERT_EQ(count_roots(a, m), count_roots(static_cast<i64>(reduce_mod(a, m)), m));
}

TEST(PrimePowerCount, MatchesBruteForceIncludingBoundary) {
  // Every p^e up to 3^8 = 6561, which includes the e = 2l boundary cases.
  for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (unsigned e = 1;; ++e) {
      u64 q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      if (q > 6561) break;
      std::vector<u64> hist(q, 0);
      for (u64 z = 0; z < q; ++z) ++hist[z * z % q];
      for (u64 a = 0; a < q; ++a)
        ASSERT_EQ(count_roots_prime_power(static_cast<i64>(a), p, e), hist[a]) << a << " " << p << "^" << e;
    }
  }
}

TEST(Decomposition, Invariants) {
  for (u64 p : {2u, 3u, 5u, 7u, 31u}) {
    for (i64 delta = -2000; delta <= 2000; ++delta) {
      if (delta == 0) continue;
      const i64 residue = ((delta % 4) + 4) % 4;
      if (residue == 2 || residue == 3) {
        EXPECT_THROW(decompose_discriminant(delta, p), DomainError);
        continue;
      }
      const auto d = decompose_discriminant(delta, p);
      EXPECT_EQ(d.delta, delta);
      EXPECT_EQ(d.prime, p);
      i64 scale = 1;
      for (unsigned i = 0; i < 2 * d.ell; ++i) scale *= static_cast<i64>(p);
      ASSERT_EQ(scale * d.delta0, delta);
      const i64 r = ((d.delta0 % 4) + 4) % 4;
      ASSERT_TRUE(r == 0 || r == 1) << delta;
      // Maximality: one more step is impossible.
      const i64 pp = static_cast<i64>(p * p);
      if (d.delta0 % pp == 0) {
        const i64 next = d.delta0 / pp;
        const i64 nr = ((next % 4) + 4) % 4;
        ASSERT_FALSE(nr == 0 || nr == 1) << delta;
      }
    }
  }
  EXPECT_THROW(decompose_discriminant(0, 3), DomainError);
}

TEST(EnumerateRoots, Examples) {
  EXPECT_EQ(enumerate_roots(1, 8), (std::vector<u64>{1, 3, 5, 7}));
  EXPECT_EQ(enumerate_roots(0, 4), (std::vector<u64>{0, 2}));
  EXPECT_EQ(enumerate_roots(1, 100), (std::vector<u64>{1, 49, 51, 99}));
  EXPECT_EQ(enumerate_roots(0, 1), (std::vector<u64>{0}));
}

TEST(EnumerateRoots, SortedDistinctAndCorrect) {
  for (u64 m = 1; m <= 300; ++m)
    for (u64 a = 0; a < m; ++a) ASSERT_EQ(enumerate_roots(static_cast<i64>(a), m), brute_roots(a, m));
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const u64 m = 1 + rng() % 1'000'000'000'000ULL;
    const u64 z = rng() % m;
    const u64 a = static_cast<u64>(static_cast<u128>(z) * z % m);
    const auto roots = enumerate_roots(static_cast<i64>(a), m);
    ASSERT_TRUE(std::binary_search(roots.begin(), roots.end(), z));
    ASSERT_TRUE(std::is_sorted(roots.begin(), roots.end()));
    ASSERT_EQ(std::adjacent_find(roots.begin(), roots.end()), roots.end());
    ASSERT_EQ(roots.size(), count_roots(static_cast<i64>(a), m));
    for (u64 r : roots) ASSERT_EQ(static_cast<u64>(static_cast<u128>(r) * r % m), a);
  }
}

TEST(EnumerateRoots, RespectsCap) {
  EXPECT_THROW(enumerate_roots(0, u64{1} << 40, 1000), BudgetError);
}

TEST(SqrtModPrime, MatchesBruteForce) {
  for (u64 p = 2; p < 600; ++p) {
    if (!is_prime(p)) continue;
    for (u64 a = 0; a < p; ++a) {
      const auto r = sqrt_mod_prime(a, p);
      const bool residue = !brute_roots(a, p).empty();
      ASSERT_EQ(r.has_value(), residue) << a << " " << p;
      if (r) ASSERT_EQ(*r * *r % p, a);
    }
  }
  const u64 big = 1'000'000'000'000'000'003ULL;
  const auto r = sqrt_mod_prime(4, big);
  ASSERT_TRUE(r);
  EXPECT_EQ(static_cast<u64>(static_cast<u128>(*r) * *r % big), 4u);
}

TEST(Window, Examples) {
  EXPECT_EQ(count_roots_up_to(1, 8, 5), 3u);
  EXPECT_EQ(count_roots_up_to(1, 100, 2), 1u);
  EXPECT_EQ(count_roots_up_to(0, 9, 9), 3u);
  EXPECT_EQ(count_roots_up_to(0, 9, 2), 0u);
}

TEST(Window, MatchesBruteForceAndFullPeriod) {
  for (u64 m = 2; m <= 120; ++m)
    for (u64 a = 0; a < m; ++a) {
      u64 previous = brute_window(a, m, 1);
      for (u64 y = 2; y <= m; ++y) {
        const u64 n = count_roots_up_to(static_cast<i64>(a), m, y);
        ASSERT_EQ(n, brute_window(a, m, y)) << a << " " << m << " " << y;
        ASSERT_LE(n - previous, 1u);
        previous = n;
      }
      ASSERT_EQ(count_roots_up_to(static_cast<i64>(a), m, m), count_roots(static_cast<i64>(a), m));
    }
}

TEST(Window, ConsecutiveWindowsSumToTotal) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const u64 m = 50 + rng() % 5000;
    const u64 a = (rng() % m) * (rng() % m) % m;
    const u64 w = 2 + rng() % 40;
    const auto window = [&](u64 y) { return y < 2 ? brute_window(a, m, y) : count_roots_up_to(static_cast<i64>(a), m, y); };
    u64 total = 0, edge = 0;
    for (; edge + w <= m; edge += w) total += window(edge + w) - window(edge);
    const auto roots = enumerate_roots(static_cast<i64>(a), m);
    const auto in_range = std::count_if(roots.begin(), roots.end(), [&](u64 z) { return z >= 1 && z <= edge; });
    ASSERT_EQ(total, static_cast<u64>(in_range));
  }
}

TEST(Bounds, SqrtAndWindow) {
  EXPECT_TRUE(within_sqrt_bound(8, 24));
  EXPECT_TRUE(within_sqrt_bound(4, 1));
  EXPECT_FALSE(within_sqrt_bound(5, 1));
  EXPECT_TRUE(within_window_bound(3, 5));
  // 4 * 8^(2/3) + 1 = 17 exactly.
  EXPECT_TRUE(within_window_bound(17, 8));
  EXPECT_FALSE(within_window_bound(18, 8));
  for (u64 y = 2; y < 3000; ++y) {
    const double bound = 4.0 * std::cbrt(static_cast<double>(y) * y) + 1.0;
    const u64 n = static_cast<u64>(std::floor(bound));
    if (std::abs(bound - std::round(bound)) < 1e-9) continue;
    ASSERT_TRUE(within_window_bound(n, y)) << y;
    ASSERT_FALSE(within_window_bound(n + 1, y)) << y;
  }
  EXPECT_TRUE(within_window_bound(1, u64{1} << 62));
}

TEST(SqrtBoundScan, Examples) {
  const auto r1 = verify_prop1(1);
  EXPECT_DOUBLE_EQ(r1.max_ratio, 1.0);
  EXPECT_FALSE(r1.violation);
  const auto r24 = verify_prop1(24);
  EXPECT_FALSE(r24.violation);
  EXPECT_NEAR(r24.max_ratio, 8.0 / std::sqrt(24.0), 1e-12);
  EXPECT_EQ(r24.witness_m, 24u);
  const auto r2000 = verify_prop1(2000);
  EXPECT_FALSE(r2000.violation);
  EXPECT_LE(r2000.max_ratio, 4.0);
}

TEST(WindowBoundGrid, ExampleAndSeededGrid) {
  const std::vector<WindowTriple> one{{1, 8, 5}};
  const auto r = verify_prop2(one);
  EXPECT_FALSE(r.violation);
  EXPECT_NEAR(r.max_ratio, 3.0 / std::cbrt(25.0), 1e-12);
  const auto g1 = random_window_grid(500, 1'000'000, 42);
  const auto g2 = random_window_grid(500, 1'000'000, 42);
  ASSERT_EQ(g1.size(), 500u);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    EXPECT_EQ(g1[i].a, g2[i].a);
    EXPECT_EQ(g1[i].m, g2[i].m);
    EXPECT_EQ(g1[i].y, g2[i].y);
    EXPECT_LT(g1[i].a, g1[i].m);
    EXPECT_GE(g1[i].y, 2u);
    EXPECT_LE(g1[i].y, g1[i].m);
  }
  EXPECT_FALSE(verify_prop2(g1).violation);
}

TEST(Oracle, CountRootsScans) {
  const auto c = verify_count_roots(500);
  EXPECT_FALSE(c.mismatch);
  EXPECT_EQ(c.moduli, 500u);
  EXPECT_EQ(c.checked, 500u * 501u / 2u);
  EXPECT_FALSE(c.sqrt_bound_violation);
  EXPECT_NEAR(c.max_ratio, 8.0 / std::sqrt(24.0), 1e-12);
  const auto pp = verify_prime_power_counts(5000);
  EXPECT_FALSE(pp.mismatch);
  EXPECT_FALSE(pp.sqrt_bound_violation);
  EXPECT_NEAR(pp.max_ratio, std::sqrt(2.0), 1e-12);
  EXPECT_GT(pp.checked, 0u);
}
