#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <gmpxx.h>

#include "romanoff/arith.hpp"
#include "romanoff/errors.hpp"
#include "romanoff/interval.hpp"
#include "romanoff/ledger.hpp"
#include "romanoff/repcount.hpp"

using namespace romanoff;

namespace {

u64 naive_order(u64 d) {
  if (d == 1) return 1;
  u64 x = 2 % d, k = 1;
  while (x != 1) {
    x = x * 2 % d;
    ++k;
  }
  return k;
}

bool odd_squarefree(u64 d) {
  if (d % 2 == 0) return false;
  for (u64 p = 3; p * p <= d; p += 2)
    if (d % (p * p) == 0) return false;
  return true;
}

long double naive_s1(u64 dmax) {
  long double s = 0;
  for (u64 d = 1; d <= dmax; d += 2)
    if (odd_squarefree(d)) s += 1.0L / (static_cast<long double>(d) * std::sqrt(static_cast<long double>(naive_order(d))));
  return s;
}

}  // namespace

TEST(Interval, EnclosesAndRounds) {
  const auto third = Interval::from_rational(mpq_class(1, 3));
  EXPECT_LT(third.lower(), third.upper());
  EXPECT_NEAR(third.mid(), 1.0 / 3.0, 1e-16);
  EXPECT_LT(third.width(), 1e-25);
  const auto root = Interval::inverse_root_term(3, 2);
  EXPECT_NEAR(root.mid(), 1.0 / (3.0 * std::sqrt(2.0)), 1e-16);
  const auto c = Interval::cbrt_square(8);
  EXPECT_TRUE(c.contains(4.0));
  const auto ll = Interval::log_log(1'000'000);
  EXPECT_NEAR(ll.mid(), std::log(std::log(1e6)), 1e-14);
  EXPECT_TRUE(certainly_less(Interval::exact(1), Interval::exact(2)));
  EXPECT_TRUE(overlaps(third, Interval::from_rational(mpq_class(1, 3))));
  EXPECT_EQ(Interval::exact(3).to_string(), "3");
  EXPECT_EQ(Interval::from_rational(mpq_class(8, 5)).to_string(), "1.6");
  EXPECT_GE(Interval(128).decimal_digits(), 36);
}

TEST(S1, Examples) {
  const auto r1 = s1_partial(1);
  EXPECT_TRUE(r1.value.contains(1.0));
  EXPECT_EQ(r1.term_count, 1u);
  const auto r3 = s1_partial(3);
  EXPECT_NEAR(r3.value.mid(), 1.0 + 1.0 / (3.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_EQ(r3.value.to_string(5), "1.2357");
  const auto r5 = s1_partial(5);
  EXPECT_NEAR(r5.value.mid(), 1.0 + 1.0 / (3.0 * std::sqrt(2.0)) + 0.1, 1e-15);
  EXPECT_EQ(r5.value.to_string(5), "1.3357");
  EXPECT_THROW(s1_partial(0), DomainError);
}

TEST(S1, MatchesNaiveSum) {
  for (u64 dmax : {99ULL, 1'000ULL, 5'001ULL}) {
    const auto r = s1_partial(dmax);
    EXPECT_NEAR(r.value.mid(), static_cast<double>(naive_s1(dmax)), 1e-12) << dmax;
    EXPECT_LT(r.value.width(), 1e-20);
  }
}

TEST(S1, RowsAreConsistent) {
  const auto rows = s1_rows(2'000);
  Interval total;
  for (const auto& row : rows) {
    ASSERT_TRUE(odd_squarefree(row.d));
    ASSERT_EQ(row.mu_sq, 1);
    ASSERT_EQ(row.order2, naive_order(row.d));
    ASSERT_EQ(row.p_plus, largest_prime_factor(row.d));
    total += row.term;
  }
  EXPECT_EQ(rows.front().d, 1u);
  EXPECT_EQ(rows.front().p_plus, kUnitMarker);
  const auto r = s1_partial(2'000);
  EXPECT_EQ(r.term_count, rows.size());
  EXPECT_TRUE(overlaps(total, r.value));
}

TEST(S1, MonotoneWithShrinkingDecades) {
  std::vector<double> s;
  for (u64 d : {100ULL, 1'000ULL, 10'000ULL, 100'000ULL}) s.push_back(s1_partial(d).value.mid());
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GT(s[i], s[i - 1]);
  for (std::size_t i = 2; i < s.size(); ++i) EXPECT_LT(s[i] - s[i - 1], s[i - 1] - s[i - 2]);
  double previous = 0;
  for (u64 d = 1; d < 300; ++d) {
    const double v = s1_partial(d).value.mid();
    EXPECT_GE(v, previous);
    previous = v;
  }
}

TEST(S1, DeterministicAcrossThreads) {
  setenv("ROMANOFF_THREADS", "1", 1);
  const auto a = s1_partial(200'000).value.to_string();
  setenv("ROMANOFF_THREADS", "3", 1);
  const auto b = s1_partial(200'000).value.to_string();
  unsetenv("ROMANOFF_THREADS");
  EXPECT_EQ(a, b);
}

TEST(S2, Examples) {
  EXPECT_EQ(s2_partial(100, 3).exact, mpq_class(1));
  EXPECT_EQ(s2_partial(100, 7).exact, mpq_class(8, 5));
  EXPECT_EQ(s2_partial(100, 7).term_count, 4u);
  EXPECT_EQ(smooth_odd_squarefree(100, 7), (std::vector<u64>{1, 3, 5, 15}));
  // Strict cutoffs: d < D and P+(d) < y.
  EXPECT_EQ(s2_partial(15, 7).exact, mpq_class(23, 15));
  EXPECT_EQ(s2_partial(100, 5).exact, mpq_class(4, 3));
}

TEST(S2, ClosureAndProductBound) {
  const mpq_class p7 = mpq_class(4, 3) * mpq_class(6, 5);
  const mpq_class p11 = p7 * mpq_class(8, 7);
  EXPECT_EQ(s2_partial(16, 7).exact, p7);
  EXPECT_EQ(s2_partial(1'000, 7).exact, p7);
  EXPECT_EQ(s2_partial(106, 11).exact, p11);
  EXPECT_EQ(small_prime_product(11).exact, p11);
  EXPECT_LT(*s2_partial(105, 11).exact, p11);
  for (u64 y = 3; y <= 40; ++y)
    for (u64 d : {2ULL, 10ULL, 50ULL, 300ULL, 5'000ULL}) {
      const auto s = *s2_partial(d, y).exact;
      const auto prod = *small_prime_product(y).exact;
      ASSERT_LE(s, prod) << d << " " << y;
    }
}

TEST(S2, RowsMatchDirectEnumeration) {
  const auto rows = s2_rows(3'000, 20);
  std::vector<u64> expected;
  for (u64 d = 1; d < 3'000; d += 2)
    if (odd_squarefree(d) && (d == 1 || largest_prime_factor(d) < 20)) expected.push_back(d);
  ASSERT_EQ(rows.size(), expected.size());
  mpq_class total(0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].d, expected[i]);
    ASSERT_TRUE(rows[i].exact_term);
    EXPECT_EQ(*rows[i].exact_term, mpq_class(1, static_cast<unsigned long>(expected[i])));
    total += *rows[i].exact_term;
  }
  EXPECT_EQ(*s2_partial(3'000, 20).exact, total);
}

TEST(Mertens, Examples) {
  EXPECT_EQ(mertens_partial(3).exact, mpq_class(1, 2));
  EXPECT_EQ(mertens_partial(10).exact, mpq_class(247, 210));
  EXPECT_EQ(mertens_partial(10).value.to_string(6), "1.17619");
  EXPECT_EQ(mertens_partial(11).term_count, 4u);
}

TEST(Mertens, ResidualStabilises) {
  std::vector<double> r;
  for (u64 y : {10'000ULL, 100'000ULL, 1'000'000ULL}) r.push_back(mertens_partial(y).residual->mid());
  for (double a : r)
    for (double b : r) EXPECT_LT(std::abs(a - b), 0.02);
  EXPECT_LT(std::abs(r.back() - 0.2615), 0.02);
}

TEST(Product, ExamplesAndLogBound) {
  EXPECT_EQ(small_prime_product(4).exact, mpq_class(4, 3));
  EXPECT_EQ(small_prime_product(8).exact, mpq_class(64, 35));
  EXPECT_EQ(small_prime_product(3).exact, mpq_class(1));
  for (u64 y : {3ULL, 4ULL, 10ULL, 100ULL, 10'000ULL}) {
    const auto p = small_prime_product(y);
    ASSERT_TRUE(p.log_bound_holds);
    EXPECT_TRUE(*p.log_bound_holds) << y;
  }
}

TEST(SumKind, RoundTrip) {
  for (auto k : {SumKind::s1, SumKind::s2, SumKind::mertens, SumKind::product})
    EXPECT_EQ(parse_sum_kind(to_string(k)), k);
  EXPECT_THROW(parse_sum_kind("s3"), DomainError);
}

TEST(K2, Examples) {
  EXPECT_EQ(count_k2_solutions(1, 3, 1, 2, 10, true), 11u);
  EXPECT_EQ(count_k2_solutions(1, 3, 1, 2, 10, false), 10u);
  // h = 2 - 2^{k2^2} vanishes mod 7 exactly when 3 does not divide k2.
  EXPECT_EQ(count_k2_solutions(7, 1, 1, 1, 10, true), 7u);
  EXPECT_EQ(count_k2_solutions(7, 1, 1, 1, 10, false), 7u);
  EXPECT_EQ(brute_count_k2_solutions(7, 1, 1, 1, 10, true), 7u);
  EXPECT_THROW(count_k2_solutions(4, 1, 1, 1, 10), DomainError);
}

TEST(K2, MatchesBruteForceExhaustively) {
  for (u64 d = 1; d <= 301; d += 2)
    for (unsigned m1 = 0; m1 <= 4; ++m1)
      for (unsigned m2 = 0; m2 <= 4; ++m2)
        for (unsigned k1 = 0; k1 <= 4; ++k1) {
          const u64 fast = count_k2_solutions(d, m1, m2, k1, 25);
          ASSERT_EQ(fast, brute_count_k2_solutions(d, m1, m2, k1, 25)) << d << " " << m1 << m2 << k1;
          ASSERT_TRUE(within_k2_bound(fast, 25, naive_order(d)));
        }
}

TEST(K2, SeededSamples) {
  const auto r = verify_k2_counts(300, 99);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.checked, 300u);
  const auto r0 = verify_k2_counts(100, 5, 10'000, 10, 100, false);
  EXPECT_TRUE(r0.holds());
}

TEST(K2, BoundArithmetic) {
  // (floor(100/3)+1)^2 * 16 * 3 = 34^2 * 48.
  EXPECT_TRUE(within_k2_bound(235, 100, 3));
  EXPECT_FALSE(within_k2_bound(236, 100, 3));
}

TEST(Assembly, FubiniAndIndependentSum) {
  const auto r = assembly_e13(3, 10, 5);
  EXPECT_EQ(r.lhs, r.lhs_exchanged);
  EXPECT_EQ(r.lhs, r.lhs_small_order + r.lhs_large_order);
  // Smooth odd squarefree d < 10 with P+ < 5: {1, 3}.
  EXPECT_EQ(r.divisors, 2u);
  u64 ones = 0, threes = 0;
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; b <= 3; ++b)
      for (unsigned c = 0; c <= 3; ++c)
        for (unsigned d = 0; d <= 3; ++d) {
          const i64 h = h_value_small(a, b, c, d);
          if (h == 0) continue;
          ++ones;
          if (h % 3 == 0) ++threes;
        }
  EXPECT_EQ(r.lhs, mpq_class(static_cast<unsigned long>(ones)) + mpq_class(static_cast<unsigned long>(threes), 3));
}

TEST(Assembly, IndependentSumWiderRange) {
  const auto r = assembly_e13(5, 200, 12, false);
  const auto ds = smooth_odd_squarefree(200, 12);
  mpq_class expected(0);
  for (unsigned a = 1; a <= 5; ++a)
    for (unsigned b = 1; b <= 5; ++b)
      for (unsigned c = 1; c <= 5; ++c)
        for (unsigned d = 1; d <= 5; ++d) {
          const i64 h = h_value_small(a, b, c, d);
          if (h == 0) continue;
          for (u64 q : ds)
            if (h % static_cast<i64>(q) == 0) expected += mpq_class(1, static_cast<unsigned long>(q));
        }
  EXPECT_EQ(r.lhs, expected);
  EXPECT_EQ(r.lhs_exchanged, expected);
}

TEST(Assembly, MonotoneInEachParameter) {
  const auto base = assembly_e13(3, 30, 7).lhs;
  EXPECT_LE(base, assembly_e13(4, 30, 7).lhs);
  EXPECT_LE(base, assembly_e13(3, 60, 7).lhs);
  EXPECT_LE(base, assembly_e13(3, 30, 11).lhs);
  EXPECT_THROW(assembly_e13(40, 1'000'000, 100, true, 96, 1'000), BudgetError);
}
