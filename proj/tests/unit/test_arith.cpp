#include <gtest/gtest.h>

#include <random>
#include <vector>

#include <gmpxx.h>

#include "romanoff/arith.hpp"
#include "romanoff/errors.hpp"

using namespace romanoff;

namespace {

mpz_class big(u64 v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).factors().empty());
  EXPECT_TRUE(factorize(1).is_unit());
  const std::vector<PrimePower> f360{{2, 3}, {3, 2}, {5, 1}};
  EXPECT_EQ(factorize(360).factors(), f360);
  const std::vector<PrimePower> fp{{1'000'000'007, 1}};
  EXPECT_EQ(factorize(1'000'000'007).factors(), fp);
}

TEST(Factorize, LargeInputsMultiplyBack) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const u64 n = (rng() >> 1) | 1;
    const auto f = factorize(n);
    mpz_class product = 1;
    u64 previous = 0;
    for (const auto& pp : f.factors()) {
      EXPECT_GT(pp.prime, previous);
      previous = pp.prime;
      EXPECT_NE(mpz_probab_prime_p(big(pp.prime).get_mpz_t(), 40), 0) << pp.prime;
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), big(pp.prime).get_mpz_t(), pp.exponent);
      product *= pe;
    }
    EXPECT_EQ(product, big(n)) << n;
  }
  // Semiprime with two factors above the trial-division range.
  const u64 p = 2'147'483'647, q = 4'294'967'291;
  const std::vector<PrimePower> expected{{p, 1}, {q, 1}};
  EXPECT_EQ(factorize(p * q).factors(), expected);
  EXPECT_EQ(factorize(kMaxInput).factors(), (std::vector<PrimePower>{{2, 63}}));
}

TEST(Factorize, RejectsOutOfRange) {
  EXPECT_THROW(factorize(0), DomainError);
  EXPECT_THROW(factorize(kMaxInput + 1), DomainError);
}

TEST(IsPrime, MatchesGmp) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = rng() >> (i % 40);
    EXPECT_EQ(is_prime(n), mpz_probab_prime_p(big(n).get_mpz_t(), 40) != 0) << n;
  }
  for (u64 n = 0; n < 5000; ++n)
    EXPECT_EQ(is_prime(n), mpz_probab_prime_p(big(n).get_mpz_t(), 40) != 0) << n;
  // Strong pseudoprime to many small bases.
  EXPECT_FALSE(is_prime(3'825'123'056'546'413'051ULL));
}

TEST(Mobius, Examples) {
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(30), -1);
  EXPECT_EQ(mobius(12), 0);
  EXPECT_EQ(largest_prime_factor(35), 7u);
  EXPECT_EQ(largest_prime_factor(2), 2u);
  EXPECT_EQ(largest_prime_factor(1), kUnitMarker);
}

TEST(Mobius, AgreesWithSieveTable) {
  const u64 n_max = 1'000'000;
  std::vector<int> mu(n_max + 1, 1);
  std::vector<u64> lpf(n_max + 1, 1);
  std::vector<bool> composite(n_max + 1, false);
  for (u64 p = 2; p <= n_max; ++p) {
    if (composite[p]) continue;
    for (u64 j = p; j <= n_max; j += p) {
      if (j > p) composite[j] = true;
      mu[j] = -mu[j];
      lpf[j] = p;
    }
    for (u64 j = p * p; j <= n_max; j += p * p) mu[j] = 0;
  }
  for (u64 n = 1; n <= n_max; ++n) {
    ASSERT_EQ(mobius(n), mu[n]) << n;
    ASSERT_EQ(largest_prime_factor(n), lpf[n]) << n;
  }
}

TEST(PowMod, Examples) {
  EXPECT_EQ(pow_mod(2, 10, 1000), 24u);
  EXPECT_EQ(pow_mod(5, 0, 7), 1u);
  EXPECT_EQ(pow_mod(5, 0, 1), 0u);
  const u64 m = 1'000'000'007;
  mpz_class expected;
  mpz_powm(expected.get_mpz_t(), mpz_class(2).get_mpz_t(), big(u64{1} << 62).get_mpz_t(),
           big(m).get_mpz_t());
  EXPECT_EQ(big(pow_mod(2, u64{1} << 62, m)), expected);
  EXPECT_THROW(pow_mod(2, 3, 0), DomainError);
}

TEST(PowMod, MatchesGmpNearWordSize) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const u64 a = rng(), e = rng(), m = rng() | 1;
    mpz_class expected;
    mpz_powm(expected.get_mpz_t(), big(a).get_mpz_t(), big(e).get_mpz_t(), big(m).get_mpz_t());
    ASSERT_EQ(big(pow_mod(a, e, m)), expected);
  }
}

TEST(InverseMod, RoundTrip) {
  for (u64 m = 2; m < 300; ++m)
    for (u64 a = 0; a < m; ++a) {
      const auto inv = inverse_mod(a, m);
      if (gcd(a, m) != 1) {
        EXPECT_FALSE(inv);
        continue;
      }
      ASSERT_TRUE(inv);
      EXPECT_EQ(mul_mod(a, *inv, m), 1 % m);
    }
}

TEST(MultOrder, Examples) {
  EXPECT_EQ(mult_order(2, 7).order, 3u);
  EXPECT_EQ(mult_order(2, 1).order, 1u);
  EXPECT_EQ(mult_order(2, 9).order, 6u);
  EXPECT_THROW(mult_order(2, 6), DomainError);
  EXPECT_THROW(mult_order(2, 0), DomainError);
}

TEST(MultOrder, MatchesNaiveStepping) {
  for (u64 a : {2u, 3u, 10u}) {
    const u64 d_max = a == 2 ? 10'000 : 2'000;
    for (u64 d = 2; d <= d_max; ++d) {
      if (gcd(a, d) != 1) continue;
      u64 x = a % d, k = 1;
      while (x != 1) {
        x = x * a % d;
        ++k;
      }
      ASSERT_EQ(mult_order(a, d).order, k) << a << " mod " << d;
    }
  }
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker_symbol(1, 2), 1);
  EXPECT_EQ(kronecker_symbol(5, 2), -1);
  EXPECT_EQ(kronecker_symbol(4, 2), 0);
  EXPECT_EQ(kronecker_symbol(-7, 2), 1);
  EXPECT_THROW(kronecker_symbol(3, 2), DomainError);
  EXPECT_THROW(kronecker_symbol(1, 9), DomainError);
}

TEST(Kronecker, MatchesResidueTable) {
  for (u64 p = 3; p <= 1000; p += 2) {
    if (!is_prime(p)) continue;
    std::vector<bool> square(p, false);
    for (u64 z = 1; z < p; ++z) square[z * z % p] = true;
    for (u64 delta = 0; delta < p; ++delta) {
      const int k = kronecker_symbol(static_cast<i64>(delta), p);
      ASSERT_EQ(k == 1, square[delta]) << delta << " mod " << p;
      ASSERT_EQ(k == 0, delta == 0);
    }
  }
}

TEST(Jacobi, MatchesGmp) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    const i64 a = static_cast<i64>(rng());
    const u64 n = (rng() >> 2) | 1;
    ASSERT_EQ(jacobi(a, n), mpz_jacobi(mpz_class(std::to_string(a)).get_mpz_t(), big(n).get_mpz_t()));
  }
}

TEST(DiscreteLog, Examples) {
  EXPECT_EQ(discrete_log_base2(1, 7), 0u);
  EXPECT_EQ(discrete_log_base2(4, 7), 2u);
  EXPECT_FALSE(discrete_log_base2(3, 7));
  EXPECT_EQ(discrete_log_base2(5, 1), 0u);
  EXPECT_THROW(discrete_log_base2(1, 8), DomainError);
  EXPECT_THROW(discrete_log_base2(3, 9), NotCoprimeError);
}

TEST(DiscreteLog, RoundTrip) {
  std::mt19937_64 rng(17);
  for (u64 d = 3; d <= 10'000; d += 2) {
    const u64 e = mult_order(2, d).order;
    for (int t = 0; t < 3; ++t) {
      const u64 j = rng() % (4 * e);
      const auto got = discrete_log_base2(pow_mod(2, j, d), d);
      ASSERT_TRUE(got) << d;
      ASSERT_LT(*got, e);
      ASSERT_EQ(*got, j % e) << d;
    }
  }
}

TEST(IntegerRoots, Boundaries) {
  for (u64 n : {0ULL, 1ULL, 2ULL, 3ULL, 4ULL, 15ULL, 16ULL, 17ULL, ~0ULL, (1ULL << 62) - 1}) {
    const u128 s = isqrt(n);
    EXPECT_LE(s * s, n);
    EXPECT_GT((s + 1) * (s + 1), n);
    const u128 c = icbrt(n);
    EXPECT_LE(c * c * c, n);
    EXPECT_GT((c + 1) * (c + 1) * (c + 1), n);
  }
}
