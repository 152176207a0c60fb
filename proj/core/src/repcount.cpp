#include "romanoff/repcount.hpp"

#include <algorithm>
#include <string>

#include "romanoff/errors.hpp"
#include "romanoff/parallel.hpp"

namespace romanoff {

namespace {

constexpr u64 kChunk = u64{1} << 16;
constexpr u64 kMaxTuples = u64{100'000'000};

// min(g^e, cap + 1).
u64 saturating_power(u64 g, u64 e, u64 cap) {
  u128 v = 1;
  for (u64 i = 0; i < e; ++i) {
    v *= g;
    if (v > cap) return cap + 1;
  }
  return static_cast<u64>(v);
}

mpz_class to_mpz(u64 v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class power_of_two(unsigned exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
  return out;
}

}  // namespace

std::string_view to_string(ExponentShape shape) {
  return shape == ExponentShape::squares ? "squares" : "linear";
}

ExponentShape parse_shape(std::string_view text) {
  if (text == "squares") return ExponentShape::squares;
  if (text == "linear") return ExponentShape::linear;
  throw DomainError("unknown exponent shape: " + std::string(text));
}

std::vector<unsigned> power_exponents(u64 x, u64 g, ExponentShape shape, bool zero_in_N) {
  if (g < 2) throw DomainError("power_exponents: base must be at least 2");
  std::vector<unsigned> out;
  for (unsigned m = zero_in_N ? 0 : 1;; ++m) {
    const u64 e = shape == ExponentShape::squares ? u64{m} * m : m;
    if (saturating_power(g, e, x) > x) break;
    out.push_back(m);
  }
  return out;
}

std::map<u64, u64> power_sums(u64 x, u64 g, unsigned k, ExponentShape shape, bool zero_in_N) {
  if (k == 0) throw DomainError("power_sums: at least one term is required");
  std::vector<u64> values;
  for (unsigned m : power_exponents(x, g, shape, zero_in_N))
    values.push_back(saturating_power(g, shape == ExponentShape::squares ? u64{m} * m : m, x));

  u128 tuples = 1;
  for (unsigned i = 0; i < k; ++i) {
    tuples *= std::max<std::size_t>(values.size(), 1);
    if (tuples > kMaxTuples) throw BudgetError("power_sums: too many exponent tuples");
  }

  std::map<u64, u64> sums;
  if (values.empty()) return sums;
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    u128 s = 0;
    for (std::size_t i : idx) s += values[i];
    if (s <= x) ++sums[static_cast<u64>(s)];
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == values.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  return sums;
}

RepresentationTable::RepresentationTable(const RepRequest& request) : request_(request) {
  const u64 x = request.limit;
  if (x < 4) throw DomainError("representation table: limit must be at least 4");
  if (x > 0xffffffffULL) throw DomainError("representation table: limit must fit in 32 bits");
  if (request.terms == 0) throw DomainError("representation table: terms must be >= 1");
  if (bytes_for(x) > request.memory_budget)
    throw BudgetError("representation table: limit exceeds the memory budget");

  const auto sums = power_sums(x, request.base, request.terms, request.shape, request.zero_in_N);
  u64 tuples = 0;
  for (const auto& [s, c] : sums) tuples += c;
  if (tuples > 0xffffffffULL) throw BudgetError("representation table: r(n) may overflow");

  const auto primes = sieve_primes(x, request.memory_budget).to_vector32();
  counts_.assign(x + 1, 0);
  const std::vector<std::pair<u64, u64>> shifts(sums.begin(), sums.end());

  const std::size_t chunks = (x + kChunk) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const u64 lo = c * kChunk;
    const u64 hi = std::min(x + 1, lo + kChunk);
    for (const auto& [s, mult] : shifts) {
      if (s + 2 >= hi) break;  // shifts are increasing
      const u64 plo = lo > s ? lo - s : 0;
      const u64 phi = hi - s;  // exclusive
      auto it = std::lower_bound(primes.begin(), primes.end(), plo);
      for (; it != primes.end() && *it < phi; ++it)
        counts_[*it + s] += static_cast<std::uint32_t>(mult);
    }
  });
}

u64 RepresentationTable::r(u64 n) const {
  if (n > request_.limit) throw DomainError("RepresentationTable::r: n exceeds the limit");
  return counts_[n];
}

RepStats RepresentationTable::stats() const {
  RepStats st;
  st.limit = request_.limit;
  st.base = request_.base;
  st.terms = request_.terms;
  st.shape = request_.shape;
  st.zero_in_N = request_.zero_in_N;
  std::vector<u64> hist;
  u128 sum_r = 0, sum_r2 = 0;
  for (u64 n = 1; n <= request_.limit; ++n) {
    const u64 r = counts_[n];
    if (r >= hist.size()) hist.resize(r + 1, 0);
    ++hist[r];
    sum_r += r;
    sum_r2 += static_cast<u128>(r) * r;
  }
  if (sum_r2 > ~u64{0}) throw OverflowError("RepStats: sum of r^2 exceeds 64 bits");
  st.sum_r = static_cast<u64>(sum_r);
  st.sum_r2 = static_cast<u64>(sum_r2);
  for (u64 r = 0; r < hist.size(); ++r) {
    if (hist[r] == 0) continue;
    st.histogram[r] = hist[r];
    if (r > 0) st.represented += hist[r];
  }
  return st;
}

RepStats representation_stats(const RepRequest& request) {
  return RepresentationTable(request).stats();
}

mpq_class cs_lower_bound(const RepStats& stats) {
  if (stats.sum_r2 == 0) throw DomainError("cs_lower_bound: no representations below the limit");
  mpq_class q(to_mpz(stats.sum_r) * to_mpz(stats.sum_r), to_mpz(stats.sum_r2));
  q.canonicalize();
  return q;
}

bool cs_inequality_holds(const RepStats& stats) {
  return to_mpz(stats.represented) * to_mpz(stats.sum_r2) >= to_mpz(stats.sum_r) * to_mpz(stats.sum_r);
}

u64 sum_r_lower_witness(u64 x, u64 g) {
  if (x < 12) throw DomainError("sum_r_lower_witness: x must be at least 12");
  if (g < 2) throw DomainError("sum_r_lower_witness: base must be at least 2");
  const u64 third = x / 3;
  const u64 pi = sieve_primes(third).count();
  u64 m = 0;
  while (saturating_power(g, (m + 1) * (m + 1), third) <= third) ++m;
  return pi * m * m;
}

WitnessCheck check_sum_r_witness(u64 x, u64 g, bool zero_in_N, u64 memory_budget) {
  RepRequest req;
  req.limit = x;
  req.base = g;
  req.terms = 2;
  req.shape = ExponentShape::squares;
  req.zero_in_N = zero_in_N;
  req.memory_budget = memory_budget;
  const auto st = representation_stats(req);
  const u64 w = sum_r_lower_witness(x, g);
  return {w, st.sum_r, st.sum_r >= w};
}

HQuadruple h_value(unsigned m1, unsigned m2, unsigned k1, unsigned k2) {
  HQuadruple q{m1, m2, k1, k2, {}};
  q.h = power_of_two(m1 * m1) + power_of_two(m2 * m2) - power_of_two(k1 * k1) -
        power_of_two(k2 * k2);
  return q;
}

i64 h_value_small(unsigned m1, unsigned m2, unsigned k1, unsigned k2) {
  if (std::max({m1, m2, k1, k2}) > 7)
    throw OverflowError("h_value_small: exponent above 7 does not fit in 64 bits");
  auto p = [](unsigned m) { return i64{1} << (m * m); };
  return p(m1) + p(m2) - p(k1) - p(k2);
}

HZeroReport verify_h_zero_iff(unsigned max_exponent) {
  HZeroReport report;
  report.max_exponent = max_exponent;
  const unsigned n = max_exponent + 1;
  std::vector<mpz_class> pair_sum(n * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      pair_sum[i * n + j] = power_of_two(i * i) + power_of_two(j * j);

  mpz_class h;
  for (unsigned m1 = 0; m1 < n; ++m1)
    for (unsigned m2 = 0; m2 < n; ++m2)
      for (unsigned k1 = 0; k1 < n; ++k1)
        for (unsigned k2 = 0; k2 < n; ++k2) {
          mpz_sub(h.get_mpz_t(), pair_sum[m1 * n + m2].get_mpz_t(),
                  pair_sum[k1 * n + k2].get_mpz_t());
          const bool zero = sgn(h) == 0;
          const bool same = (m1 == k1 && m2 == k2) || (m1 == k2 && m2 == k1);
          ++report.checked;
          if (zero) ++report.zero_count;
          if (zero != same && !report.counterexample)
            report.counterexample = HQuadruple{m1, m2, k1, k2, h};
        }
  return report;
}

u64 prime_pairs(const PrimeSet& primes, i64 h) {
  if (h == 0) throw DomainError("prime_pairs: h must be nonzero");
  const u64 gap = h < 0 ? u64(0) - static_cast<u64>(h) : static_cast<u64>(h);
  const u64 x = primes.limit();
  if (gap > x) return 0;
  u64 count = 0;
  for (u64 p = 2; p + gap <= x; ++p)
    if (primes.contains(p) && primes.contains(p + gap)) ++count;
  return count;
}

u64 prime_pairs(u64 x, i64 h, u64 memory_budget) {
  if (h == 0) throw DomainError("prime_pairs: h must be nonzero");
  return prime_pairs(sieve_primes(std::max<u64>(x, 2), memory_budget), h);
}

mpq_class singular_product(i64 h, bool include_two) {
  if (h == 0) throw DomainError("singular_product: h must be nonzero");
  const u64 magnitude = h < 0 ? u64(0) - static_cast<u64>(h) : static_cast<u64>(h);
  mpq_class product(1);
  const Factorization h_factors = factorize(magnitude);
  for (const auto& f : h_factors.factors()) {
    if (f.prime == 2 && !include_two) continue;
    product *= mpq_class(to_mpz(f.prime + 1), to_mpz(f.prime));
  }
  product.canonicalize();
  return product;
}

ClassicalDensity classical_density(u64 x, u64 g, bool zero_in_N, u64 memory_budget) {
  RepRequest req;
  req.limit = x;
  req.base = g;
  req.terms = 1;
  req.shape = ExponentShape::linear;
  req.zero_in_N = zero_in_N;
  req.memory_budget = memory_budget;
  const RepresentationTable table(req);
  ClassicalDensity out;
  out.limit = x;
  out.base = g;
  out.zero_in_N = zero_in_N;
  for (u64 n = 1; n <= x; ++n) {
    if (!table.representable(n)) continue;
    ++out.count;
    if (n % 2 == 1) ++out.odd_count;
  }
  out.odd_total = (x + 1) / 2;
  return out;
}

bool classically_representable(u64 n, u64 g, bool zero_in_N) {
  if (g < 2) throw DomainError("classically_representable: base must be at least 2");
  for (u64 m = zero_in_N ? 0 : 1;; ++m) {
    const u64 s = saturating_power(g, m, n);
    if (s + 2 > n) return false;
    if (is_prime(n - s)) return true;
  }
}

u64 nonrepresentable_odds(u64 x, bool zero_in_N, u64 memory_budget) {
  if (x < 3) throw DomainError("nonrepresentable_odds: x must be at least 3");
  RepRequest req;
  req.limit = std::max<u64>(x, 4);
  req.base = 2;
  req.terms = 1;
  req.shape = ExponentShape::linear;
  req.zero_in_N = zero_in_N;
  req.memory_budget = memory_budget;
  const RepresentationTable table(req);
  u64 count = 0;
  for (u64 n = 3; n <= x; n += 2)
    if (!table.representable(n)) ++count;
  return count;
}

}  // namespace romanoff
