#include "romanoff/ledger.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "romanoff/errors.hpp"
#include "romanoff/parallel.hpp"
#include "romanoff/primes.hpp"
#include "romanoff/quadroots.hpp"

namespace romanoff {

namespace {

constexpr u64 kRowChunk = u64{1} << 14;

mpz_class to_mpz(u64 v) { return mpz_class(static_cast<unsigned long>(v)); }

// Smallest prime factor for every n <= limit, and e2(p) for odd primes p.
struct OrderSieve {
  std::vector<std::uint32_t> spf;
  std::vector<std::uint32_t> prime_order;

  explicit OrderSieve(u64 limit) : spf(limit + 1, 0), prime_order(limit + 1, 0) {
    if (limit > 0xffffffffULL) throw DomainError("OrderSieve: limit must fit in 32 bits");
    std::vector<u64> odd_primes;
    for (u64 i = 2; i <= limit; ++i) {
      if (spf[i] != 0) continue;
      for (u64 j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
      if (i != 2) odd_primes.push_back(i);
    }
    const std::size_t chunks = (odd_primes.size() + 4095) / 4096;
    parallel_for(chunks, [&](std::size_t c) {
      const std::size_t end = std::min(odd_primes.size(), (c + 1) * 4096);
      for (std::size_t i = c * 4096; i < end; ++i) {
        const u64 p = odd_primes[i];
        prime_order[p] = static_cast<std::uint32_t>(mult_order(2, p).order);
      }
    });
  }

  // For odd d: (squarefree, largest prime, e2(d)).
  struct Info {
    bool squarefree;
    u64 p_plus;
    u64 order2;
  };

  Info info(u64 d) const {
    Info out{true, kUnitMarker, 1};
    while (d > 1) {
      const u64 p = spf[d];
      d /= p;
      if (d % p == 0) return {false, 0, 0};
      out.p_plus = std::max(out.p_plus, p);
      out.order2 = std::lcm(out.order2, u64{prime_order[p]});
    }
    return out;
  }
};

// Sum of 1/p over the given primes as a reduced fraction (num, den), by
// binary splitting. The denominator is the product of distinct primes, so
// no reduction step is needed.
std::pair<mpz_class, mpz_class> reciprocal_sum(const std::vector<u64>& primes, std::size_t lo,
                                               std::size_t hi) {
  if (hi - lo == 1) return {mpz_class(1), to_mpz(primes[lo])};
  const std::size_t mid = lo + (hi - lo) / 2;
  auto [n1, d1] = reciprocal_sum(primes, lo, mid);
  auto [n2, d2] = reciprocal_sum(primes, mid, hi);
  return {n1 * d2 + n2 * d1, d1 * d2};
}

mpz_class product_tree(const std::vector<u64>& values, std::size_t lo, std::size_t hi) {
  if (hi == lo) return mpz_class(1);
  if (hi - lo == 1) return to_mpz(values[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(values, lo, mid) * product_tree(values, mid, hi);
}

std::vector<u64> primes_below(u64 y) {
  if (y <= 2) return {};
  return sieve_primes(y - 1).to_vector();
}

SumReport make_report(SumKind kind, unsigned precision_bits) {
  return SumReport{kind, std::nullopt, std::nullopt, Interval(precision_bits),
                   std::nullopt, 0, std::nullopt, std::nullopt};
}

u64 exponent_count(u64 m, bool zero_in_N) { return zero_in_N ? m + 1 : m; }

}  // namespace

std::string_view to_string(SumKind kind) {
  switch (kind) {
    case SumKind::s1:
      return "s1";
    case SumKind::s2:
      return "s2";
    case SumKind::mertens:
      return "mertens";
    case SumKind::product:
      return "product";
  }
  return "?";
}

SumKind parse_sum_kind(std::string_view text) {
  if (text == "s1") return SumKind::s1;
  if (text == "s2") return SumKind::s2;
  if (text == "mertens") return SumKind::mertens;
  if (text == "product") return SumKind::product;
  throw DomainError("unknown sum kind: " + std::string(text));
}

std::vector<LedgerRow> s1_rows(u64 dmax, unsigned precision_bits) {
  if (dmax < 1) throw DomainError("s1_rows: dmax must be at least 1");
  const OrderSieve sieve(dmax);
  std::vector<LedgerRow> rows;
  for (u64 d = 1; d <= dmax; d += 2) {
    const auto info = sieve.info(d);
    if (!info.squarefree) continue;
    rows.push_back({d, 1, info.p_plus, info.order2,
                    Interval::inverse_root_term(d, info.order2, precision_bits), std::nullopt});
  }
  return rows;
}

SumReport s1_partial(u64 dmax, unsigned precision_bits) {
  if (dmax < 1) throw DomainError("s1_partial: dmax must be at least 1");
  const OrderSieve sieve(dmax);
  // Fixed chunk boundaries keep the rounded result independent of thread count.
  const std::size_t chunks = (dmax + kRowChunk) / kRowChunk;
  std::vector<Interval> partial(chunks, Interval(precision_bits));
  std::vector<u64> counts(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    const u64 lo = c * kRowChunk;
    const u64 hi = std::min(dmax + 1, lo + kRowChunk);
    for (u64 d = lo | 1; d < hi; d += 2) {
      const auto info = sieve.info(d);
      if (!info.squarefree) continue;
      partial[c] += Interval::inverse_root_term(d, info.order2, precision_bits);
      ++counts[c];
    }
  });
  auto report = make_report(SumKind::s1, precision_bits);
  report.dmax = dmax;
  for (std::size_t c = 0; c < chunks; ++c) {
    report.value += partial[c];
    report.term_count += counts[c];
  }
  return report;
}

std::vector<u64> smooth_odd_squarefree(u64 dmax, u64 y, u64 work_budget) {
  if (dmax < 1) throw DomainError("smooth_odd_squarefree: dmax must be at least 1");
  if (y < 2) throw DomainError("smooth_odd_squarefree: y must be at least 2");
  std::vector<u64> primes;
  for (u64 p : primes_below(std::min(y, dmax)))
    if (p != 2) primes.push_back(p);

  std::vector<u64> out;
  if (dmax > 1) out.push_back(1);
  // Depth-first over increasing prime indices.
  struct Frame {
    u64 product;
    std::size_t next;
  };
  std::vector<Frame> stack{{1, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    for (std::size_t i = f.next; i < primes.size(); ++i) {
      const u128 v = static_cast<u128>(f.product) * primes[i];
      if (v >= dmax) break;
      out.push_back(static_cast<u64>(v));
      if (out.size() > work_budget)
        throw BudgetError("smooth_odd_squarefree: term count exceeds the work budget");
      stack.push_back({static_cast<u64>(v), i + 1});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LedgerRow> s2_rows(u64 dmax, u64 y, unsigned precision_bits, u64 work_budget) {
  std::vector<LedgerRow> rows;
  for (u64 d : smooth_odd_squarefree(dmax, y, work_budget)) {
    mpq_class term(1, to_mpz(d));
    rows.push_back({d, 1, largest_prime_factor(d), mult_order(2, d).order,
                    Interval::from_rational(term, precision_bits), term});
  }
  return rows;
}

SumReport s2_partial(u64 dmax, u64 y, unsigned precision_bits, u64 work_budget) {
  const auto ds = smooth_odd_squarefree(dmax, y, work_budget);
  mpz_class common(1);
  for (u64 p : primes_below(std::min(y, dmax)))
    if (p != 2) common *= to_mpz(p);
  mpz_class numerator(0), quotient;
  for (u64 d : ds) {
    mpz_divexact_ui(quotient.get_mpz_t(), common.get_mpz_t(), d);
    numerator += quotient;
  }
  mpq_class exact(numerator, common);
  exact.canonicalize();
  auto report = make_report(SumKind::s2, precision_bits);
  report.dmax = dmax;
  report.y = y;
  report.value = Interval::from_rational(exact, precision_bits);
  report.exact = exact;
  report.term_count = ds.size();
  return report;
}

SumReport mertens_partial(u64 y, unsigned precision_bits) {
  if (y < 3) throw DomainError("mertens_partial: y must be at least 3");
  const auto primes = primes_below(y);
  auto [num, den] = reciprocal_sum(primes, 0, primes.size());
  mpq_class exact;
  mpz_swap(mpq_numref(exact.get_mpq_t()), num.get_mpz_t());
  mpz_swap(mpq_denref(exact.get_mpq_t()), den.get_mpz_t());
  auto report = make_report(SumKind::mertens, precision_bits);
  report.y = y;
  report.value = Interval::from_rational(exact, precision_bits);
  report.residual = report.value - Interval::log_log(y, precision_bits);
  report.exact = std::move(exact);
  report.term_count = primes.size();
  return report;
}

SumReport small_prime_product(u64 y, unsigned precision_bits) {
  if (y < 3) throw DomainError("small_prime_product: y must be at least 3");
  std::vector<u64> odd;
  for (u64 p : primes_below(y))
    if (p != 2) odd.push_back(p);
  std::vector<u64> succ(odd.size());
  std::transform(odd.begin(), odd.end(), succ.begin(), [](u64 p) { return p + 1; });

  mpq_class exact(product_tree(succ, 0, succ.size()), product_tree(odd, 0, odd.size()));
  exact.canonicalize();
  auto report = make_report(SumKind::product, precision_bits);
  report.y = y;
  report.value = Interval::from_rational(exact, precision_bits);
  report.residual = report.value.log();
  if (odd.empty()) {
    report.log_bound_holds = true;  // empty product, both sides zero
  } else {
    auto [num, den] = reciprocal_sum(odd, 0, odd.size());
    mpq_class sum(num, den);
    report.log_bound_holds =
        certainly_less(*report.residual, Interval::from_rational(sum, precision_bits));
  }
  report.exact = std::move(exact);
  report.term_count = odd.size();
  return report;
}

u64 count_k2_solutions(u64 d, unsigned m1, unsigned m2, unsigned k1, u64 k_max, bool zero_in_N) {
  if (d == 0 || d % 2 == 0) throw DomainError("count_k2_solutions: d must be odd");
  const u64 first = zero_in_N ? 0 : 1;
  if (k_max < first) return 0;
  if (d == 1) return k_max - first + 1;

  const u64 l = (pow_mod(2, u64{m1} * m1, d) + pow_mod(2, u64{m2} * m2, d) + d -
                 pow_mod(2, u64{k1} * k1, d)) % d;
  if (gcd(l, d) != 1) return 0;  // powers of 2 are units mod odd d
  const auto j = discrete_log_base2(l, d);
  if (!j) return 0;
  const u64 order = mult_order(2, d).order;

  u64 count = 0;
  for (u64 r : enumerate_roots(static_cast<i64>(*j), order)) {
    const u64 start = r >= first ? r : r + order;
    if (start <= k_max) count += (k_max - start) / order + 1;
  }
  return count;
}

u64 brute_count_k2_solutions(u64 d, unsigned m1, unsigned m2, unsigned k1, u64 k_max,
                             bool zero_in_N) {
  if (d == 0 || d % 2 == 0) throw DomainError("brute_count_k2_solutions: d must be odd");
  auto pow2 = [](u64 e) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, e);
    return v;
  };
  const mpz_class partial = pow2(u64{m1} * m1) + pow2(u64{m2} * m2) - pow2(u64{k1} * k1);
  u64 count = 0;
  mpz_class h;
  for (u64 k2 = zero_in_N ? 0 : 1; k2 <= k_max; ++k2) {
    h = partial - pow2(k2 * k2);
    if (mpz_divisible_ui_p(h.get_mpz_t(), d)) ++count;
  }
  return count;
}

bool within_k2_bound(u64 count, u64 k_max, u64 order) {
  if (order == 0) throw DomainError("within_k2_bound: order must be positive");
  const u128 periods = k_max / order + 1;
  return static_cast<u128>(count) * count <= periods * periods * 16 * order;
}

K2Report verify_k2_counts(std::size_t samples, u64 seed, u64 d_max, unsigned exp_max, u64 k_max,
                          bool zero_in_N) {
  if (d_max < 1) throw DomainError("verify_k2_counts: d_max must be at least 1");
  std::mt19937_64 rng(seed);
  const unsigned lo = zero_in_N ? 0 : 1;
  auto exponent = [&] { return lo + static_cast<unsigned>(rng() % (exp_max - lo + 1)); };
  K2Report report;
  for (std::size_t i = 0; i < samples; ++i) {
    const u64 d = 2 * (rng() % ((d_max + 1) / 2)) + 1;
    const unsigned m1 = exponent(), m2 = exponent(), k1 = exponent();
    const u64 fast = count_k2_solutions(d, m1, m2, k1, k_max, zero_in_N);
    const u64 brute = brute_count_k2_solutions(d, m1, m2, k1, k_max, zero_in_N);
    ++report.checked;
    const K2Instance inst{d, m1, m2, k1, k_max, fast, brute};
    if (fast != brute && !report.mismatch) report.mismatch = inst;
    if (!within_k2_bound(fast, k_max, mult_order(2, d).order) && !report.bound_violation)
      report.bound_violation = inst;
  }
  return report;
}

AssemblyReport assembly_e13(u64 m, u64 dmax, u64 y, bool zero_in_N, unsigned precision_bits,
                            u64 work_budget) {
  if (m < 1 || dmax < 1) throw DomainError("assembly_e13: M and D must be at least 1");
  if (y < 3) throw DomainError("assembly_e13: y must be at least 3");
  const u64 t = exponent_count(m, zero_in_N);
  const u128 work = static_cast<u128>(t) * t * t * t * dmax;
  if (work > work_budget) throw BudgetError("assembly_e13: M^4 * D exceeds the work budget");

  const auto ds = smooth_odd_squarefree(dmax, y, work_budget);
  const unsigned first = zero_in_N ? 0 : 1;
  const auto last = static_cast<unsigned>(m);

  mpz_class common(1);
  for (u64 p : primes_below(std::min(y, dmax)))
    if (p != 2) common *= to_mpz(p);
  std::vector<mpz_class> cofactor(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i)
    mpz_divexact_ui(cofactor[i].get_mpz_t(), common.get_mpz_t(), ds[i]);

  AssemblyReport report{m,
                        dmax,
                        y,
                        zero_in_N,
                        ds.size(),
                        {},
                        {},
                        {},
                        {},
                        Interval(precision_bits),
                        Interval(precision_bits),
                        Interval(precision_bits),
                        0};

  // d first: (1/d) * (sum of k2 counts over (m1, m2, k1) minus the h = 0 quadruples).
  const u64 h_zero = 2 * t * t - t;
  const mpz_class triples = to_mpz(t) * to_mpz(t) * to_mpz(t);
  mpz_class small_sum(0), large_sum(0);
  const Interval window = [&] {
    Interval w = Interval::cbrt_square(m, precision_bits);
    w *= mpz_class(4);
    w += Interval::exact(zero_in_N ? 2 : 1, precision_bits);
    return w;
  }();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const u64 d = ds[i];
    const u64 order = mult_order(2, d).order;
    u64 hits = 0;
    for (unsigned m1 = first; m1 <= last; ++m1)
      for (unsigned m2 = first; m2 <= last; ++m2)
        for (unsigned k1 = first; k1 <= last; ++k1)
          hits += count_k2_solutions(d, m1, m2, k1, m, zero_in_N);
    const u64 nonzero_hits = hits - h_zero;
    if (order <= m) {
      small_sum += to_mpz(nonzero_hits) * cofactor[i];
      report.s1_part += Interval::scaled_root_over(triples * to_mpz((m / order + 1) * 4), order, d,
                                                   precision_bits);
    } else {
      large_sum += to_mpz(nonzero_hits) * cofactor[i];
      Interval term = window;
      term *= triples;
      term /= d;
      report.s2_part += term;
      if (m < 2) ++report.window_hypothesis_failures;
    }
  }
  report.lhs_small_order = mpq_class(small_sum, common);
  report.lhs_small_order.canonicalize();
  report.lhs_large_order = mpq_class(large_sum, common);
  report.lhs_large_order.canonicalize();
  report.lhs = report.lhs_small_order + report.lhs_large_order;

  // Quadruple first: for every (m1, m2, k1, k2) with h != 0, add 1/d over d | h.
  std::vector<mpz_class> pow2(last + 1);
  for (unsigned e = 0; e <= last; ++e) mpz_ui_pow_ui(pow2[e].get_mpz_t(), 2, u64{e} * e);
  mpz_class exchanged(0), h;
  for (unsigned m1 = first; m1 <= last; ++m1)
    for (unsigned m2 = first; m2 <= last; ++m2)
      for (unsigned k1 = first; k1 <= last; ++k1)
        for (unsigned k2 = first; k2 <= last; ++k2) {
          h = pow2[m1] + pow2[m2] - pow2[k1] - pow2[k2];
          if (sgn(h) == 0) continue;
          for (std::size_t i = 0; i < ds.size(); ++i)
            if (mpz_divisible_ui_p(h.get_mpz_t(), ds[i])) exchanged += cofactor[i];
        }
  report.lhs_exchanged = mpq_class(exchanged, common);
  report.lhs_exchanged.canonicalize();

  const Interval bound = report.s1_part + report.s2_part;
  if (bound.upper() > 0)
    report.ratio = Interval::from_rational(report.lhs, precision_bits) / bound;
  return report;
}

}  // namespace romanoff
