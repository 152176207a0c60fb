#include "romanoff/quadroots.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gmpxx.h>

#include "romanoff/errors.hpp"

namespace romanoff {

namespace {

// p^e, or nullopt when it does not fit in 63 bits.
std::optional<u64> checked_power(u64 p, unsigned e) {
  u128 q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxInput) return std::nullopt;
  }
  return static_cast<u64>(q);
}

u64 small_power(u64 p, unsigned e) {
  u64 q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  return q;
}

struct ScaledDecomposition {
  unsigned ell;
  int symbol;  // (delta0 / p)
};

// Decomposition of delta = 4a for 0 < a, without forming 4a (which may not
// fit). Mirrors decompose_discriminant on the same input.
ScaledDecomposition decompose_four_a(u64 a, u64 p) {
  unsigned v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  if (p == 2) {
    if (v % 2 == 1) return {(v - 1) / 2, 0};  // delta0 = 8u
    if (a % 4 == 1) return {(v + 2) / 2, a % 8 == 1 ? 1 : -1};  // delta0 = u
    return {v / 2, 0};  // delta0 = 4u
  }
  const unsigned ell = v / 2;
  if (v % 2 == 1) return {ell, 0};
  return {ell, jacobi(static_cast<i64>(a % p), p)};
}

// Prime-power root count for p known prime, q = p^e, 0 <= a < q.
u64 prime_power_count(u64 a, u64 p, unsigned e) {
  if (e == 0) return 1;
  if (a == 0) return small_power(p, e / 2);  // delta = 0
  const auto [ell, symbol] = decompose_four_a(a, p);
  if (e > 2 * ell) {
    switch (symbol) {
      case 1:
        return 2 * small_power(p, ell);
      case -1:
        return 0;
      default:
        return e == 2 * ell + 1 ? small_power(p, ell) : 0;
    }
  }
  // e <= 2 ell, e = 2k + r.
  return small_power(p, e / 2);
}

// Hensel/Newton lift of a root w of w^2 = b (mod p) to modulus p^E, p odd.
u64 lift_odd(u64 w, u64 b, u64 p, unsigned target) {
  unsigned have = 1;
  while (have < target) {
    const unsigned next = std::min(2 * have, target);
    const u64 q = small_power(p, next);
    const u64 w2 = mul_mod(w, w, q);
    const u64 fw = (w2 + q - b % q) % q;
    const u64 inv = *inverse_mod(mul_mod(2, w, q), q);
    w = (w + q - mul_mod(fw, inv, q)) % q;
    have = next;
  }
  return w;
}

// Roots of w^2 = b (mod p^E) for a unit b.
std::vector<u64> unit_roots(u64 b, u64 p, unsigned big_e) {
  const u64 q = small_power(p, big_e);
  if (p != 2) {
    auto s = sqrt_mod_prime(b % p, p);
    if (!s) return {};
    const u64 w = lift_odd(*s, b, p, big_e);
    std::vector<u64> roots{w, (q - w) % q};
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  if (big_e == 1) return {1};
  if (big_e == 2) return b % 4 == 1 ? std::vector<u64>{1, 3} : std::vector<u64>{};
  if (b % 8 != 1) return {};
  u64 w = 1;
  for (unsigned k = 3; k < big_e; ++k) {
    const u64 next = u64{1} << (k + 1);
    if (mul_mod(w, w, next) != b % next) w += u64{1} << (k - 1);
  }
  const u64 half = u64{1} << (big_e - 1);
  std::vector<u64> roots{w % q, (q - w) % q, (w + half) % q, (2 * q - w - half) % q};
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<u64> prime_power_roots(u64 a, u64 p, unsigned e) {
  const u64 q = small_power(p, e);
  std::vector<u64> roots;
  if (a == 0) {
    const u64 step = small_power(p, (e + 1) / 2);
    for (u64 z = 0; z < q; z += step) roots.push_back(z);
    return roots;
  }
  unsigned v = 0;
  u64 b = a;
  while (b % p == 0) {
    b /= p;
    ++v;
  }
  if (v % 2 == 1) return roots;
  const unsigned t = v / 2;
  const unsigned big_e = e - 2 * t;
  const u64 pt = small_power(p, t);
  const u64 stride = small_power(p, e - t);
  for (u64 w : unit_roots(b, p, big_e)) {
    for (u64 k = 0; k < pt; ++k) roots.push_back(pt * w + k * stride);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<u64> crt_combine(const std::vector<u64>& left, u64 m1,
                             const std::vector<u64>& right, u64 m2) {
  const u64 inv = *inverse_mod(m1 % m2, m2);
  std::vector<u64> out;
  out.reserve(left.size() * right.size());
  for (u64 r1 : left) {
    for (u64 r2 : right) {
      const u64 diff = (r2 + m2 - r1 % m2) % m2;
      const u64 t = mul_mod(diff, inv, m2);
      out.push_back(r1 + m1 * t);
    }
  }
  return out;
}

u64 brute_window_count(u64 a, u64 m, u64 y) {
  u64 count = 0;
  for (u64 z = 1; z <= y; ++z)
    if (mul_mod(z, z, m) == a) ++count;
  return count;
}

}  // namespace

CongruenceSpec::CongruenceSpec(i64 a, u64 m, std::optional<u64> y)
    : a_(0), m_(m), y_(y) {
  if (m == 0) throw DomainError("CongruenceSpec: modulus must be positive");
  a_ = reduce_mod(a, m);
  if (y && (*y < 2 || *y > m))
    throw DomainError("CongruenceSpec: window bound y must satisfy 2 <= y <= m");
}

DiscriminantDecomposition decompose_discriminant(i64 delta, u64 p) {
  if (delta == 0) throw DomainError("decompose_discriminant: delta must be nonzero");
  if (!is_prime(p)) throw DomainError("decompose_discriminant: p must be prime");
  unsigned v = 0;
  i64 rest = delta;
  while (rest % static_cast<i64>(p) == 0) {
    rest /= static_cast<i64>(p);
    ++v;
  }
  auto ok = [](i64 d0) {
    const u64 r = reduce_mod(d0, 4);
    return r == 0 || r == 1;
  };
  for (int ell = static_cast<int>(v / 2); ell >= 0; --ell) {
    i64 d0 = delta;
    for (int i = 0; i < 2 * ell; ++i) d0 /= static_cast<i64>(p);
    if (ok(d0)) return {delta, p, static_cast<unsigned>(ell), d0};
  }
  throw DomainError("decompose_discriminant: delta is not 0 or 1 mod 4 at any scale");
}

u64 count_roots_prime_power(i64 a, u64 p, unsigned e) {
  if (!is_prime(p)) throw DomainError("count_roots_prime_power: p must be prime");
  const auto q = checked_power(p, e);
  if (!q) throw OverflowError("count_roots_prime_power: p^e exceeds 2^63");
  return prime_power_count(reduce_mod(a, *q), p, e);
}

u64 count_roots(i64 a, const Factorization& m) {
  u64 total = 1;
  for (const auto& f : m.factors()) {
    const u64 q = small_power(f.prime, f.exponent);
    total *= prime_power_count(reduce_mod(a, q), f.prime, f.exponent);
    if (total == 0) break;
  }
  return total;
}

u64 count_roots(i64 a, u64 m) {
  if (m == 0) throw DomainError("count_roots: modulus must be positive");
  return count_roots(a, factorize(m));
}

std::vector<u64> enumerate_roots(i64 a, u64 m, u64 max_roots) {
  if (m == 0) throw DomainError("enumerate_roots: modulus must be positive");
  const auto fact = factorize(m);
  if (count_roots(a, fact) > max_roots)
    throw BudgetError("enumerate_roots: root count exceeds the enumeration limit");
  std::vector<u64> roots{0};
  u64 modulus = 1;
  for (const auto& f : fact.factors()) {
    const u64 q = small_power(f.prime, f.exponent);
    auto local = prime_power_roots(reduce_mod(a, q), f.prime, f.exponent);
    if (local.empty()) return {};
    roots = crt_combine(roots, modulus, local, q);
    modulus *= q;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

u64 count_roots_up_to(i64 a, u64 m, u64 y) {
  const CongruenceSpec spec(a, m, y);
  const u64 ar = spec.residue();
  const u64 total = count_roots(a, m);
  if (total > y) return brute_window_count(ar, m, y);
  u64 count = 0;
  for (u64 r : enumerate_roots(a, m)) {
    if (r == 0) {
      if (y == m) ++count;  // z = m represents the class of 0
    } else if (r <= y) {
      ++count;
    }
  }
  return count;
}

std::optional<u64> sqrt_mod_prime(u64 a, u64 p) {
  if (p == 2) return a % 2;
  a %= p;
  if (a == 0) return 0;
  if (jacobi(static_cast<i64>(a), p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);

  unsigned s = 0;
  u64 q = p - 1;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (jacobi(static_cast<i64>(z), p) != -1) ++z;

  u64 c = pow_mod(z, q, p);
  u64 r = pow_mod(a, (q + 1) / 2, p);
  u64 t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    u64 t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    u64 b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    r = mul_mod(r, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return r;
}

bool within_sqrt_bound(u64 count, u64 m) {
  return static_cast<u128>(count) * count <= static_cast<u128>(16) * m;
}

bool within_window_bound(u64 count, u64 y) {
  if (count <= 1) return true;
  const u64 excess = count - 1;
  if (y < (u64{1} << 32) && excess < (u64{1} << 40)) {
    const u128 lhs = static_cast<u128>(excess) * excess * excess;
    return lhs <= static_cast<u128>(64) * y * y;
  }
  mpz_class e(std::to_string(excess)), yy(std::to_string(y));
  return e * e * e <= 64 * yy * yy;
}

Prop1Report verify_prop1(u64 m_max) {
  Prop1Report report;
  report.m_max = m_max;
  report.max_ratio = 0.0;
  for (u64 m = 1; m <= m_max; ++m) {
    const auto fact = factorize(m);
    const double root_m = std::sqrt(static_cast<double>(m));
    for (u64 a = 0; a < m; ++a) {
      const u64 n = count_roots(static_cast<i64>(a), fact);
      ++report.checked;
      const double ratio = static_cast<double>(n) / root_m;
      if (ratio > report.max_ratio) {
        report.max_ratio = ratio;
        report.witness_a = a;
        report.witness_m = m;
      }
      if (!within_sqrt_bound(n, m) && !report.violation)
        report.violation = CongruenceSpec(static_cast<i64>(a), m);
    }
  }
  return report;
}

Prop2Report verify_prop2(std::span<const WindowTriple> grid) {
  Prop2Report report;
  for (const auto& t : grid) {
    const u64 n = count_roots_up_to(static_cast<i64>(t.a), t.m, t.y);
    ++report.checked;
    const double ratio = static_cast<double>(n) / std::cbrt(static_cast<double>(t.y) * t.y);
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.witness = t;
    }
    if (!within_window_bound(n, t.y) && !report.violation) report.violation = t;
  }
  return report;
}

std::vector<WindowTriple> random_window_grid(std::size_t size, u64 m_max, u64 seed) {
  if (m_max < 2) throw DomainError("random_window_grid: m_max must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<WindowTriple> grid;
  grid.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const u64 m = 2 + rng() % (m_max - 1);
    const u64 y = 2 + rng() % (m - 1);
    u64 a = rng() % m;
    if (i % 2 == 0) a = mul_mod(a, a, m);
    grid.push_back({a, m, y});
  }
  return grid;
}

namespace {

void note_sqrt_bound(OracleReport& report, const std::vector<u64>& hist, u64 m) {
  const auto top = std::max_element(hist.begin(), hist.end());
  const double ratio = static_cast<double>(*top) / std::sqrt(static_cast<double>(m));
  report.max_ratio = std::max(report.max_ratio, ratio);
  if (!report.sqrt_bound_violation && !within_sqrt_bound(*top, m))
    report.sqrt_bound_violation = CongruenceSpec(static_cast<i64>(top - hist.begin()), m);
}

}  // namespace

OracleReport verify_count_roots(u64 m_max) {
  OracleReport report;
  std::vector<u64> hist;
  for (u64 m = 1; m <= m_max; ++m) {
    hist.assign(m, 0);
    u64 sq = 0;  // z^2 mod m, updated as (z+1)^2 = z^2 + 2z + 1
    for (u64 z = 0; z < m; ++z) {
      ++hist[sq];
      sq = (sq + 2 * z + 1) % m;
    }
    const auto fact = factorize(m);
    ++report.moduli;
    for (u64 a = 0; a < m; ++a) {
      const u64 formula = count_roots(static_cast<i64>(a), fact);
      ++report.checked;
      if (formula != hist[a]) {
        report.mismatch = OracleMismatch{a, m, formula, hist[a]};
        return report;
      }
    }
    note_sqrt_bound(report, hist, m);
  }
  return report;
}

OracleReport verify_prime_power_counts(u64 limit) {
  OracleReport report;
  std::vector<u64> hist;
  for (u64 p = 2; p <= limit; ++p) {
    if (!is_prime(p)) continue;
    u64 q = p;
    for (unsigned e = 1; q <= limit; ++e, q *= p) {
      hist.assign(q, 0);
      u64 sq = 0;
      for (u64 z = 0; z < q; ++z) {
        ++hist[sq];
        sq += 2 * z + 1;
        while (sq >= q) sq -= q;
      }
      ++report.moduli;
      for (u64 a = 0; a < q; ++a) {
        const u64 formula = prime_power_count(a, p, e);
        ++report.checked;
        if (formula != hist[a]) {
          report.mismatch = OracleMismatch{a, q, formula, hist[a]};
          return report;
        }
      }
      note_sqrt_bound(report, hist, q);
      if (q > limit / p) break;
    }
  }
  return report;
}

}  // namespace romanoff
