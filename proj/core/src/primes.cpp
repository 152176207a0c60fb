#include "romanoff/primes.hpp"

#include <bit>

#include "romanoff/errors.hpp"
#include "romanoff/parallel.hpp"

namespace romanoff {

namespace {

constexpr u64 kSegmentBits = u64{1} << 18;  // multiple of 64: segments own whole words

std::vector<u64> base_primes(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

u64 PrimeSet::count_up_to(u64 n) const {
  if (n > limit_) throw DomainError("PrimeSet::count_up_to: n exceeds the sieve limit");
  const u64 full = n >> 6;
  u64 total = 0;
  for (u64 w = 0; w < full; ++w) total += std::popcount(bits_[w]);
  const unsigned tail = static_cast<unsigned>(n & 63) + 1;
  const u64 mask = tail == 64 ? ~u64{0} : (u64{1} << tail) - 1;
  return total + std::popcount(bits_[full] & mask);
}

std::vector<u64> PrimeSet::to_vector() const {
  std::vector<u64> out;
  out.reserve(count_);
  for (u64 w = 0; w < bits_.size(); ++w) {
    for (u64 word = bits_[w]; word != 0; word &= word - 1)
      out.push_back(w * 64 + std::countr_zero(word));
  }
  return out;
}

std::vector<std::uint32_t> PrimeSet::to_vector32() const {
  if (limit_ > 0xffffffffULL) throw OverflowError("PrimeSet::to_vector32: limit exceeds 32 bits");
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for (u64 w = 0; w < bits_.size(); ++w) {
    for (u64 word = bits_[w]; word != 0; word &= word - 1)
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(word)));
  }
  return out;
}

PrimeSet sieve_primes(u64 x, u64 memory_budget) {
  if (x < 1) throw DomainError("sieve_primes: limit must be positive");
  if (x >= kMaxInput) throw DomainError("sieve_primes: limit too large");
  if (PrimeSet::bytes_for(x) > memory_budget)
    throw BudgetError("sieve_primes: prime table exceeds the memory budget");

  PrimeSet set;
  set.limit_ = x;
  set.bits_.assign(x / 64 + 1, 0);
  const auto small = base_primes(isqrt(x));
  const std::size_t segments = (x + kSegmentBits) / kSegmentBits;

  parallel_for(segments, [&](std::size_t s) {
    const u64 lo = s * kSegmentBits;
    const u64 hi = std::min(x + 1, lo + kSegmentBits);  // exclusive
    u64* words = set.bits_.data() + lo / 64;
    const u64 nwords = (hi - lo + 63) / 64;
    for (u64 w = 0; w < nwords; ++w) words[w] = ~u64{0};
    const u64 span = hi - lo;
    if (span % 64 != 0) words[nwords - 1] &= (u64{1} << (span % 64)) - 1;
    if (lo == 0) words[0] &= ~u64{3};  // 0 and 1
    for (u64 p : small) {
      if (p * p >= hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j < hi; j += p) {
        const u64 off = j - lo;
        words[off >> 6] &= ~(u64{1} << (off & 63));
      }
    }
  });

  u64 total = 0;
  for (u64 w : set.bits_) total += std::popcount(w);
  set.count_ = total;
  return set;
}

}  // namespace romanoff
