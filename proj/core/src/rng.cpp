#include "decosim/rng.hpp"

#include "decosim/error.hpp"

namespace decosim {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 (Steele, Lea, Flood); used only to expand seeds into state.
std::uint64_t splitmix64(std::uint64_t& x) {
  x += kGolden;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) noexcept {
  return (v << k) | (v >> (64 - k));
}

// High 64 bits of a 64x64 multiply, without relying on __int128.
std::uint64_t mul_hi(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t a_lo = a & 0xFFFFFFFFull;
  const std::uint64_t a_hi = a >> 32;
  const std::uint64_t b_lo = b & 0xFFFFFFFFull;
  const std::uint64_t b_hi = b >> 32;

  const std::uint64_t lo_lo = a_lo * b_lo;
  const std::uint64_t hi_lo = a_hi * b_lo + (lo_lo >> 32);
  const std::uint64_t lo_hi = a_lo * b_hi + (hi_lo & 0xFFFFFFFFull);
  return a_hi * b_hi + (hi_lo >> 32) + (lo_hi >> 32);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), stream_(stream_id) {
  std::uint64_t x = master_seed ^ (kGolden * (stream_id + 1));
  for (auto& word : state_) {
    word = splitmix64(x);
  }
  // xoshiro must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = kGolden;
  }
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256++ step.
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw SimError(ErrorCode::invalid_argument, "next_below: bound must be >= 1");
  }
  // Lemire multiply-shift; the rejection loop removes the modulo bias.
  std::uint64_t x = next_u64();
  std::uint64_t low = x * bound;
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      low = x * bound;
    }
  }
  return mul_hi(x, bound);
}

bool RngStream::bernoulli(double p) {
  return next_double() < p;
}

std::vector<std::uint32_t> RngStream::sample_without_replacement(std::uint32_t n,
                                                                 std::uint32_t k) {
  if (k > n) {
    throw SimError(ErrorCode::invalid_argument,
                   "sample_without_replacement: k must not exceed n");
  }
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  // Partial Fisher-Yates: the first k slots end up uniformly chosen.
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(next_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace decosim
