#pragma once

#include <cstdint>
#include <vector>

namespace decosim {

/// Deterministic, platform-independent random stream.
///
/// The generator is xoshiro256++ (Blackman & Vigna); the four state words
/// are derived from the (master seed, stream id) pair with SplitMix64, so
/// equal pairs always replay the same sequence and distinct stream ids give
/// independent sequences. All draws use fixed-width integer arithmetic only,
/// which makes sequences identical across platforms and compilers.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const noexcept { return master_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  /// Next raw 64-bit draw.
  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform integer in [0, bound); bound must be >= 1. Unbiased
  /// (multiply-shift with rejection).
  std::uint64_t next_below(std::uint64_t bound);

  /// True with probability p; p <= 0 never fires, p >= 1 always does.
  bool bernoulli(double p);

  /// k distinct values drawn uniformly from [0, n), in draw order. k <= n.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t master_;
  std::uint64_t stream_;
  std::uint64_t state_[4];
};

/// Stream derivation: a pure function of (master_seed, stream_id).
inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

}  // namespace decosim
