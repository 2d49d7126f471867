#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace qnash {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Spreads (master seed, stream index) into well-separated engine seeds so
// every cell or run owns an independent stream regardless of scheduling.
inline std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t s = master_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1);
  return splitmix64(s);
}

// Deterministic random stream. Draw helpers avoid std::uniform_*_distribution
// on purpose: mt19937_64 raw output is pinned by the standard, the
// distributions are not, and reruns must be bit-identical.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double next_unit() { return double(engine_() >> 11) * 0x1.0p-53; }

  // uniform integer in [lo, hi], inclusive; rejection keeps it unbiased
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = std::uint64_t(hi - lo) + 1;
    std::uint64_t x = 0;
    std::uint64_t r = 0;
    do {
      x = engine_();
      r = x % span;
    } while (x - r > std::uint64_t(0) - span);
    return lo + std::int64_t(r);
  }

 private:
  std::mt19937_64 engine_;
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  return RngStream(mix_seed(master_seed, stream_index));
}

}  // namespace qnash
