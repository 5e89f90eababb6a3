#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace l2boost {

// Seeded random stream. Streams for parallel work are derived from
// (master_seed, stream_index) with a splitmix64 mix, so replication r of a
// simulation draws the same numbers no matter which thread runs it.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(mix(seed)) {}

  static Rng for_stream(std::uint64_t master_seed, std::uint64_t stream) {
    return Rng(mix(master_seed) ^ mix(stream + 0x9e3779b97f4a7c15ULL));
  }

  double uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Marsaglia's polar method; a spare draw is cached so
  // the stream is identical across standard-library implementations.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  std::uint64_t next_u64() { return gen_(); }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace l2boost
