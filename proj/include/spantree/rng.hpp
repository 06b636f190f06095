#pragma once

// Seeded, splittable random generator (xoshiro256** seeded via splitmix64).
// Independent trial streams are derived from a master seed and up to three
// stream indices, so parallel sweeps reproduce bit-identically regardless of
// scheduling. All distributions here are implemented directly on the raw
// 64-bit output; nothing depends on std::<random> distribution internals.

#include <cstdint>

#include "spantree/bitset.hpp"

namespace spantree {

inline std::uint64_t splitmix64_next(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64_next(x);
  }

  // Derived stream: fold the indices into the master seed.
  static Rng stream(std::uint64_t master, std::uint64_t a = 0,
                    std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t x = master;
    std::uint64_t h = splitmix64_next(x);
    x ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64_next(x);
    x ^= b + 0xbf58476d1ce4e5b9ULL;
    h ^= splitmix64_next(x);
    x ^= c + 0x94d049bb133111ebULL;
    h ^= splitmix64_next(x);
    return Rng(h);
  }

  std::uint64_t next() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, bound); unbiased via rejection. bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  // Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return (next() >> 11) < static_cast<std::uint64_t>(p * 0x1.0p53);
  }

  // Uniform element of a non-empty bitset.
  std::size_t pick(const DynBitset& s) {
    return s.nth_set(below(s.count()));
  }

  // k distinct values from [0, n), ascending order not guaranteed.
  std::vector<int> sample_distinct(int n, int k) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
      int j = i + below_int(n - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace spantree
