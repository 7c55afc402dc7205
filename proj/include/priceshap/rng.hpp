/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_RNG_HPP_
#define PRICESHAP_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

namespace priceshap {

// SplitMix64 (Steele, Lea, Flood 2014). Used to expand one 64-bit seed into
// substream seeds and to initialize Xoshiro256StarStar state.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

// xoshiro256** (Blackman, Vigna 2018), seeded via SplitMix64. All shuffling,
// sampling and synthetic noise in the project flows through this generator so
// results are reproducible bit for bit across platforms.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound). Modulo bias is irrelevant here; the fixed
  // reduction rule is what keeps shuffles reproducible.
  uint64_t uniform_int(uint64_t bound) { return next() % bound; }

  // Box-Muller from two fixed uniform draws; std::normal_distribution is not
  // pinned across standard libraries.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4];
};

// In-place Fisher-Yates driven by the generator above.
template <typename T>
void shuffle(std::vector<T>* items, Xoshiro256StarStar* rng) {
  const size_t n = items->size();
  for (size_t i = 0; i + 1 < n; ++i) {
    const size_t j = i + static_cast<size_t>(rng->uniform_int(n - i));
    std::swap((*items)[i], (*items)[j]);
  }
}

// First k entries of a Fisher-Yates pass: a uniform k-subset in shuffled order.
template <typename T>
std::vector<T> sample_without_replacement(const std::vector<T>& items, size_t k,
                                          Xoshiro256StarStar* rng) {
  std::vector<T> pool = items;
  const size_t n = pool.size();
  if (k > n) k = n;
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng->uniform_int(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace priceshap

#endif  // PRICESHAP_RNG_HPP_
