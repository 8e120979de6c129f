// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace skipring {

// Uniform double in the open interval (0, 1); never returns 0 or 1, so
// inverse-transform samplers and logs stay finite.
inline double uniform01(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller with a one-deep spare cache. Consumes the
// engine in a fixed pattern, which keeps runs reproducible across platforms
// (std::normal_distribution does not guarantee that).
class GaussianSampler {
 public:
  double operator()(std::mt19937_64& gen) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(gen);
    double u2 = uniform01(gen);
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  void reset() { has_spare_ = false; }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Independent engines for the three stochastic subsystems so that, e.g.,
// changing the noise scale never perturbs the latency draws of the same
// seed. Each stream is seeded from the master seed plus a distinct tag.
struct RngStreams {
  std::mt19937_64 latency;
  std::mt19937_64 noise;
  std::mt19937_64 batch;
  std::mt19937_64 schedule;  // visit plans and dataset splits

  explicit RngStreams(std::uint64_t master_seed) {
    seed_stream(latency, master_seed, 0x1a7e9c1u);
    seed_stream(noise, master_seed, 0x2b8fad2u);
    seed_stream(batch, master_seed, 0x3c9abe3u);
    seed_stream(schedule, master_seed, 0x4daecf4u);
  }

 private:
  static void seed_stream(std::mt19937_64& gen, std::uint64_t master,
                          std::uint32_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(master & 0xffffffffu),
                      static_cast<std::uint32_t>(master >> 32), tag};
    gen.seed(seq);
  }
};

// FNV-1a over raw bytes; used to fingerprint token state in run records.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace skipring
