// Copyright 2026 The privdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDIFF_RNG_HPP_
#define PRIVDIFF_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace privdiff {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// A seeded random stream addressed by (seed, stream_id). The same pair and
// draw sequence reproduces the same bits: the mt19937_64 engine and every
// variate transform below are fully specified, no std::*_distribution is
// involved. Distinct stream_ids give statistically independent streams.
//
// Single-owner: one stream must not be shared across threads. Parallel work
// takes child streams (see child()).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    const std::uint64_t s0 = detail::splitmix64(seed);
    const std::uint64_t s1 = detail::splitmix64(seed ^ ~stream_id);
    const std::uint64_t s2 = detail::splitmix64(stream_id);
    std::seed_seq seq{static_cast<std::uint32_t>(s0), static_cast<std::uint32_t>(s0 >> 32),
                      static_cast<std::uint32_t>(s1), static_cast<std::uint32_t>(s1 >> 32),
                      static_cast<std::uint32_t>(s2), static_cast<std::uint32_t>(s2 >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // A stream derived from this one's identity. child(a) == child(a) as long
  // as the salts differ between call sites; the parent's draw position is not
  // consumed, so children can be handed out before or after local draws.
  RngStream child(std::uint64_t salt) const {
    return RngStream(seed_, detail::splitmix64(stream_id_ ^
                                               detail::splitmix64(salt + 1)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1]: 53-bit mantissa, never exactly zero.
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) without modulo bias (rejection sampling).
  std::int64_t uniform_int(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = un * ((~std::uint64_t{0}) / un);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

// One Laplace(0, scale) draw by inverse CDF: |X| ~ Exp(1/scale) from a
// uniform, sign from a separate word. scale is the b in exp(-|x|/b)/2b.
inline double sample_laplace(double scale, RngStream& rng) {
  const double magnitude = -scale * std::log(rng.uniform01());
  return (rng.next_u64() & 1u) ? magnitude : -magnitude;
}

inline std::vector<double> sample_laplace_vec(std::int64_t n, double scale,
                                              RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_laplace_vec: n must be >= 1");
  if (!(scale > 0)) {
    throw std::invalid_argument("sample_laplace_vec: scale must be positive");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = sample_laplace(scale, rng);
  return out;
}

// I.i.d. N(0, sigma^2) draws via Box-Muller (explicit transform, portable).
inline std::vector<double> sample_gaussian_vec(std::int64_t n, double sigma,
                                               RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gaussian_vec: n must be >= 1");
  if (!(sigma > 0)) {
    throw std::invalid_argument("sample_gaussian_vec: sigma must be positive");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (std::int64_t i = 0; i < n; i += 2) {
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1)) * sigma;
    out[static_cast<std::size_t>(i)] = r * std::cos(kTwoPi * u2);
    if (i + 1 < n) out[static_cast<std::size_t>(i + 1)] = r * std::sin(kTwoPi * u2);
  }
  return out;
}

}  // namespace privdiff

#endif  // PRIVDIFF_RNG_HPP_
