// Copyright 2026 The edgemine Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Portable seeded randomness. std::mt19937_64 produces the same bit stream on
// every conforming library, but the std distributions do not, so the
// conversions to doubles and bounded integers live here.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace edgemine {

inline constexpr char const *kRngDescription = "mt19937_64/splitmix64";

inline constexpr std::uint64_t SplitMix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

/// Stable seed for one (grid value, instance) cell of a sweep.
inline std::uint64_t InstanceSeed(std::uint64_t base_seed, double grid_value,
                                  std::uint64_t instance_index)
{
  std::uint64_t h = SplitMix64(std::bit_cast<std::uint64_t>(grid_value));
  h               = SplitMix64(h ^ instance_index);
  return base_seed ^ h;
}

class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {}

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double Canonical()
  {
    return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi)
  {
    return lo + (hi - lo) * Canonical();
  }

  /// Uniform integer on [lo, hi] by rejection.
  std::uint64_t UniformInt(std::uint64_t lo, std::uint64_t hi)
  {
    std::uint64_t const span = hi - lo;
    if (span == UINT64_MAX)
    {
      return engine_();
    }
    std::uint64_t const range = span + 1;
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t       draw  = engine_();
    while (draw >= limit)
    {
      draw = engine_();
    }
    return lo + draw % range;
  }

  /// Box-Muller standard normal.
  double Normal(double mean, double stddev)
  {
    double u1 = Canonical();
    while (u1 <= 0.0)
    {
      u1 = Canonical();
    }
    double const u2 = Canonical();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace edgemine
