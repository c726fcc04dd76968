/*
 * Copyright 2026 The mvhe Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MVHE_RANDOM_H_
#define MVHE_RANDOM_H_

#include <cstddef>
#include <cstdint>

#include "mvhe/field.h"

namespace mvhe {

// A counter-based SplitMix64 stream. Output i is the SplitMix64 finalizer
// applied to seed + (i + 1) * 0x9e3779b97f4a7c15, so (seed, counter) fixes
// every future value on every platform.
//
// A stream is single-owner. Independent sub-streams for parallel or nested
// work come from Derive().
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), counter_(0) {}
  RandomStream(std::uint64_t seed, std::uint64_t counter)
      : seed_(seed), counter_(counter) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t NextU64();
  // Uniform in [0, bound) by rejection. bound > 0.
  std::uint64_t UniformBelow(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double UniformUnit();
  int Bit() { return static_cast<int>(NextU64() >> 63); }

  // A fresh stream keyed by (seed, stream_id). Does not advance this stream.
  RandomStream Derive(std::uint64_t stream_id) const;

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

// Draws a seed from the operating system.
std::uint64_t EntropySeed();

// The rounded Gaussian on Z_q: draw x with standard deviation alpha, output
// round(x * q) mod q. support_len counts the trailing coordinates of a noise
// vector that carry noise; the leading coordinates are exactly zero.
//
// alpha == 0 is accepted and yields the zero distribution.
class NoiseSpec {
 public:
  NoiseSpec(double alpha, std::uint64_t q, std::size_t support_len);

  double alpha() const { return alpha_; }
  std::uint64_t q() const { return q_; }
  std::size_t support_len() const { return support_len_; }
  double StdDev() const { return alpha_ * static_cast<double>(q_); }

  NoiseSpec WithSupport(std::size_t support_len) const {
    return NoiseSpec(alpha_, q_, support_len);
  }

 private:
  double alpha_;
  std::uint64_t q_;
  std::size_t support_len_;
};

FieldElement SampleUniformFq(RandomStream& stream, const FieldContext& ctx);
FieldVector SampleUniformVector(RandomStream& stream, const FieldContext& ctx,
                                std::size_t n);

// Standard normal via Box-Muller (cosine branch; two uniforms per draw).
double SampleStandardNormal(RandomStream& stream);

// Balanced integer draw round(alpha * q * N(0,1)); ties round toward +inf.
std::int64_t SampleDiscreteGaussianInteger(RandomStream& stream,
                                           const NoiseSpec& spec);
FieldElement SampleDiscreteGaussian(RandomStream& stream,
                                    const NoiseSpec& spec,
                                    const FieldContext& ctx);

// Length-n vector (0, ..., 0, e) with spec.support_len() noisy trailing
// entries. Throws ArgumentError if support_len > n.
FieldVector SampleNoiseVector(RandomStream& stream, const NoiseSpec& spec,
                              const FieldContext& ctx, std::size_t n);

}  // namespace mvhe

#endif  // MVHE_RANDOM_H_
