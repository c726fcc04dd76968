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

#include "mvhe/random.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "mvhe/errors.h"

namespace mvhe {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomStream::NextU64() {
  ++counter_;
  return Mix(seed_ + counter_ * kGolden);
}

std::uint64_t RandomStream::UniformBelow(std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("UniformBelow requires bound > 0");
  // Accept only below the largest multiple of bound that fits in 2^64.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t x = NextU64();
    if (x >= limit) return x % bound;
  }
}

double RandomStream::UniformUnit() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

RandomStream RandomStream::Derive(std::uint64_t stream_id) const {
  return RandomStream(Mix(seed_ ^ Mix(stream_id + kGolden)));
}

std::uint64_t EntropySeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

NoiseSpec::NoiseSpec(double alpha, std::uint64_t q, std::size_t support_len)
    : alpha_(alpha), q_(q), support_len_(support_len) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ArgumentError("noise parameter alpha must be finite and >= 0");
  }
  if (q < 2) throw ArgumentError("noise modulus must be >= 2");
}

FieldElement SampleUniformFq(RandomStream& stream, const FieldContext& ctx) {
  return FieldElement::FromCanonical(ctx, stream.UniformBelow(ctx.modulus()));
}

FieldVector SampleUniformVector(RandomStream& stream, const FieldContext& ctx,
                                std::size_t n) {
  FieldVector v(ctx, n);
  for (std::size_t i = 0; i < n; ++i) {
    v.SetCanonical(i, stream.UniformBelow(ctx.modulus()));
  }
  return v;
}

double SampleStandardNormal(RandomStream& stream) {
  // u1 in (0, 1] keeps the logarithm finite.
  double u1 = 1.0 - stream.UniformUnit();
  double u2 = stream.UniformUnit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t SampleDiscreteGaussianInteger(RandomStream& stream,
                                           const NoiseSpec& spec) {
  double x = SampleStandardNormal(stream) * spec.StdDev();
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

FieldElement SampleDiscreteGaussian(RandomStream& stream,
                                    const NoiseSpec& spec,
                                    const FieldContext& ctx) {
  return FieldElement(ctx, SampleDiscreteGaussianInteger(stream, spec));
}

FieldVector SampleNoiseVector(RandomStream& stream, const NoiseSpec& spec,
                              const FieldContext& ctx, std::size_t n) {
  if (spec.support_len() > n) {
    throw ArgumentError("noise support " + std::to_string(spec.support_len()) +
                        " exceeds vector length " + std::to_string(n));
  }
  FieldVector e(ctx, n);
  for (std::size_t i = n - spec.support_len(); i < n; ++i) {
    e.Set(i, SampleDiscreteGaussianInteger(stream, spec));
  }
  return e;
}

}  // namespace mvhe
