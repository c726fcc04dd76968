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

#ifndef MVHE_FIELD_H_
#define MVHE_FIELD_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mvhe {

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool IsPrime(std::uint64_t n);

// The prime field F_q. Elements are stored canonically in [0, q); the
// balanced representative in (-q/2, q/2] is a view used for magnitudes.
//
// q is capped below 2^31 so that every product of two residues fits in a
// 64-bit word without overflow.
class FieldContext {
 public:
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  // Throws ArgumentError unless q is a prime with 3 <= q <= kMaxModulus.
  explicit FieldContext(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }

  std::uint64_t Reduce(std::int64_t x) const;
  std::uint64_t ReduceUnsigned(std::uint64_t x) const { return x % q_; }

  std::uint64_t Add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t Sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + q_ - b;
  }
  std::uint64_t Mul(std::uint64_t a, std::uint64_t b) const {
    return (a * b) % q_;
  }
  std::uint64_t Neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }

  // Throws NotInvertibleError for a == 0.
  std::uint64_t Inv(std::uint64_t a) const;

  std::int64_t Balanced(std::uint64_t a) const {
    return a > q_ / 2 ? static_cast<std::int64_t>(a) -
                            static_cast<std::int64_t>(q_)
                      : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const FieldContext&, const FieldContext&) = default;

 private:
  std::uint64_t q_;
};

// Raises ContextMismatchError unless both contexts share a modulus.
void CheckSameContext(const FieldContext& a, const FieldContext& b);

class FieldElement {
 public:
  FieldElement(const FieldContext& ctx, std::int64_t value)
      : ctx_(ctx), value_(ctx.Reduce(value)) {}

  static FieldElement FromCanonical(const FieldContext& ctx,
                                    std::uint64_t value);

  const FieldContext& context() const { return ctx_; }
  std::uint64_t value() const { return value_; }
  std::int64_t Balanced() const { return ctx_.Balanced(value_); }
  bool IsZero() const { return value_ == 0; }

  FieldElement Inverse() const;

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator-() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  FieldContext ctx_;
  std::uint64_t value_;
};

enum class FieldOp { kAdd, kSub, kMul };

// Throws ContextMismatchError if a and b live in different fields.
FieldElement FieldArith(const FieldElement& a, const FieldElement& b,
                        FieldOp op);

// Nearest-integer rounding of numerator / denominator with exact halves
// rounded toward +infinity. Integer-only. Throws ArgumentError for
// denominator <= 0.
std::int64_t RoundNearest(std::int64_t numerator, std::int64_t denominator);

// A dense vector over F_q.
class FieldVector {
 public:
  FieldVector(const FieldContext& ctx, std::size_t size)
      : ctx_(ctx), values_(size, 0) {}
  // Values are reduced mod q.
  FieldVector(const FieldContext& ctx, std::vector<std::uint64_t> values);
  FieldVector(const FieldContext& ctx,
              std::initializer_list<std::int64_t> values);

  static FieldVector FromSigned(const FieldContext& ctx,
                                std::span<const std::int64_t> values);
  static FieldVector Constant(const FieldContext& ctx, std::size_t size,
                              std::uint64_t value);

  const FieldContext& context() const { return ctx_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::uint64_t operator[](std::size_t i) const { return values_[i]; }
  FieldElement at(std::size_t i) const;
  void Set(std::size_t i, std::int64_t value) { values_[i] = ctx_.Reduce(value); }
  void SetCanonical(std::size_t i, std::uint64_t value);

  std::span<const std::uint64_t> values() const { return values_; }
  std::vector<std::int64_t> Balanced() const;

  FieldVector Slice(std::size_t begin, std::size_t length) const;
  bool IsZero() const;

  FieldVector operator+(const FieldVector& other) const;
  FieldVector operator-(const FieldVector& other) const;
  FieldVector operator-() const;
  FieldVector& operator+=(const FieldVector& other);
  FieldVector Scaled(std::uint64_t scalar) const;
  // Componentwise product.
  FieldVector Hadamard(const FieldVector& other) const;
  std::uint64_t Dot(const FieldVector& other) const;
  std::uint64_t Sum() const;

  friend bool operator==(const FieldVector&, const FieldVector&) = default;

 private:
  void CheckCompatible(const FieldVector& other) const;

  FieldContext ctx_;
  std::vector<std::uint64_t> values_;
};

// Concatenation (head, tail).
FieldVector Concat(const FieldVector& head, const FieldVector& tail);

}  // namespace mvhe

#endif  // MVHE_FIELD_H_
