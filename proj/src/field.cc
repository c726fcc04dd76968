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

#include "mvhe/field.h"

#include <string>

#include "mvhe/errors.h"

namespace mvhe {
namespace {

using u128 = unsigned __int128;

std::uint64_t MulMod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t PowMod64(std::uint64_t base, std::uint64_t exp,
                       std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = MulMod64(result, base, m);
    base = MulMod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Floor division for a positive divisor.
__int128 FloorDiv(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

}  // namespace

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = PowMod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = MulMod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldContext::FieldContext(std::uint64_t q) : q_(q) {
  if (q < 3 || q > kMaxModulus) {
    throw ArgumentError("modulus " + std::to_string(q) +
                        " outside [3, 2^31)");
  }
  if (!IsPrime(q)) {
    throw ArgumentError("modulus " + std::to_string(q) + " is not prime");
  }
}

std::uint64_t FieldContext::Reduce(std::int64_t x) const {
  std::int64_t r = x % static_cast<std::int64_t>(q_);
  if (r < 0) r += static_cast<std::int64_t>(q_);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t FieldContext::Inv(std::uint64_t a) const {
  a %= q_;
  if (a == 0) throw NotInvertibleError("zero has no inverse mod q");
  // Extended Euclid on signed 64-bit values; q < 2^31 keeps them small.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(q_);
  std::int64_t new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    std::int64_t tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  return Reduce(t);
}

void CheckSameContext(const FieldContext& a, const FieldContext& b) {
  if (a != b) {
    throw ContextMismatchError("field moduli differ: " +
                               std::to_string(a.modulus()) + " vs " +
                               std::to_string(b.modulus()));
  }
}

FieldElement FieldElement::FromCanonical(const FieldContext& ctx,
                                         std::uint64_t value) {
  if (value >= ctx.modulus()) {
    throw ArgumentError("value " + std::to_string(value) +
                        " is not a canonical residue");
  }
  return FieldElement(ctx, static_cast<std::int64_t>(value));
}

FieldElement FieldElement::Inverse() const {
  return FromCanonical(ctx_, ctx_.Inv(value_));
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  return FieldArith(*this, other, FieldOp::kAdd);
}
FieldElement FieldElement::operator-(const FieldElement& other) const {
  return FieldArith(*this, other, FieldOp::kSub);
}
FieldElement FieldElement::operator*(const FieldElement& other) const {
  return FieldArith(*this, other, FieldOp::kMul);
}
FieldElement FieldElement::operator-() const {
  return FromCanonical(ctx_, ctx_.Neg(value_));
}

FieldElement FieldArith(const FieldElement& a, const FieldElement& b,
                        FieldOp op) {
  CheckSameContext(a.context(), b.context());
  const FieldContext& ctx = a.context();
  switch (op) {
    case FieldOp::kAdd:
      return FieldElement::FromCanonical(ctx, ctx.Add(a.value(), b.value()));
    case FieldOp::kSub:
      return FieldElement::FromCanonical(ctx, ctx.Sub(a.value(), b.value()));
    case FieldOp::kMul:
      return FieldElement::FromCanonical(ctx, ctx.Mul(a.value(), b.value()));
  }
  throw ArgumentError("unknown field operation");
}

std::int64_t RoundNearest(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0) {
    throw ArgumentError("RoundNearest requires a positive denominator");
  }
  // floor((2n + d) / 2d) == floor(n/d + 1/2).
  __int128 n = numerator;
  __int128 d = denominator;
  return static_cast<std::int64_t>(FloorDiv(2 * n + d, 2 * d));
}

FieldVector::FieldVector(const FieldContext& ctx,
                         std::vector<std::uint64_t> values)
    : ctx_(ctx), values_(std::move(values)) {
  for (auto& v : values_) v = ctx_.ReduceUnsigned(v);
}

FieldVector::FieldVector(const FieldContext& ctx,
                         std::initializer_list<std::int64_t> values)
    : ctx_(ctx) {
  values_.reserve(values.size());
  for (std::int64_t v : values) values_.push_back(ctx_.Reduce(v));
}

FieldVector FieldVector::FromSigned(const FieldContext& ctx,
                                    std::span<const std::int64_t> values) {
  FieldVector out(ctx, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.Set(i, values[i]);
  return out;
}

FieldVector FieldVector::Constant(const FieldContext& ctx, std::size_t size,
                                  std::uint64_t value) {
  return FieldVector(ctx, std::vector<std::uint64_t>(size, value));
}

FieldElement FieldVector::at(std::size_t i) const {
  if (i >= values_.size()) throw ArgumentError("FieldVector index out of range");
  return FieldElement::FromCanonical(ctx_, values_[i]);
}

void FieldVector::SetCanonical(std::size_t i, std::uint64_t value) {
  if (value >= ctx_.modulus()) {
    throw ArgumentError("value " + std::to_string(value) +
                        " is not a canonical residue");
  }
  values_[i] = value;
}

std::vector<std::int64_t> FieldVector::Balanced() const {
  std::vector<std::int64_t> out;
  out.reserve(values_.size());
  for (std::uint64_t v : values_) out.push_back(ctx_.Balanced(v));
  return out;
}

FieldVector FieldVector::Slice(std::size_t begin, std::size_t length) const {
  if (begin + length > values_.size()) {
    throw ArgumentError("FieldVector slice out of range");
  }
  return FieldVector(ctx_, std::vector<std::uint64_t>(
                               values_.begin() + begin,
                               values_.begin() + begin + length));
}

bool FieldVector::IsZero() const {
  for (std::uint64_t v : values_) {
    if (v != 0) return false;
  }
  return true;
}

void FieldVector::CheckCompatible(const FieldVector& other) const {
  CheckSameContext(ctx_, other.ctx_);
  if (values_.size() != other.values_.size()) {
    throw ArgumentError("vector lengths differ: " +
                        std::to_string(values_.size()) + " vs " +
                        std::to_string(other.values_.size()));
  }
}

FieldVector FieldVector::operator+(const FieldVector& other) const {
  FieldVector out = *this;
  out += other;
  return out;
}

FieldVector& FieldVector::operator+=(const FieldVector& other) {
  CheckCompatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] = ctx_.Add(values_[i], other.values_[i]);
  }
  return *this;
}

FieldVector FieldVector::operator-(const FieldVector& other) const {
  CheckCompatible(other);
  FieldVector out(ctx_, values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.values_[i] = ctx_.Sub(values_[i], other.values_[i]);
  }
  return out;
}

FieldVector FieldVector::operator-() const {
  FieldVector out(ctx_, values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.values_[i] = ctx_.Neg(values_[i]);
  }
  return out;
}

FieldVector FieldVector::Scaled(std::uint64_t scalar) const {
  scalar = ctx_.ReduceUnsigned(scalar);
  FieldVector out(ctx_, values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.values_[i] = ctx_.Mul(values_[i], scalar);
  }
  return out;
}

FieldVector FieldVector::Hadamard(const FieldVector& other) const {
  CheckCompatible(other);
  FieldVector out(ctx_, values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.values_[i] = ctx_.Mul(values_[i], other.values_[i]);
  }
  return out;
}

std::uint64_t FieldVector::Dot(const FieldVector& other) const {
  CheckCompatible(other);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc = ctx_.Add(acc, ctx_.Mul(values_[i], other.values_[i]));
  }
  return acc;
}

std::uint64_t FieldVector::Sum() const {
  std::uint64_t acc = 0;
  for (std::uint64_t v : values_) acc = ctx_.Add(acc, v);
  return acc;
}

FieldVector Concat(const FieldVector& head, const FieldVector& tail) {
  CheckSameContext(head.context(), tail.context());
  std::vector<std::uint64_t> values(head.values().begin(),
                                    head.values().end());
  values.insert(values.end(), tail.values().begin(), tail.values().end());
  return FieldVector(head.context(), std::move(values));
}

}  // namespace mvhe
