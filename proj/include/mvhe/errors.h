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

#ifndef MVHE_ERRORS_H_
#define MVHE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace mvhe {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument (dimension, range, sign) does not hold.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Two operands live in different prime fields.
class ContextMismatchError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

// A parameter set, key, or artifact violates one of its invariants.
// `field()` names the offending parameter or serialized key.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// KeyGen ran out of retries. The message names the condition that failed most.
class KeygenError : public Error {
 public:
  using Error::Error;
};

// No scale p satisfies the decryption-error bound inside the modulus.
class ParameterInfeasibleError : public KeygenError {
 public:
  using KeygenError::KeygenError;
};

class UnsupportedOperationError : public Error {
 public:
  using Error::Error;
};

// Multiplying a ciphertext that already absorbed a multiplication.
class DepthError : public Error {
 public:
  using Error::Error;
};

// A game oracle was called out of protocol (second challenge, bad messages).
class ProtocolViolationError : public Error {
 public:
  using Error::Error;
};

// A serialized artifact is malformed.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace mvhe

#endif  // MVHE_ERRORS_H_
