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

#ifndef MVHE_IO_H_
#define MVHE_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mvhe/scheme.h"

namespace mvhe {

// JSON artifacts. Every writer emits sorted keys and decimal integers in
// [0, q), so equal objects serialize to equal bytes. Every reader throws
// FormatError whose field() names the offending key (dotted path).

inline constexpr int kFormatVersion = 1;

struct ParamFile {
  SchemeParams params;
  std::optional<std::uint64_t> seed;
};

std::string SerializeParams(const SchemeParams& params,
                            std::optional<std::uint64_t> seed = std::nullopt);
// Parses and structurally decodes; does not run ValidateParams.
ParamFile ParseParams(std::string_view text);

// FNV-1a 64 of the canonical compact parameter encoding (seed excluded), as
// 16 lowercase hex digits.
std::string ParamsHash(const SchemeParams& params);

std::string SerializeKey(const SecretKey& key);
// Rebuilds the key through SecretKey::Assemble and checks the stored derived
// values (sigma_s, bases) against the recomputed ones.
SecretKey ParseKey(std::string_view text);

struct CiphertextFile {
  std::string params_hash;
  Ciphertext ct;
};

// The file also records q so that ciphertexts can be added without a key.
std::string SerializeCiphertext(const Ciphertext& ct,
                                const std::string& params_hash);
CiphertextFile ParseCiphertext(std::string_view text);
// Throws FormatError unless the ciphertext matches the key's params_hash,
// modulus and length.
void CheckCiphertextForKey(const CiphertextFile& file, const SecretKey& key);

struct EvalKeyFile {
  std::string params_hash;
  EvalKey key;
};

std::string SerializeEvalKey(const EvalKey& ek, const std::string& params_hash);
EvalKeyFile ParseEvalKey(std::string_view text);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace mvhe

#endif  // MVHE_IO_H_
