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

#include "mvhe/io.h"

#include <functional>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mvhe/errors.h"
#include "mvhe/scheme.h"

namespace {

using ::mvhe::RandomStream;
using ::mvhe::SchemeMode;
using ::mvhe::SecretKey;
using json = nlohmann::json;

SecretKey ToyKey(SchemeMode mode, std::uint64_t seed) {
  RandomStream stream(seed);
  return mvhe::KeyGen(mvhe::ToyParams(mode), stream);
}

std::string Mutate(const std::string& text, const std::function<void(json&)>& edit) {
  json j = json::parse(text);
  edit(j);
  return j.dump(2);
}

// Parses `text` with `parse` and returns the field named by the FormatError.
template <typename Parser>
std::string FailingField(Parser parse, const std::string& text) {
  try {
    parse(text);
  } catch (const mvhe::FormatError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ParamsIoTest, RoundTripIsByteIdentical) {
  for (SchemeMode mode : {SchemeMode::kAdditiveOnly, SchemeMode::kMultDepth1}) {
    mvhe::SchemeParams params = mvhe::ToyParams(mode);
    const std::string text = mvhe::SerializeParams(params, 42);
    mvhe::ParamFile file = mvhe::ParseParams(text);
    EXPECT_EQ(file.seed, 42u);
    EXPECT_EQ(file.params.n, params.n);
    EXPECT_EQ(file.params.alpha, params.alpha);
    EXPECT_EQ(file.params.mode, mode);
    EXPECT_EQ(mvhe::SerializeParams(file.params, file.seed), text);
    EXPECT_EQ(mvhe::ParamsHash(file.params), mvhe::ParamsHash(params));
  }
}

TEST(ParamsIoTest, HashIgnoresSeedButNotParameters) {
  mvhe::SchemeParams params = mvhe::ToyParams(SchemeMode::kAdditiveOnly);
  const std::string hash = mvhe::ParamsHash(params);
  EXPECT_EQ(hash.size(), 16u);
  EXPECT_EQ(hash.find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(mvhe::ParamsHash(mvhe::ParseParams(mvhe::SerializeParams(params, 7)).params), hash);
  mvhe::SchemeParams other = params;
  other.n = 4;
  EXPECT_NE(mvhe::ParamsHash(other), hash);
  EXPECT_NE(mvhe::ParamsHash(mvhe::ToyParams(SchemeMode::kAdditiveOnly, "0.0009")), hash);
}

TEST(ParamsIoTest, CorruptFieldsAreNamed) {
  const std::string text = mvhe::SerializeParams(mvhe::ToyParams(SchemeMode::kAdditiveOnly));
  auto parse = [](const std::string& t) { return mvhe::ParseParams(t); };
  EXPECT_EQ(FailingField(parse, "{not json"), "json");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j.erase("q"); })), "q");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["q"] = 10005; })), "q");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["mode"] = "fhe"; })), "mode");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["alpha"] = "1e-3"; })), "alpha");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["n"] = -1; })), "n");
  EXPECT_EQ(FailingField(parse,
                         Mutate(text, [](json& j) { j["ideal"][0][1]["coeff"] = 10007; })),
            "ideal[0][1].coeff");
  EXPECT_EQ(FailingField(parse,
                         Mutate(text, [](json& j) { j["ideal"][1][0]["exps"] = {1}; })),
            "ideal[1][0].exps");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["literal_mult_noise"] = 1; })),
            "literal_mult_noise");
}

TEST(KeyIoTest, RoundTripIsByteIdentical) {
  for (SchemeMode mode : {SchemeMode::kAdditiveOnly, SchemeMode::kMultDepth1}) {
    SecretKey key = ToyKey(mode, 3);
    const std::string text = mvhe::SerializeKey(key);
    SecretKey parsed = mvhe::ParseKey(text);
    EXPECT_EQ(parsed.s(), key.s());
    EXPECT_EQ(parsed.points(), key.points());
    EXPECT_EQ(parsed.p(), key.p());
    EXPECT_EQ(mvhe::SerializeKey(parsed), text);
    json j = json::parse(text);
    EXPECT_EQ(j["monomial_order"], "grlex");
    EXPECT_EQ(j.contains("B_2r"), mode == SchemeMode::kMultDepth1);
  }
}

TEST(KeyIoTest, CorruptFieldsAreNamed) {
  const std::string text = mvhe::SerializeKey(ToyKey(SchemeMode::kMultDepth1, 4));
  auto parse = [](const std::string& t) { return mvhe::ParseKey(t); };
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) {
              j["s"][0] = (j["s"][0].get<std::uint64_t>() + 1) % 10007;
            })),
            "s");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["s"][0] = 10007; })), "s[0]");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["p"] = 10006; })), "p");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["params_hash"] = "0"; })),
            "params_hash");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["params"]["n"] = 14; })),
            "params_hash");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["monomial_order"] = "lex"; })),
            "monomial_order");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["points"][1] = j["points"][0]; })),
            "points");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) {
              j["sigma_s"] = (j["sigma_s"].get<std::uint64_t>() + 1) % 10007;
            })),
            "sigma_s");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) {
              j["B_r"][0][0] = (j["B_r"][0][0].get<std::uint64_t>() + 1) % 10007;
            })),
            "B_r");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j.erase("B_2r"); })), "B_2r");
}

TEST(CiphertextIoTest, RoundTripAndKeyCheck) {
  SecretKey key = ToyKey(SchemeMode::kAdditiveOnly, 5);
  RandomStream stream(6);
  mvhe::Ciphertext ct = mvhe::HomAdd(mvhe::Encrypt(key, 1, stream), mvhe::Encrypt(key, 0, stream));
  const std::string hash = mvhe::ParamsHash(key.params());
  const std::string text = mvhe::SerializeCiphertext(ct, hash);
  mvhe::CiphertextFile file = mvhe::ParseCiphertext(text);
  EXPECT_EQ(file.ct, ct);
  EXPECT_EQ(file.params_hash, hash);
  EXPECT_EQ(mvhe::SerializeCiphertext(file.ct, file.params_hash), text);
  EXPECT_NO_THROW(mvhe::CheckCiphertextForKey(file, key));

  SecretKey other = ToyKey(SchemeMode::kMultDepth1, 5);
  try {
    mvhe::CheckCiphertextForKey(file, other);
    FAIL();
  } catch (const mvhe::FormatError& e) {
    EXPECT_EQ(e.field(), "params_hash");
  }
  file.ct.c = mvhe::FieldVector(key.context(), 3);
  try {
    mvhe::CheckCiphertextForKey(file, key);
    FAIL();
  } catch (const mvhe::FormatError& e) {
    EXPECT_EQ(e.field(), "c");
  }
}

TEST(CiphertextIoTest, CorruptFieldsAreNamed) {
  mvhe::FieldContext ctx(10007);
  const std::string text =
      mvhe::SerializeCiphertext(mvhe::Ciphertext(mvhe::FieldVector(ctx, {1, 2, 3})), "ab");
  auto parse = [](const std::string& t) { return mvhe::ParseCiphertext(t); };
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["c"][2] = 20000; })), "c[2]");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["c"] = json::array(); })), "c");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["q"] = 15; })), "q");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["adds"] = -1; })), "adds");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["mults"] = "one"; })), "mults");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j.erase("params_hash"); })),
            "params_hash");
}

TEST(EvalKeyIoTest, RoundTripAndCorruption) {
  SecretKey key = ToyKey(SchemeMode::kMultDepth1, 7);
  mvhe::EvalKey ek = mvhe::EvalKey::FromSecretKey(key);
  const std::string text = mvhe::SerializeEvalKey(ek, "abc");
  mvhe::EvalKeyFile file = mvhe::ParseEvalKey(text);
  EXPECT_EQ(file.key, ek);
  EXPECT_EQ(file.params_hash, "abc");
  EXPECT_EQ(mvhe::SerializeEvalKey(file.key, file.params_hash), text);
  auto parse = [](const std::string& t) { return mvhe::ParseEvalKey(t); };
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["p_inverse"] = 0; })), "p_inverse");
  EXPECT_EQ(FailingField(parse, Mutate(text, [](json& j) { j["n"] = 0; })), "n");
}

TEST(FileIoTest, MissingFileNamesThePath) {
  EXPECT_EQ(FailingField([](const std::string& p) { return mvhe::ReadTextFile(p); },
                         "/nonexistent/mvhe.json"),
            "/nonexistent/mvhe.json");
}

}  // namespace
