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

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mvhe/errors.h"

namespace mvhe {
namespace {

using nlohmann::json;

json Parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError("json", e.what());
  }
}

const json& Require(const json& obj, const std::string& key,
                    const std::string& path = "") {
  const std::string field = path.empty() ? key : path + "." + key;
  if (!obj.is_object()) throw FormatError(path.empty() ? "json" : path, "not an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(field, "missing");
  return *it;
}

std::uint64_t AsUnsigned(const json& v, const std::string& field) {
  if (!v.is_number_integer() ||
      (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw FormatError(field, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::int64_t AsInt(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw FormatError(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::string AsString(const json& v, const std::string& field) {
  if (!v.is_string()) throw FormatError(field, "expected a string");
  return v.get<std::string>();
}

std::uint64_t AsResidue(const json& v, std::uint64_t q, const std::string& field) {
  std::uint64_t x = AsUnsigned(v, field);
  if (x >= q) throw FormatError(field, "value " + std::to_string(x) + " not in [0, q)");
  return x;
}

json VectorJson(const FieldVector& v) {
  return json(std::vector<std::uint64_t>(v.values().begin(), v.values().end()));
}

json MatrixJson(const MatrixFq& m) {
  json rows = json::array();
  for (const FieldVector& row : m.RowVectors()) rows.push_back(VectorJson(row));
  return rows;
}

FieldVector VectorFrom(const json& v, const FieldContext& ctx,
                       std::optional<std::size_t> len, const std::string& field) {
  if (!v.is_array()) throw FormatError(field, "expected an array");
  if (len && v.size() != *len) {
    throw FormatError(field, "expected " + std::to_string(*len) +
                                 " entries, got " + std::to_string(v.size()));
  }
  std::vector<std::uint64_t> values;
  values.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    values.push_back(AsResidue(v[i], ctx.modulus(),
                               field + "[" + std::to_string(i) + "]"));
  }
  return FieldVector(ctx, std::move(values));
}

MatrixFq MatrixFrom(const json& v, const FieldContext& ctx, std::size_t cols,
                    const std::string& field) {
  if (!v.is_array()) throw FormatError(field, "expected an array of rows");
  std::vector<FieldVector> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    rows.push_back(VectorFrom(v[i], ctx, cols, field + "[" + std::to_string(i) + "]"));
  }
  return MatrixFq::FromRows(ctx, cols, rows);
}

json ParamsJson(const SchemeParams& params) {
  json ideal = json::array();
  for (const Polynomial& g : params.ideal.generators()) {
    json terms = json::array();
    for (const auto& [coeff, exps] : g.Terms()) {
      terms.push_back({{"coeff", coeff}, {"exps", exps}});
    }
    ideal.push_back(std::move(terms));
  }
  json j = {
      {"lambda", params.lambda},
      {"q", params.q},
      {"ell", params.ell},
      {"r", params.r},
      {"n", params.n},
      {"alpha", params.alpha.text()},
      {"epsilon", params.epsilon.text()},
      {"mode", ModeName(params.mode)},
      {"headroom", params.headroom},
      {"ideal", std::move(ideal)},
  };
  if (params.literal_mult_noise) j["literal_mult_noise"] = true;
  return j;
}

Decimal DecimalFrom(const json& v, const std::string& field) {
  try {
    return Decimal::Parse(AsString(v, field));
  } catch (const ArgumentError& e) {
    throw FormatError(field, e.what());
  }
}

SchemeParams ParamsFrom(const json& j, const std::string& path) {
  auto key = [&](const char* k) { return path.empty() ? std::string(k) : path + "." + k; };
  const std::uint64_t q = AsUnsigned(Require(j, "q", path), key("q"));
  std::optional<FieldContext> ctx;
  try {
    ctx.emplace(q);
  } catch (const ArgumentError& e) {
    throw FormatError(key("q"), e.what());
  }
  const std::int64_t ell = AsInt(Require(j, "ell", path), key("ell"));
  const std::int64_t r = AsInt(Require(j, "r", path), key("r"));
  if (ell < 1 || ell > 64) throw FormatError(key("ell"), "must lie in [1, 64]");
  if (r < 1 || r > 64) throw FormatError(key("r"), "must lie in [1, 64]");
  const std::int64_t headroom = AsInt(Require(j, "headroom", path), key("headroom"));
  if (headroom < 1 || headroom > 1 << 20) {
    throw FormatError(key("headroom"), "must lie in [1, 2^20]");
  }
  SchemeMode mode;
  try {
    mode = ParseMode(AsString(Require(j, "mode", path), key("mode")));
  } catch (const ArgumentError& e) {
    throw FormatError(key("mode"), e.what());
  }

  const json& ideal = Require(j, "ideal", path);
  if (!ideal.is_array() || ideal.empty()) {
    throw FormatError(key("ideal"), "expected a non-empty list of generators");
  }
  std::vector<Polynomial> generators;
  for (std::size_t gi = 0; gi < ideal.size(); ++gi) {
    const std::string gpath = key("ideal") + "[" + std::to_string(gi) + "]";
    const json& terms = ideal[gi];
    if (!terms.is_array() || terms.empty()) {
      throw FormatError(gpath, "expected a non-empty list of terms");
    }
    std::vector<std::pair<std::uint64_t, Exponent>> parsed;
    int degree = 0;
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
      const std::string tpath = gpath + "[" + std::to_string(ti) + "]";
      const std::uint64_t coeff =
          AsResidue(Require(terms[ti], "coeff", tpath), q, tpath + ".coeff");
      const json& exps = Require(terms[ti], "exps", tpath);
      if (!exps.is_array() || exps.size() != static_cast<std::size_t>(ell)) {
        throw FormatError(tpath + ".exps", "expected " + std::to_string(ell) + " exponents");
      }
      Exponent e;
      int total = 0;
      for (std::size_t v = 0; v < exps.size(); ++v) {
        const std::int64_t x = AsInt(exps[v], tpath + ".exps");
        if (x < 0 || x > 64) throw FormatError(tpath + ".exps", "exponent out of range");
        e.push_back(static_cast<int>(x));
        total += static_cast<int>(x);
      }
      degree = std::max(degree, total);
      parsed.emplace_back(coeff, std::move(e));
    }
    Polynomial g = Polynomial::FromTerms(
        MonomialIndex::Create(static_cast<int>(ell), degree), *ctx, parsed);
    if (g.IsZero()) throw FormatError(gpath, "generator is zero");
    generators.push_back(std::move(g));
  }

  SchemeParams params{
      .lambda = AsUnsigned(Require(j, "lambda", path), key("lambda")),
      .q = q,
      .ell = static_cast<int>(ell),
      .r = static_cast<int>(r),
      .n = AsUnsigned(Require(j, "n", path), key("n")),
      .alpha = DecimalFrom(Require(j, "alpha", path), key("alpha")),
      .epsilon = DecimalFrom(Require(j, "epsilon", path), key("epsilon")),
      .mode = mode,
      .headroom = static_cast<int>(headroom),
      .ideal = IdealSpec(std::move(generators)),
  };
  if (auto it = j.find("literal_mult_noise"); it != j.end()) {
    if (!it->is_boolean()) throw FormatError(key("literal_mult_noise"), "expected a boolean");
    params.literal_mult_noise = it->get<bool>();
  }
  return params;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

void CheckVersion(const json& j) {
  const std::int64_t v = AsInt(Require(j, "version"), "version");
  if (v != kFormatVersion) {
    throw FormatError("version", "unsupported version " + std::to_string(v));
  }
}

}  // namespace

std::string SerializeParams(const SchemeParams& params,
                            std::optional<std::uint64_t> seed) {
  json j = ParamsJson(params);
  if (seed) j["seed"] = *seed;
  return Dump(j);
}

ParamFile ParseParams(std::string_view text) {
  json j = Parse(text);
  ParamFile file{ParamsFrom(j, ""), std::nullopt};
  if (auto it = j.find("seed"); it != j.end()) file.seed = AsUnsigned(*it, "seed");
  return file;
}

std::string ParamsHash(const SchemeParams& params) {
  const std::string canonical = ParamsJson(params).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string SerializeKey(const SecretKey& key) {
  json points = json::array();
  for (const FieldVector& z : key.points()) points.push_back(VectorJson(z));
  json j = {
      {"version", kFormatVersion},
      {"params_hash", ParamsHash(key.params())},
      {"params", ParamsJson(key.params())},
      {"monomial_order", MonomialIndex::kOrderName},
      {"points", std::move(points)},
      {"s", VectorJson(key.s())},
      {"p", key.p()},
      {"sigma_s", key.context().Reduce(key.sigma_s())},
      {"B_r", MatrixJson(key.basis_r())},
  };
  if (key.mode() == SchemeMode::kMultDepth1) j["B_2r"] = MatrixJson(key.basis_2r());
  return Dump(j);
}

SecretKey ParseKey(std::string_view text) {
  json j = Parse(text);
  CheckVersion(j);
  SchemeParams params = ParamsFrom(Require(j, "params"), "params");
  const std::string hash = AsString(Require(j, "params_hash"), "params_hash");
  if (hash != ParamsHash(params)) {
    throw FormatError("params_hash", "does not match the embedded params");
  }
  if (AsString(Require(j, "monomial_order"), "monomial_order") !=
      MonomialIndex::kOrderName) {
    throw FormatError("monomial_order", "unsupported monomial order");
  }
  const FieldContext ctx(params.q);
  const json& pts = Require(j, "points");
  if (!pts.is_array()) throw FormatError("points", "expected an array");
  std::vector<FieldVector> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    points.push_back(VectorFrom(pts[i], ctx, static_cast<std::size_t>(params.ell),
                                "points[" + std::to_string(i) + "]"));
  }
  FieldVector s = VectorFrom(Require(j, "s"), ctx, params.n, "s");
  const std::uint64_t p = AsResidue(Require(j, "p"), params.q, "p");
  const std::uint64_t sigma = AsResidue(Require(j, "sigma_s"), params.q, "sigma_s");

  std::optional<SecretKey> key;
  try {
    key.emplace(SecretKey::Assemble(params, std::move(points), std::move(s), p));
  } catch (const FormatError&) {
    throw;
  } catch (const ValidationError& e) {
    throw FormatError(e.field(), e.what());
  }
  if (ctx.Reduce(key->sigma_s()) != sigma) {
    throw FormatError("sigma_s", "does not equal the sum of s");
  }
  const std::size_t cols_r = key->basis_r().cols();
  if (MatrixFrom(Require(j, "B_r"), ctx, cols_r, "B_r") != key->basis_r()) {
    throw FormatError("B_r", "does not match the basis computed from the ideal");
  }
  if (params.mode == SchemeMode::kMultDepth1) {
    const std::size_t cols_2r = key->basis_2r().cols();
    if (MatrixFrom(Require(j, "B_2r"), ctx, cols_2r, "B_2r") != key->basis_2r()) {
      throw FormatError("B_2r", "does not match the basis computed from the ideal");
    }
  }
  return std::move(*key);
}

std::string SerializeCiphertext(const Ciphertext& ct,
                                const std::string& params_hash) {
  json j = {
      {"version", kFormatVersion},
      {"params_hash", params_hash},
      {"q", ct.c.context().modulus()},
      {"c", VectorJson(ct.c)},
      {"adds", ct.adds},
      {"mults", ct.mults},
  };
  return Dump(j);
}

CiphertextFile ParseCiphertext(std::string_view text) {
  json j = Parse(text);
  CheckVersion(j);
  std::string hash = AsString(Require(j, "params_hash"), "params_hash");
  const std::uint64_t q = AsUnsigned(Require(j, "q"), "q");
  std::optional<FieldContext> ctx;
  try {
    ctx.emplace(q);
  } catch (const ArgumentError& e) {
    throw FormatError("q", e.what());
  }
  FieldVector c = VectorFrom(Require(j, "c"), *ctx, std::nullopt, "c");
  if (c.empty()) throw FormatError("c", "empty ciphertext");
  const std::int64_t adds = AsInt(Require(j, "adds"), "adds");
  const std::int64_t mults = AsInt(Require(j, "mults"), "mults");
  if (adds < 0 || adds > 1 << 30) throw FormatError("adds", "out of range");
  if (mults < 0 || mults > 1 << 30) throw FormatError("mults", "out of range");
  return CiphertextFile{std::move(hash),
                        Ciphertext(std::move(c), static_cast<int>(adds),
                                   static_cast<int>(mults))};
}

void CheckCiphertextForKey(const CiphertextFile& file, const SecretKey& key) {
  if (file.params_hash != ParamsHash(key.params())) {
    throw FormatError("params_hash", "ciphertext belongs to another parameter set");
  }
  if (file.ct.c.context().modulus() != key.params().q) {
    throw FormatError("q", "ciphertext modulus differs from the key");
  }
  if (file.ct.c.size() != key.n()) {
    throw FormatError("c", "ciphertext length differs from n");
  }
}

std::string SerializeEvalKey(const EvalKey& ek, const std::string& params_hash) {
  json j = {
      {"version", kFormatVersion},
      {"params_hash", params_hash},
      {"q", ek.context().modulus()},
      {"n", ek.n()},
      {"p_inverse", ek.p_inverse()},
  };
  return Dump(j);
}

EvalKeyFile ParseEvalKey(std::string_view text) {
  json j = Parse(text);
  CheckVersion(j);
  std::string hash = AsString(Require(j, "params_hash"), "params_hash");
  const std::uint64_t q = AsUnsigned(Require(j, "q"), "q");
  try {
    FieldContext check(q);
  } catch (const ArgumentError& e) {
    throw FormatError("q", e.what());
  }
  const std::uint64_t n = AsUnsigned(Require(j, "n"), "n");
  if (n < 1) throw FormatError("n", "must be >= 1");
  const std::uint64_t p_inverse = AsResidue(Require(j, "p_inverse"), q, "p_inverse");
  if (p_inverse == 0) throw FormatError("p_inverse", "must be a unit");
  return EvalKeyFile{std::move(hash), EvalKey(q, n, p_inverse)};
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path, "cannot open for reading");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(path, "cannot open for writing");
  out << contents;
  if (!out) throw FormatError(path, "write failed");
}

}  // namespace mvhe
