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

// Command-line front end: key generation, encryption, homomorphic evaluation,
// noise benchmarks and security games.

#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvhe/errors.h"
#include "mvhe/games.h"
#include "mvhe/io.h"
#include "mvhe/noise_bench.h"
#include "mvhe/scheme.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitKeygen = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag,
                          const std::optional<std::uint64_t>& fallback = {}) {
  if (flag) return *flag;
  if (fallback) return *fallback;
  const std::uint64_t seed = mvhe::EntropySeed();
  std::cerr << "seed\t" << seed << "\n";
  return seed;
}

std::string Fixed(double v, int digits = 6) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

mvhe::SecretKey LoadKey(const std::string& path) {
  return mvhe::ParseKey(mvhe::ReadTextFile(path));
}

mvhe::CiphertextFile LoadCiphertext(const std::string& path) {
  return mvhe::ParseCiphertext(mvhe::ReadTextFile(path));
}

// Prints a header and rows separated by tabs.
void PrintTable(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::cout << (i ? "\t" : "") << cells[i];
    }
    std::cout << "\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
}

struct KeygenArgs {
  std::string params;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string evalkey_out;
};

int RunKeygen(const KeygenArgs& a) {
  mvhe::ParamFile file = mvhe::ParseParams(mvhe::ReadTextFile(a.params));
  mvhe::RandomStream stream(ResolveSeed(a.seed, file.seed));
  mvhe::SecretKey key = mvhe::KeyGen(file.params, stream);
  mvhe::WriteTextFile(a.out, mvhe::SerializeKey(key));
  if (key.mode() == mvhe::SchemeMode::kMultDepth1) {
    const std::string path = a.evalkey_out.empty() ? a.out + ".evalkey" : a.evalkey_out;
    mvhe::WriteTextFile(path, mvhe::SerializeEvalKey(mvhe::EvalKey::FromSecretKey(key),
                                                     mvhe::ParamsHash(key.params())));
  }
  return kExitOk;
}

struct EncryptArgs {
  std::string key;
  int bit = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int RunEncrypt(const EncryptArgs& a) {
  mvhe::SecretKey key = LoadKey(a.key);
  mvhe::RandomStream stream(ResolveSeed(a.seed));
  mvhe::Ciphertext ct = mvhe::Encrypt(key, a.bit, stream);
  mvhe::WriteTextFile(a.out, mvhe::SerializeCiphertext(ct, mvhe::ParamsHash(key.params())));
  return kExitOk;
}

struct DecryptArgs {
  std::string key;
  std::string in;
};

int RunDecrypt(const DecryptArgs& a) {
  mvhe::SecretKey key = LoadKey(a.key);
  mvhe::CiphertextFile ct = LoadCiphertext(a.in);
  mvhe::CheckCiphertextForKey(ct, key);
  std::cout << mvhe::Decrypt(key, ct.ct) << "\n";
  return kExitOk;
}

struct BinaryArgs {
  std::vector<std::string> in;
  std::string evalkey;
  std::string out;
};

std::pair<mvhe::CiphertextFile, mvhe::CiphertextFile> LoadPair(const BinaryArgs& a) {
  mvhe::CiphertextFile x = LoadCiphertext(a.in[0]);
  mvhe::CiphertextFile y = LoadCiphertext(a.in[1]);
  if (x.params_hash != y.params_hash) {
    throw mvhe::FormatError("params_hash", "inputs belong to different parameter sets");
  }
  if (x.ct.c.context() != y.ct.c.context()) {
    throw mvhe::FormatError("q", "inputs use different moduli");
  }
  if (x.ct.c.size() != y.ct.c.size()) {
    throw mvhe::FormatError("c", "inputs have different lengths");
  }
  return {std::move(x), std::move(y)};
}

int RunAdd(const BinaryArgs& a) {
  auto [x, y] = LoadPair(a);
  mvhe::WriteTextFile(a.out, mvhe::SerializeCiphertext(mvhe::HomAdd(x.ct, y.ct),
                                                       x.params_hash));
  return kExitOk;
}

int RunMul(const BinaryArgs& a) {
  auto [x, y] = LoadPair(a);
  mvhe::EvalKeyFile ek = mvhe::ParseEvalKey(mvhe::ReadTextFile(a.evalkey));
  if (ek.params_hash != x.params_hash) {
    throw mvhe::FormatError("params_hash", "evaluation key belongs to another parameter set");
  }
  if (ek.key.context() != x.ct.c.context() || ek.key.n() != x.ct.c.size()) {
    throw mvhe::FormatError("n", "evaluation key does not fit the ciphertexts");
  }
  mvhe::WriteTextFile(a.out, mvhe::SerializeCiphertext(mvhe::HomMult(x.ct, y.ct, ek.key),
                                                       x.params_hash));
  return kExitOk;
}

struct BenchArgs {
  std::string key;
  std::size_t trials = 10000;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

int RunNoiseBench(const BenchArgs& a) {
  mvhe::SecretKey key = LoadKey(a.key);
  mvhe::RandomStream stream(ResolveSeed(a.seed));
  std::vector<mvhe::NoiseBenchRow> rows = mvhe::RunNoiseBench(key, a.trials, stream);
  if (a.json) {
    json out = json::object();
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"op", r.op},
                      {"trials", r.trials},
                      {"predicted_std", r.predicted_std},
                      {"measured_std", r.measured_std},
                      {"error_rate", r.error_rate}});
    }
    out["rows"] = std::move(list);
    out["decision_radius"] = mvhe::ComputeNoiseBudget(key).decision_radius;
    std::cout << out.dump() << "\n";
    return kExitOk;
  }
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows) {
    table.push_back({r.op, std::to_string(r.trials), Fixed(r.predicted_std, 4),
                     Fixed(r.measured_std, 4), Fixed(r.error_rate, 6)});
  }
  PrintTable({"op", "trials", "predicted_std", "measured_std", "error_rate"}, table);
  return kExitOk;
}

struct GameArgs {
  std::string game;
  std::string adversary = "random";
  std::string reduction;
  std::size_t trials = 1000;
  std::string params;
  std::size_t n = 8;
  std::size_t dim = 4;
  std::uint64_t q = 10007;
  std::string alpha;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

std::unique_ptr<mvhe::HsmAdversary> MakeHsmAdversary(const std::string& name) {
  if (name == "random") return std::make_unique<mvhe::RandomHsmAdversary>();
  if (name == "rank") return std::make_unique<mvhe::RankHsmAdversary>();
  return std::make_unique<mvhe::KnownSecretHsmAdversary>();
}

std::unique_ptr<mvhe::DlweAdversary> MakeDlweAdversary(const std::string& name) {
  if (name == "random") return std::make_unique<mvhe::RandomDlweAdversary>();
  if (name == "rank") return std::make_unique<mvhe::EliminationDlweAdversary>();
  return std::make_unique<mvhe::KnownSecretDlweAdversary>();
}

std::unique_ptr<mvhe::IndCpaAdversary> MakeIndCpaAdversary(const std::string& name) {
  if (name == "random") return std::make_unique<mvhe::RandomIndCpaAdversary>();
  if (name == "rank") return std::make_unique<mvhe::RankIndCpaAdversary>();
  return std::make_unique<mvhe::KeyLeakIndCpaAdversary>();
}

mvhe::SchemeParams GameSchemeParams(const GameArgs& a) {
  mvhe::SchemeParams params =
      a.params.empty() ? mvhe::ToyParams(mvhe::SchemeMode::kAdditiveOnly)
                       : mvhe::ParseParams(mvhe::ReadTextFile(a.params)).params;
  if (!a.alpha.empty()) params.alpha = mvhe::Decimal::Parse(a.alpha);
  mvhe::ValidateParams(params);
  return params;
}

double GameAlpha(const GameArgs& a) {
  return a.alpha.empty() ? 0.0 : mvhe::Decimal::Parse(a.alpha).value();
}

int RunGame(const GameArgs& a) {
  if (a.trials < 100) throw UsageError("--trials must be at least 100");
  mvhe::RandomStream stream(ResolveSeed(a.seed));
  mvhe::GameRunner runner;
  std::unique_ptr<mvhe::HsmAdversary> hsm;
  std::unique_ptr<mvhe::DlweAdversary> dlwe;
  std::unique_ptr<mvhe::IndCpaAdversary> indcpa;
  std::unique_ptr<mvhe::Lemma1Adapter> lemma1;
  std::unique_ptr<mvhe::Theorem1Adapter> theorem1;

  if (a.game == "hsm" && a.reduction.empty()) {
    const mvhe::FieldContext ctx(a.q);
    if (a.dim < 1 || a.dim >= a.n) throw UsageError("--dim must satisfy 1 <= dim < n");
    const double alpha = GameAlpha(a);
    const std::size_t n = a.n, dim = a.dim;
    hsm = MakeHsmAdversary(a.adversary);
    runner = [&, ctx, n, dim, alpha](mvhe::RandomStream& s) {
      return mvhe::PlayHsm(
          [&](mvhe::RandomStream& setup) {
            return mvhe::RandomSubspaceInstance(ctx, n, dim, alpha, n - dim, setup);
          },
          *hsm, s);
    };
  } else if (a.game == "hsm" && a.reduction == "theorem1") {
    const mvhe::SchemeParams params = GameSchemeParams(a);
    indcpa = MakeIndCpaAdversary(a.adversary);
    theorem1 = std::make_unique<mvhe::Theorem1Adapter>(*indcpa);
    runner = [&, params](mvhe::RandomStream& s) {
      return mvhe::PlayHsm(
          [&](mvhe::RandomStream& setup) {
            return mvhe::SchemeInducedInstance(
                std::make_shared<const mvhe::SecretKey>(mvhe::KeyGen(params, setup)));
          },
          *theorem1, s);
    };
  } else if (a.game == "dlwe") {
    const mvhe::DlweSetup setup{a.n, a.q, GameAlpha(a)};
    if (a.reduction == "lemma1") {
      hsm = MakeHsmAdversary(a.adversary);
      lemma1 = std::make_unique<mvhe::Lemma1Adapter>(*hsm);
      runner = [&, setup](mvhe::RandomStream& s) { return mvhe::PlayDlwe(setup, *lemma1, s); };
    } else if (a.reduction.empty()) {
      dlwe = MakeDlweAdversary(a.adversary);
      runner = [&, setup](mvhe::RandomStream& s) { return mvhe::PlayDlwe(setup, *dlwe, s); };
    } else {
      throw UsageError("--reduction " + a.reduction + " does not apply to the dlwe game");
    }
  } else if (a.game == "indcpa" && a.reduction.empty()) {
    const mvhe::SchemeParams params = GameSchemeParams(a);
    indcpa = MakeIndCpaAdversary(a.adversary);
    runner = [&, params](mvhe::RandomStream& s) { return mvhe::PlayIndCpa(params, *indcpa, s); };
  } else {
    throw UsageError("--reduction " + a.reduction + " does not apply to the " + a.game +
                     " game (lemma1 wraps dlwe, theorem1 wraps hsm)");
  }

  mvhe::AdvantageEstimate est = mvhe::EstimateAdvantage(runner, a.trials, stream);
  const std::string reduction = a.reduction.empty() ? "none" : a.reduction;
  if (a.json) {
    json out = {{"game", a.game},
                {"reduction", reduction},
                {"adversary", a.adversary},
                {"trials", est.trials},
                {"wins", est.wins},
                {"advantage", est.advantage},
                {"ci_halfwidth", est.ci_halfwidth},
                {"non_negligible", est.non_negligible()}};
    std::cout << out.dump() << "\n";
    return kExitOk;
  }
  PrintTable({"game", "reduction", "adversary", "trials", "wins", "advantage",
              "ci_halfwidth", "non_negligible"},
             {{a.game, reduction, a.adversary, std::to_string(est.trials),
               std::to_string(est.wins), Fixed(est.advantage), Fixed(est.ci_halfwidth),
               est.non_negligible() ? "yes" : "no"}});
  return kExitOk;
}

struct CheckArgs {
  std::string params;
  bool json = false;
};

int RunCheckParams(const CheckArgs& a) {
  mvhe::ParamFile file = mvhe::ParseParams(mvhe::ReadTextFile(a.params));
  mvhe::ParamReport report = mvhe::CheckParams(file.params);
  const mvhe::SchemeDims& d = report.dims;
  const double lower = report.sigma_p_lower;
  std::vector<std::pair<std::string, std::string>> fields = {
      {"mode", mvhe::ModeName(file.params.mode)},
      {"N", std::to_string(d.monomials_r)},
      {"N_2r", std::to_string(d.monomials_2r)},
      {"d_r", std::to_string(d.dim_r)},
      {"d_2r", std::to_string(d.dim_2r)},
      {"n", std::to_string(file.params.n)},
      {"s2_len", std::to_string(d.tail_len)},
      {"noise_support", std::to_string(d.noise_support)},
      {"sigma_p_min", std::to_string(static_cast<std::uint64_t>(lower) + 1)},
      {"sigma_p_max", std::to_string(report.sigma_p_upper)},
      {"ok", report.ok() ? "yes" : "no"},
  };
  if (a.json) {
    json out = json::object();
    for (const auto& [k, v] : fields) out[k] = v;
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"field", v.field}, {"message", v.message}});
    }
    out["violations"] = std::move(violations);
    std::cout << out.dump() << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : fields) rows.push_back({k, v});
    PrintTable({"field", "value"}, rows);
  }
  for (const auto& v : report.violations) {
    std::cerr << "violation: " << v.field << ": " << v.message << "\n";
  }
  return report.ok() ? kExitOk : kExitValidation;
}

int Dispatch(const std::function<int()>& command) {
  try {
    return command();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mvhe::KeygenError& e) {
    std::cerr << "keygen failed: " << e.what() << "\n";
    return kExitKeygen;
  } catch (const mvhe::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mvhe::Error& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mvhe: symmetric somewhat-homomorphic encryption from polynomial evaluation"};
  app.require_subcommand(1);
  std::function<int()> command;

  KeygenArgs keygen;
  auto* kg = app.add_subcommand("keygen", "Generate a secret key (and evaluation key in mult mode)");
  kg->add_option("--params", keygen.params, "Parameter file")->required();
  kg->add_option("--seed", keygen.seed, "RNG seed (defaults to the params seed, then OS entropy)");
  kg->add_option("--out", keygen.out, "Key file to write")->required();
  kg->add_option("--evalkey-out", keygen.evalkey_out, "Evaluation key file (default <out>.evalkey)");
  kg->callback([&] { command = [&] { return RunKeygen(keygen); }; });

  EncryptArgs enc;
  auto* en = app.add_subcommand("encrypt", "Encrypt one bit");
  en->add_option("--key", enc.key, "Key file")->required();
  en->add_option("--bit", enc.bit, "Plaintext bit")->required()->check(CLI::IsMember({0, 1}));
  en->add_option("--seed", enc.seed, "RNG seed");
  en->add_option("--out", enc.out, "Ciphertext file to write")->required();
  en->callback([&] { command = [&] { return RunEncrypt(enc); }; });

  DecryptArgs dec;
  auto* de = app.add_subcommand("decrypt", "Decrypt a ciphertext and print the bit");
  de->add_option("--key", dec.key, "Key file")->required();
  de->add_option("--in", dec.in, "Ciphertext file")->required();
  de->callback([&] { command = [&] { return RunDecrypt(dec); }; });

  BinaryArgs add;
  auto* ad = app.add_subcommand("add", "Homomorphic addition");
  ad->add_option("--in", add.in, "Input ciphertext (twice)")->required()->expected(2);
  ad->add_option("--out", add.out, "Output ciphertext")->required();
  ad->callback([&] { command = [&] { return RunAdd(add); }; });

  BinaryArgs mul;
  auto* mu = app.add_subcommand("mul", "Homomorphic multiplication (depth 1)");
  mu->add_option("--in", mul.in, "Input ciphertext (twice)")->required()->expected(2);
  mu->add_option("--evalkey", mul.evalkey, "Evaluation key file")->required();
  mu->add_option("--out", mul.out, "Output ciphertext")->required();
  mu->callback([&] { command = [&] { return RunMul(mul); }; });

  BenchArgs bench;
  auto* nb = app.add_subcommand("noise-bench", "Predicted vs. measured noise");
  nb->add_option("--key", bench.key, "Key file")->required();
  nb->add_option("--trials", bench.trials, "Trials per operation")->check(CLI::PositiveNumber);
  nb->add_option("--seed", bench.seed, "RNG seed");
  nb->add_flag("--json", bench.json, "Emit one JSON object");
  nb->callback([&] { command = [&] { return RunNoiseBench(bench); }; });

  GameArgs game;
  auto* gm = app.add_subcommand("game", "Estimate an adversary's advantage");
  gm->add_option("game", game.game, "hsm, dlwe or indcpa")
      ->required()
      ->check(CLI::IsMember({"hsm", "dlwe", "indcpa"}));
  gm->add_option("--adversary", game.adversary, "random, rank or oracle")
      ->check(CLI::IsMember({"random", "rank", "oracle"}));
  gm->add_option("--trials", game.trials, "Number of games");
  gm->add_option("--reduction", game.reduction, "lemma1 (dlwe) or theorem1 (hsm)")
      ->check(CLI::IsMember({"lemma1", "theorem1"}));
  gm->add_option("--params", game.params, "Parameter file (indcpa, theorem1)");
  gm->add_option("--n", game.n, "Ambient dimension (hsm) or secret length (dlwe)");
  gm->add_option("--dim", game.dim, "Hidden subspace dimension (hsm)");
  gm->add_option("--q", game.q, "Prime modulus (hsm, dlwe)");
  gm->add_option("--alpha", game.alpha, "Noise parameter as a decimal string");
  gm->add_option("--seed", game.seed, "RNG seed");
  gm->add_flag("--json", game.json, "Emit one JSON object");
  gm->callback([&] { command = [&] { return RunGame(game); }; });

  CheckArgs check;
  auto* cp = app.add_subcommand("check-params", "Validate a parameter file");
  cp->add_option("--params", check.params, "Parameter file")->required();
  cp->add_flag("--json", check.json, "Emit one JSON object");
  cp->callback([&] { command = [&] { return RunCheckParams(check); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }
  return Dispatch(command);
}
