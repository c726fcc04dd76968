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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mvhe/io.h"
#include "mvhe/polynomial.h"
#include "mvhe/scheme.h"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mvhe_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string Params(const std::string& name) {
    return std::string(MVHE_PARAMS_DIR) + "/" + name;
  }

  RunResult Run(const std::string& args) const {
    const std::string out = Path("stdout.txt"), err = Path("stderr.txt");
    const std::string cmd =
        std::string(MVHE_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = mvhe::ReadTextFile(out);
    r.err = mvhe::ReadTextFile(err);
    return r;
  }

  std::string Write(const std::string& name, const std::string& contents) const {
    mvhe::WriteTextFile(Path(name), contents);
    return Path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, CheckParamsReportsToyDimensions) {
  RunResult r = Run("check-params --params " + Params("toy_additive.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("N\t6\n"), std::string::npos);
  EXPECT_NE(r.out.find("d_r\t2\n"), std::string::npos);
  EXPECT_NE(r.out.find("n\t5\n"), std::string::npos);
  EXPECT_NE(r.out.find("ok\tyes\n"), std::string::npos);

  r = Run("check-params --params " + Params("toy_mult.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("d_2r\t11\n"), std::string::npos);
  EXPECT_NE(r.out.find("n\t15\n"), std::string::npos);
}

TEST_F(CliTest, EncryptDecryptAdd) {
  ASSERT_EQ(Run("keygen --params " + Params("toy_additive.json") + " --out " + Path("k.json"))
                .exit_code,
            0);
  EXPECT_FALSE(fs::exists(Path("k.json.evalkey")));
  ASSERT_EQ(Run("encrypt --key " + Path("k.json") + " --bit 1 --seed 1 --out " + Path("c1.json"))
                .exit_code,
            0);
  ASSERT_EQ(Run("encrypt --key " + Path("k.json") + " --bit 1 --seed 2 --out " + Path("c2.json"))
                .exit_code,
            0);
  RunResult d = Run("decrypt --key " + Path("k.json") + " --in " + Path("c1.json"));
  ASSERT_EQ(d.exit_code, 0) << d.err;
  EXPECT_EQ(d.out, "1\n");
  ASSERT_EQ(Run("add --in " + Path("c1.json") + " --in " + Path("c2.json") + " --out " +
                Path("sum.json"))
                .exit_code,
            0);
  d = Run("decrypt --key " + Path("k.json") + " --in " + Path("sum.json"));
  EXPECT_EQ(d.out, "0\n");
}

TEST_F(CliTest, NoiselessMultiplication) {
  const std::string params = Write(
      "p.json", mvhe::SerializeParams(mvhe::ToyParams(mvhe::SchemeMode::kMultDepth1, "0"), 5));
  ASSERT_EQ(Run("keygen --params " + params + " --out " + Path("k.json")).exit_code, 0);
  ASSERT_TRUE(fs::exists(Path("k.json.evalkey")));
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      Run("encrypt --key " + Path("k.json") + " --bit " + std::to_string(m1) + " --out " +
          Path("a.json"));
      Run("encrypt --key " + Path("k.json") + " --bit " + std::to_string(m2) + " --out " +
          Path("b.json"));
      RunResult m = Run("mul --in " + Path("a.json") + " --in " + Path("b.json") +
                        " --evalkey " + Path("k.json.evalkey") + " --out " + Path("ab.json"));
      ASSERT_EQ(m.exit_code, 0) << m.err;
      EXPECT_EQ(Run("decrypt --key " + Path("k.json") + " --in " + Path("ab.json")).out,
                std::to_string(m1 * m2) + "\n");
    }
  }
  RunResult again = Run("mul --in " + Path("ab.json") + " --in " + Path("a.json") +
                        " --evalkey " + Path("k.json.evalkey") + " --out " + Path("x.json"));
  EXPECT_EQ(again.exit_code, 3);
}

TEST_F(CliTest, SameSeedSameBytes) {
  const std::string params = Params("toy_mult.json");
  Run("keygen --params " + params + " --seed 9 --out " + Path("k1.json"));
  Run("keygen --params " + params + " --seed 9 --out " + Path("k2.json"));
  EXPECT_EQ(mvhe::ReadTextFile(Path("k1.json")), mvhe::ReadTextFile(Path("k2.json")));
  EXPECT_EQ(mvhe::ReadTextFile(Path("k1.json.evalkey")),
            mvhe::ReadTextFile(Path("k2.json.evalkey")));
  Run("encrypt --key " + Path("k1.json") + " --bit 1 --seed 3 --out " + Path("c1.json"));
  Run("encrypt --key " + Path("k1.json") + " --bit 1 --seed 3 --out " + Path("c2.json"));
  EXPECT_EQ(mvhe::ReadTextFile(Path("c1.json")), mvhe::ReadTextFile(Path("c2.json")));
}

TEST_F(CliTest, UnseededRunsLogTheirSeed) {
  Run("keygen --params " + Params("toy_additive.json") + " --out " + Path("k.json"));
  RunResult r = Run("encrypt --key " + Path("k.json") + " --bit 0 --out " + Path("c.json"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.err.rfind("seed\t", 0), 0u) << r.err;
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  Run("keygen --params " + Params("toy_additive.json") + " --out " + Path("k.json"));
  EXPECT_EQ(Run("encrypt --key " + Path("k.json") + " --bit 2 --out " + Path("c.json")).exit_code,
            2);
  EXPECT_EQ(Run("").exit_code, 2);
  EXPECT_EQ(Run("frobnicate").exit_code, 2);
  EXPECT_EQ(Run("game hsm --trials 50").exit_code, 2);
  EXPECT_EQ(Run("game hsm --reduction lemma1 --trials 100").exit_code, 2);
}

TEST_F(CliTest, CorruptKeyExitsThreeNamingTheField) {
  Run("keygen --params " + Params("toy_additive.json") + " --out " + Path("k.json"));
  json key = json::parse(mvhe::ReadTextFile(Path("k.json")));
  key["s"][0] = (key["s"][0].get<std::uint64_t>() + 1) % 10007;
  Write("bad.json", key.dump(2));
  RunResult r = Run("encrypt --key " + Path("bad.json") + " --bit 1 --out " + Path("c.json"));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("s: "), std::string::npos) << r.err;

  Run("encrypt --key " + Path("k.json") + " --bit 1 --out " + Path("c.json"));
  json ct = json::parse(mvhe::ReadTextFile(Path("c.json")));
  ct["c"][1] = 99999;
  Write("badc.json", ct.dump(2));
  r = Run("decrypt --key " + Path("k.json") + " --in " + Path("badc.json"));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("c[1]"), std::string::npos) << r.err;
}

TEST_F(CliTest, MismatchedArtifactsExitThree) {
  Run("keygen --params " + Params("toy_additive.json") + " --out " + Path("a.json"));
  Run("keygen --params " + Params("toy_mult.json") + " --out " + Path("m.json"));
  Run("encrypt --key " + Path("m.json") + " --bit 1 --out " + Path("c.json"));
  RunResult r = Run("decrypt --key " + Path("a.json") + " --in " + Path("c.json"));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("params_hash"), std::string::npos) << r.err;
}

TEST_F(CliTest, InfeasibleKeygenExitsFour) {
  mvhe::FieldContext ctx(10007);
  mvhe::SchemeParams params = mvhe::ToyParams(mvhe::SchemeMode::kAdditiveOnly);
  params.ideal = mvhe::IdealSpec({mvhe::Polynomial::Monomial(
      mvhe::MonomialIndex::Create(2, 0), ctx, {0, 0})});
  const std::string path = Write("unit.json", mvhe::SerializeParams(params, 1));
  RunResult r = Run("keygen --params " + path + " --out " + Path("k.json"));
  EXPECT_EQ(r.exit_code, 4) << r.err;
  EXPECT_EQ(Run("check-params --params " + path).exit_code, 3);
}

TEST_F(CliTest, NoiseBenchJson) {
  Run("keygen --params " + Params("toy_additive.json") + " --out " + Path("k.json"));
  RunResult r = Run("noise-bench --key " + Path("k.json") + " --trials 2000 --seed 1 --json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  json out = json::parse(r.out);
  ASSERT_EQ(out["rows"].size(), 2u);
  EXPECT_EQ(out["rows"][0]["op"], "fresh");
  EXPECT_LE(out["rows"][0]["error_rate"].get<double>(), 0.01);
}

TEST_F(CliTest, GamesReportAdvantages) {
  RunResult r = Run("game hsm --adversary rank --alpha 0 --trials 200 --seed 1 --json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_GE(json::parse(r.out)["advantage"].get<double>(), 0.49);

  r = Run("game dlwe --reduction lemma1 --adversary rank --alpha 0 --trials 200 --seed 2 --json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_GE(json::parse(r.out)["advantage"].get<double>(), 0.49);

  r = Run("game indcpa --adversary random --trials 400 --seed 3 --json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out)["non_negligible"].get<bool>());
}

}  // namespace
