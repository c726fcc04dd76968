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

#ifndef MVHE_GAMES_H_
#define MVHE_GAMES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mvhe/field.h"
#include "mvhe/matrix.h"
#include "mvhe/random.h"
#include "mvhe/scheme.h"

namespace mvhe {

inline constexpr std::size_t kDefaultSampleCap = 4096;

// Side channel handed to validation adversaries only. A game never reads it;
// baseline "known-secret" distinguishers use it to check that the oracles
// behave as described.
struct OutOfBand {
  // A nonzero vector orthogonal to the hidden subspace.
  std::optional<FieldVector> trapdoor;
  // Known-secret adversaries answer 1 iff |balanced(<trapdoor, v>)| < threshold.
  std::int64_t threshold = 1;
  std::shared_ptr<const SecretKey> key;
};

// A hidden subspace S of F_q^n together with the noise added to its members.
class SubspaceInstance {
 public:
  // Throws ArgumentError unless the basis rows are independent and
  // 1 <= dim < n, or the noise support exceeds n.
  SubspaceInstance(MatrixFq basis, NoiseSpec noise);

  std::size_t n() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const FieldContext& context() const { return basis_.context(); }
  const MatrixFq& basis() const { return basis_; }
  const NoiseSpec& noise() const { return noise_; }

  // Public: the message scale of a scheme-induced instance.
  std::optional<std::uint64_t> plaintext_scale;
  OutOfBand out_of_band;

 private:
  MatrixFq basis_;
  NoiseSpec noise_;
};

using InstanceSampler = std::function<SubspaceInstance(RandomStream&)>;

// Uniformly random dim-dimensional subspace of F_q^n; noise on the last
// `noise_support` coordinates.
SubspaceInstance RandomSubspaceInstance(const FieldContext& ctx, std::size_t n,
                                        std::size_t dim, double alpha,
                                        std::size_t noise_support,
                                        RandomStream& stream);

// The subspace (s, 1)^perp of F_q^{n+1} with noise on the last coordinate
// only: the HSM view of a DLWE secret s.
SubspaceInstance SecretLineInstance(const FieldVector& s, double alpha);

// V_{I<=r} evaluated at the key's points, with the key's encryption noise.
// The plaintext scale p is public; the key travels out of band.
SubspaceInstance SchemeInducedInstance(std::shared_ptr<const SecretKey> key);

// Threshold used by known-secret distinguishers: max(1, ceil(4 * std)).
std::int64_t NoiseThreshold(double std_dev);

// Per-game record. Sample outputs are kept so that replays can be compared.
struct GameTranscript {
  int beta = 0;
  int guess = 0;
  bool won = false;
  std::vector<FieldVector> samples;
  std::optional<FieldVector> challenge;
  // The subspace (or exact LWE) part of the challenge when beta = 1.
  std::optional<FieldVector> challenge_member;

  friend bool operator==(const GameTranscript&, const GameTranscript&) =
      default;
};

struct GameOptions {
  std::optional<int> forced_beta;
  std::size_t sample_cap = kDefaultSampleCap;
  GameTranscript* transcript = nullptr;
};

// ---------------------------------------------------------------- HSM ----

struct HsmPublicInfo {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t sample_cap = kDefaultSampleCap;
  std::optional<std::uint64_t> plaintext_scale;
};

class HsmOracle {
 public:
  virtual ~HsmOracle() = default;
  virtual const HsmPublicInfo& info() const = 0;
  // v + e with v uniform in S. Throws ProtocolViolationError past the cap.
  virtual FieldVector Sample() = 0;
  // Uniform (beta = 0) or v + e (beta = 1). Second call throws
  // ProtocolViolationError.
  virtual FieldVector Challenge() = 0;
  virtual const OutOfBand& out_of_band() const = 0;
};

class HsmAdversary {
 public:
  virtual ~HsmAdversary() = default;
  // Returns the guess beta'.
  virtual int Run(HsmOracle& oracle, RandomStream& coins) = 0;
};

bool PlayHsm(const InstanceSampler& sampler, HsmAdversary& adversary,
             RandomStream& stream, const GameOptions& options = {});
bool PlayHsm(const SubspaceInstance& instance, HsmAdversary& adversary,
             RandomStream& stream, const GameOptions& options = {});

// --------------------------------------------------------------- DLWE ----

struct DlwePair {
  FieldVector a;
  std::uint64_t b;
};

struct DlweSetup {
  std::size_t n = 0;
  std::uint64_t q = 0;
  double alpha = 0.0;
};

struct DlwePublicInfo {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t sample_cap = kDefaultSampleCap;
};

class DlweOracle {
 public:
  virtual ~DlweOracle() = default;
  virtual const DlwePublicInfo& info() const = 0;
  virtual DlwePair Sample() = 0;
  virtual DlwePair Challenge() = 0;
  virtual const OutOfBand& out_of_band() const = 0;
};

class DlweAdversary {
 public:
  virtual ~DlweAdversary() = default;
  virtual int Run(DlweOracle& oracle, RandomStream& coins) = 0;
};

// The secret s is drawn uniformly per game. Transcript vectors are (a, b).
bool PlayDlwe(const DlweSetup& setup, DlweAdversary& adversary,
              RandomStream& stream, const GameOptions& options = {});

// ------------------------------------------------------------ IND-CPA ----

struct IndCpaPublicInfo {
  std::size_t n = 0;
  std::uint64_t q = 0;
  std::size_t query_cap = kDefaultSampleCap;
};

class IndCpaOracle {
 public:
  virtual ~IndCpaOracle() = default;
  virtual const IndCpaPublicInfo& info() const = 0;
  virtual FieldVector EncryptZero() = 0;
  // Encrypts m_beta. Messages must be bits with at least one of them 0;
  // callable once.
  virtual FieldVector LeftRight(int m0, int m1) = 0;
  virtual const OutOfBand& out_of_band() const = 0;
};

class IndCpaAdversary {
 public:
  virtual ~IndCpaAdversary() = default;
  virtual int Run(IndCpaOracle& oracle, RandomStream& coins) = 0;
};

// Runs KeyGen on the game stream, then the left-right game.
bool PlayIndCpa(const SchemeParams& params, IndCpaAdversary& adversary,
                RandomStream& stream, const GameOptions& options = {});

// ------------------------------------------------------- adversaries ----

class RandomHsmAdversary : public HsmAdversary {
 public:
  int Run(HsmOracle& oracle, RandomStream& coins) override;
};

// Queries n samples, row-reduces them, answers 1 iff the challenge is in
// their span.
class RankHsmAdversary : public HsmAdversary {
 public:
  int Run(HsmOracle& oracle, RandomStream& coins) override;
};

class KnownSecretHsmAdversary : public HsmAdversary {
 public:
  int Run(HsmOracle& oracle, RandomStream& coins) override;
};

class RandomDlweAdversary : public DlweAdversary {
 public:
  int Run(DlweOracle& oracle, RandomStream& coins) override;
};

// Solves for s from samples, answers 1 iff b - <a, s> = 0 on the challenge.
class EliminationDlweAdversary : public DlweAdversary {
 public:
  int Run(DlweOracle& oracle, RandomStream& coins) override;
};

class KnownSecretDlweAdversary : public DlweAdversary {
 public:
  int Run(DlweOracle& oracle, RandomStream& coins) override;
};

class RandomIndCpaAdversary : public IndCpaAdversary {
 public:
  int Run(IndCpaOracle& oracle, RandomStream& coins) override;
};

// Spans n encryptions of zero, submits (0, 1), answers 0 iff the challenge
// is in the span.
class RankIndCpaAdversary : public IndCpaAdversary {
 public:
  int Run(IndCpaOracle& oracle, RandomStream& coins) override;
};

// Decrypts the challenge with the leaked key.
class KeyLeakIndCpaAdversary : public IndCpaAdversary {
 public:
  int Run(IndCpaOracle& oracle, RandomStream& coins) override;
};

// ----------------------------------------------------------- adapters ----

// Turns an HSM adversary into a DLWE adversary by presenting every DLWE pair
// (a, b) as the vector (a, -b) of F_q^{n+1}.
class Lemma1Adapter : public DlweAdversary {
 public:
  using Observer =
      std::function<void(const DlwePair& dlwe, const FieldVector& forwarded)>;

  explicit Lemma1Adapter(HsmAdversary& inner, Observer observer = nullptr)
      : inner_(inner), observer_(std::move(observer)) {}

  int Run(DlweOracle& oracle, RandomStream& coins) override;

 private:
  HsmAdversary& inner_;
  Observer observer_;
};

struct Theorem1Event {
  bool left_right = false;
  int message = 0;  // m_gamma for left-right replies
  FieldVector hsm_output;
  FieldVector reply;
};

// Turns an IND-CPA adversary into an HSM adversary. Encryptions of zero are
// HSM samples; the left-right reply is Challenge() + p m_gamma 1 for a coin
// gamma. Outputs 1 iff the wrapped adversary guesses gamma. Needs the
// instance's public plaintext scale.
class Theorem1Adapter : public HsmAdversary {
 public:
  using Observer = std::function<void(const Theorem1Event&)>;

  explicit Theorem1Adapter(IndCpaAdversary& inner, Observer observer = nullptr)
      : inner_(inner), observer_(std::move(observer)) {}

  int Run(HsmOracle& oracle, RandomStream& coins) override;

 private:
  IndCpaAdversary& inner_;
  Observer observer_;
};

// --------------------------------------------------------- estimation ----

struct AdvantageEstimate {
  std::size_t trials = 0;
  std::size_t wins = 0;
  double advantage = 0.0;
  double ci_halfwidth = 0.0;

  double win_rate() const {
    return static_cast<double>(wins) / static_cast<double>(trials);
  }
  // advantage > 3 * ci_halfwidth
  bool non_negligible() const { return advantage > 3.0 * ci_halfwidth; }
};

// 1.96 * sqrt(0.25 / trials).
double CiHalfwidth(std::size_t trials);
double JointHalfwidth(const AdvantageEstimate& a, const AdvantageEstimate& b);

using GameRunner = std::function<bool(RandomStream&)>;

// Game i runs on stream.Derive(i). Throws ArgumentError for trials < 100.
AdvantageEstimate EstimateAdvantage(const GameRunner& play, std::size_t trials,
                                    const RandomStream& stream);

}  // namespace mvhe

#endif  // MVHE_GAMES_H_
